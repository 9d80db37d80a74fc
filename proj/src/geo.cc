// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "regalloc/geo.h"

#include <cmath>
#include <numbers>

namespace regalloc {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

double haversine_meters(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusMeters * std::asin(std::min(1.0, std::sqrt(h)));
}

GeoPoint offset_meters(const GeoPoint& origin, double east, double north) {
  const double dlat = north / kEarthRadiusMeters / kDegToRad;
  const double dlon =
      east / (kEarthRadiusMeters * std::cos(origin.lat * kDegToRad)) / kDegToRad;
  return {origin.lat + dlat, origin.lon + dlon};
}

}  // namespace regalloc
