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

#ifndef REGALLOC_GEO_H_
#define REGALLOC_GEO_H_

#include "regalloc/types.h"

namespace regalloc {

inline constexpr double kEarthRadiusMeters = 6371008.8;

// Great-circle distance on the WGS84 mean sphere.
double haversine_meters(const GeoPoint& a, const GeoPoint& b);

// Point at the given east/north offset in meters (small-offset approximation).
GeoPoint offset_meters(const GeoPoint& origin, double east, double north);

}  // namespace regalloc

#endif  // REGALLOC_GEO_H_
