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

#include <algorithm>

#include "regalloc/kernels.h"

namespace regalloc::kernels::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i];
  return s;
}

double exposure_gain(const std::int32_t* idx, const double* p, std::size_t n,
                     const double* miss, const double* theta, double rho) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto u = idx[k];
    s += miss[u] * p[k] * (1.0 + rho * theta[u]);
  }
  return s;
}

void descent_step(double* x, const double* g, std::size_t n, double eta) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i] - eta * g[i], 0.0, 1.0);
}

void clamp_unit(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], 0.0, 1.0);
}

void axpy(double* y, const double* x, std::size_t n, double a) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{Backend::kScalar, dot, sum, exposure_gain,
                             descent_step, clamp_unit, axpy};
  return t;
}

}  // namespace regalloc::kernels::detail
