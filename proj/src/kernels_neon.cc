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

#include <arm_neon.h>

#include <algorithm>

#include "regalloc/kernels.h"

namespace regalloc::kernels::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i];
  return s;
}

// NEON has no gather; pairs are loaded lane by lane.
double exposure_gain(const std::int32_t* idx, const double* p, std::size_t n,
                     const double* miss, const double* theta, double rho) {
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t r = vdupq_n_f64(rho);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const double m[2] = {miss[idx[k]], miss[idx[k + 1]]};
    const double th[2] = {theta[idx[k]], theta[idx[k + 1]]};
    const float64x2_t w = vfmaq_f64(one, r, vld1q_f64(th));
    acc = vfmaq_f64(acc, vmulq_f64(vld1q_f64(m), vld1q_f64(p + k)), w);
  }
  double s = vaddvq_f64(acc);
  for (; k < n; ++k) {
    const auto u = idx[k];
    s += miss[u] * p[k] * (1.0 + rho * theta[u]);
  }
  return s;
}

void descent_step(double* x, const double* g, std::size_t n, double eta) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t e = vdupq_n_f64(eta);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vsubq_f64(vld1q_f64(x + i), vmulq_f64(e, vld1q_f64(g + i)));
    vst1q_f64(x + i, vminq_f64(vmaxq_f64(v, zero), one));
  }
  for (; i < n; ++i) x[i] = std::clamp(x[i] - eta * g[i], 0.0, 1.0);
}

void clamp_unit(double* x, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(x + i, vminq_f64(vmaxq_f64(vld1q_f64(x + i), zero), one));
  }
  for (; i < n; ++i) x[i] = std::clamp(x[i], 0.0, 1.0);
}

void axpy(double* y, const double* x, std::size_t n, double a) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable t{Backend::kNeon, dot, sum, exposure_gain,
                             descent_step, clamp_unit, axpy};
  return t;
}

}  // namespace regalloc::kernels::detail
