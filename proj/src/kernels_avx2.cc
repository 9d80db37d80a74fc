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

#include <immintrin.h>

#include <algorithm>

#include "regalloc/kernels.h"

namespace regalloc::kernels::detail {
namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i];
  return s;
}

double exposure_gain(const std::int32_t* idx, const double* p, std::size_t n,
                     const double* miss, const double* theta, double rho) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d r = _mm256_set1_pd(rho);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    const __m256d m = _mm256_i32gather_pd(miss, vi, 8);
    const __m256d th = _mm256_i32gather_pd(theta, vi, 8);
    const __m256d w = _mm256_fmadd_pd(r, th, one);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(m, _mm256_loadu_pd(p + k)), w, acc);
  }
  double s = hsum(acc);
  for (; k < n; ++k) {
    const auto u = idx[k];
    s += miss[u] * p[k] * (1.0 + rho * theta[u]);
  }
  return s;
}

void descent_step(double* x, const double* g, std::size_t n, double eta) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d e = _mm256_set1_pd(eta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // Separate multiply and subtract keep the result bitwise equal to the scalar path.
    __m256d v = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_mul_pd(e, _mm256_loadu_pd(g + i)));
    v = _mm256_min_pd(_mm256_max_pd(v, zero), one);
    _mm256_storeu_pd(x + i, v);
  }
  for (; i < n; ++i) x[i] = std::clamp(x[i] - eta * g[i], 0.0, 1.0);
}

void clamp_unit(double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(x + i, _mm256_min_pd(_mm256_max_pd(v, zero), one));
  }
  for (; i < n; ++i) x[i] = std::clamp(x[i], 0.0, 1.0);
}

void axpy(double* y, const double* x, std::size_t n, double a) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i,
                     _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{Backend::kAvx2, dot, sum, exposure_gain,
                             descent_step, clamp_unit, axpy};
  return t;
}

}  // namespace regalloc::kernels::detail
