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

// Data-parallel inner loops of the influence and descent hot paths.
//
// Every kernel has a scalar reference implementation. AVX2 (x86-64) and NEON
// (AArch64) variants are compiled when the target supports them and chosen
// at runtime from the host CPU. Vector variants reassociate sums, so results
// agree with the scalar reference to rounding, not bit for bit.

#ifndef REGALLOC_KERNELS_H_
#define REGALLOC_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace regalloc::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  Backend backend;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i a[i]
  double (*sum)(const double* a, std::size_t n);
  // sum_k miss[idx[k]] * p[k] * (1 + rho * theta[idx[k]])
  double (*exposure_gain)(const std::int32_t* idx, const double* p, std::size_t n,
                          const double* miss, const double* theta, double rho);
  // x[i] = clamp(x[i] - eta * g[i], 0, 1)
  void (*descent_step)(double* x, const double* g, std::size_t n, double eta);
  // x[i] = clamp(x[i], 0, 1)
  void (*clamp_unit)(double* x, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double* y, const double* x, std::size_t n, double a);
};

bool available(Backend backend);
const KernelTable& table(Backend backend);

// Best backend the host supports, unless overridden with select().
const KernelTable& active();
void select(Backend backend);
void reset_selection();

std::string_view name(Backend backend);

namespace detail {
const KernelTable& scalar_table();
#if defined(REGALLOC_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(REGALLOC_HAVE_NEON)
const KernelTable& neon_table();
#endif
}  // namespace detail

}  // namespace regalloc::kernels

#endif  // REGALLOC_KERNELS_H_
