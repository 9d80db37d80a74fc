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

#include "regalloc/kernels.h"

#include <atomic>
#include <stdexcept>

namespace regalloc::kernels {
namespace {

bool host_has_avx2() {
#if defined(REGALLOC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& best() {
  static const KernelTable& chosen = []() -> const KernelTable& {
#if defined(REGALLOC_HAVE_AVX2)
    if (host_has_avx2()) return detail::avx2_table();
#endif
#if defined(REGALLOC_HAVE_NEON)
    return detail::neon_table();
#endif
    return detail::scalar_table();
  }();
  return chosen;
}

std::atomic<const KernelTable*> g_override{nullptr};

}  // namespace

bool available(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
      return host_has_avx2();
    case Backend::kNeon:
#if defined(REGALLOC_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Backend backend) {
  if (!available(backend)) {
    throw std::invalid_argument("kernel backend not available on this host");
  }
  switch (backend) {
#if defined(REGALLOC_HAVE_AVX2)
    case Backend::kAvx2:
      return detail::avx2_table();
#endif
#if defined(REGALLOC_HAVE_NEON)
    case Backend::kNeon:
      return detail::neon_table();
#endif
    default:
      return detail::scalar_table();
  }
}

const KernelTable& active() {
  const KernelTable* o = g_override.load(std::memory_order_acquire);
  return o ? *o : best();
}

void select(Backend backend) { g_override.store(&table(backend), std::memory_order_release); }

void reset_selection() { g_override.store(nullptr, std::memory_order_release); }

std::string_view name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

}  // namespace regalloc::kernels
