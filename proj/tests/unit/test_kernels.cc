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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "regalloc/kernels.h"

using namespace regalloc::kernels;

namespace {

std::vector<Backend> simd_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::kAvx2, Backend::kNeon}) {
    if (available(b)) out.push_back(b);
  }
  return out;
}

bool close(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(available(Backend::kScalar));
  CHECK(table(Backend::kScalar).backend == Backend::kScalar);
  select(Backend::kScalar);
  CHECK(active().backend == Backend::kScalar);
  reset_selection();
  CHECK(available(active().backend));
}

TEST_CASE("SIMD kernels match the scalar reference") {
  const auto& ref = table(Backend::kScalar);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0), p(0.0, 1.0);
  for (Backend b : simd_backends()) {
    const auto& k = table(b);
    INFO("backend " << name(b));
    for (std::size_t n : {0, 1, 3, 4, 5, 7, 8, 13, 16, 31, 64, 100, 257}) {
      std::vector<double> x(n), y(n), g(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = u(rng);
        y[i] = u(rng);
        g[i] = u(rng);
      }
      CHECK(close(k.dot(x.data(), y.data(), n), ref.dot(x.data(), y.data(), n)));
      CHECK(close(k.sum(x.data(), n), ref.sum(x.data(), n)));

      const std::size_t users = 50;
      std::vector<double> miss(users), theta(users);
      for (std::size_t i = 0; i < users; ++i) {
        miss[i] = p(rng);
        theta[i] = 3.0 * p(rng);
      }
      std::vector<std::int32_t> idx(n);
      std::vector<double> prob(n);
      for (std::size_t i = 0; i < n; ++i) {
        idx[i] = static_cast<std::int32_t>(rng() % users);
        prob[i] = p(rng);
      }
      CHECK(close(k.exposure_gain(idx.data(), prob.data(), n, miss.data(), theta.data(), 0.5),
                  ref.exposure_gain(idx.data(), prob.data(), n, miss.data(), theta.data(), 0.5)));

      auto x1 = x, x2 = x;
      k.descent_step(x1.data(), g.data(), n, 0.3);
      ref.descent_step(x2.data(), g.data(), n, 0.3);
      CHECK(x1 == x2);
      x1 = x;
      x2 = x;
      k.clamp_unit(x1.data(), n);
      ref.clamp_unit(x2.data(), n);
      CHECK(x1 == x2);
      auto y1 = y, y2 = y;
      k.axpy(y1.data(), x.data(), n, -0.7);
      ref.axpy(y2.data(), x.data(), n, -0.7);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i]));
    }
  }
}

TEST_CASE("clamp keeps values in the unit box") {
  std::vector<double> x{-1.0, 0.0, 0.25, 1.0, 7.0};
  table(Backend::kScalar).clamp_unit(x.data(), x.size());
  CHECK(x == std::vector<double>{0.0, 0.0, 0.25, 1.0, 1.0});
}
