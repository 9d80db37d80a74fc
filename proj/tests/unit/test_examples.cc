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

#include "doctest.h"
#include "examples.h"

using regalloc::testing::CheckLog;
using regalloc::testing::example_catalog;

TEST_CASE("worked examples") {
  for (const auto& e : example_catalog()) {
    SUBCASE((e.module + ": " + e.name).c_str()) {
      CheckLog log;
      e.run(log);
      for (const auto& f : log.failures) FAIL_CHECK(f);
    }
  }
}
