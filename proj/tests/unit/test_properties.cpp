// Copyright 2026 The zeno-dark Authors
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

#include <doctest.h>

#include "properties.hpp"

TEST_CASE("randomized invariants over 1000 instances") {
  const auto r = zeno::test::run_properties(1000);
  CHECK(r.hermiticity <= 1e-12);
  CHECK(r.idempotence <= 1e-12);
  CHECK(r.annihilation <= 1e-12);
  CHECK(r.unitarity <= 1e-12);
  CHECK(r.reconstruction <= 1e-10);
  CHECK(r.spectrum_oracle <= 1e-10);
}
