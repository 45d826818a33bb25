// Copyright 2026 The qbb developers.
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

#include "qbb/sdp.hpp"
#include "support/sdp_cases.hpp"

using namespace qbb;

TEST_CASE("hand-constructed SDPs reach their known optima") {
  for (const test::SdpCase& c : test::sdp_cases()) {
    CAPTURE(c.name);
    const SdpSolution s = c.prob->solve();
    CHECK(s.ok());
    CHECK(s.value ==
          doctest::Approx(c.expected).epsilon(1e-6).scale(1.0));
    CHECK(s.gap <= 1e-6 * (1.0 + std::abs(c.expected)));
    // weak duality between the reported pair
    CHECK(s.dual_value <= s.value + 1e-7 * (1.0 + std::abs(c.expected)));
  }
}

TEST_CASE("solution extraction reproduces the optimizer") {
  // min tr X s.t. X >= I_3 has the unique optimizer X = I
  SdpProblem p;
  const int x = p.herm_var(3);
  const int b = p.block(3);
  p.add_const(b, 0, 0, test::sid(3, -1.0));
  p.add_herm_term(b, 0, CMat::identity(3), x);
  p.obj_trace(x, CMat::identity(3), 1.0);
  const SdpSolution s = p.solve();
  REQUIRE(s.ok());
  const HermitianOp X = p.extract(x, s.y);
  CHECK(fro_norm(X.mat() - CMat::identity(3)) <= 1e-5);
}

TEST_CASE("tight tolerances still converge") {
  SdpTolerances tol;
  tol.gap = 1e-9;
  tol.feas = 1e-10;
  for (const test::SdpCase& c : test::sdp_cases()) {
    CAPTURE(c.name);
    const SdpSolution s = c.prob->solve(tol);
    CHECK(s.ok());
    CHECK(s.value == doctest::Approx(c.expected).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("iteration cap reports max-iters with best bounds") {
  SdpProblem p;
  const int t = p.herm_var(1);
  const int b = p.block(1);
  p.add_const(b, 0, 0, test::sid(1, -1.0));
  p.add_herm_term(b, 0, CMat::identity(1), t);
  p.obj_trace(t, CMat::identity(1), 1.0);
  SdpTolerances tol;
  tol.max_iters = 1;
  const SdpSolution s = p.solve(tol);
  CHECK(s.status == SdpStatus::MaxIters);
}

TEST_CASE("overlapping cross placements are rejected") {
  SdpProblem p;
  const int x = p.herm_var(2);
  const int b = p.block(2);
  CHECK_THROWS_AS(
      p.add_cross_term(b, 0, 0, CMat::identity(2), x, CMat::identity(2)),
      Error);
}
