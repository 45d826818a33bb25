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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qbb/linops.hpp"
#include "qbb/model.hpp"
#include "qbb/pauli.hpp"
#include "qbb/specfun.hpp"
#include "support/test_helpers.hpp"

using namespace qbb;

namespace {

double max_entry_diff(const CMat& a, const CMat& b) {
  double m = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

}  // namespace

TEST_CASE("imaging closed-form moments") {
  const double alpha = std::sqrt(2.0);
  const ModelMoments m = moments_imaging(2, 4, alpha);
  CHECK(m.rho0(0, 0).real() == doctest::Approx(0.5));
  CHECK(m.rho0(1, 1).real() == doctest::Approx(0.25));
  CHECK(m.rho0(2, 2).real() == doctest::Approx(0.25));
  CHECK(m.lambda == doctest::Approx(M_PI * M_PI / 48.0));
  CHECK(m.mu[0] == 0.0);
  CHECK(m.mu[1] == 0.0);

  // d=1, n=4, alpha=1: rho_bar_1 = (-i/8)(|n1><n0| - |n0><n1|)
  const ModelMoments m1 = moments_imaging(1, 4, 1.0);
  CHECK(m1.rho_bar[0](1, 0).imag() == doctest::Approx(-0.125));
  CHECK(m1.rho_bar[0](0, 1).imag() == doctest::Approx(0.125));
}

TEST_CASE("imaging numeric quadrature matches the closed forms") {
  const double alpha = std::sqrt(2.0);
  const Model model = make_imaging_model(2, 4, alpha);
  const ModelMoments mq = moments_numeric(model, 40);
  const ModelMoments ma = moments_imaging(2, 4, alpha);
  CHECK(max_entry_diff(mq.rho0.mat(), ma.rho0.mat()) <= 1e-8);
  for (int i = 0; i < 2; ++i)
    CHECK(max_entry_diff(mq.rho_bar[i].mat(), ma.rho_bar[i].mat()) <= 1e-8);
  CHECK(std::abs(mq.lambda - ma.lambda) <= 1e-8);
}

TEST_CASE("imaging weak commutation: Tr[rho0 [S_j, S_k]] = 0") {
  const ModelMoments m = moments_imaging(3, 4, 1.3);
  std::vector<HermitianOp> S;
  for (int i = 0; i < 3; ++i) S.push_back(lyapunov_solve(m.rho0, m.rho_bar[i]));
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      const CMat comm =
          matmul(S[j].mat(), S[k].mat()) - matmul(S[k].mat(), S[j].mat());
      CHECK(std::abs(trace_prod(m.rho0.mat(), comm)) <= 1e-10);
    }
}

TEST_CASE("planar moments") {
  const ModelMoments m = moments_planar(std::sqrt(0.75 * 0.5), 0.5, 1.0);
  CHECK(m.rho0(0, 0).real() == doctest::Approx(0.5));
  // v_i = W_i^2 / (1 + 2 beta)
  CHECK(m.lambda == doctest::Approx(0.75 * 0.5 / 3.0 + 0.25 / 3.0));

  // edge-concentrated prior: beta = 0.07, W1 = 0.83 -> v1 = 0.6889/1.14
  const ModelMoments p = moments_planar(0.83, 0.5, 0.07);
  CHECK(p.rho_bar[0](0, 1).real() * 2.0 ==
        doctest::Approx(0.6889 / 1.14).epsilon(1e-12));
  CHECK(p.rho_bar[0](0, 1).real() * 2.0 == doctest::Approx(0.604298).epsilon(1e-5));

  CHECK_THROWS_AS(moments_planar(1.0, 0.2, 1.0), ModelError);
}

TEST_CASE("planar numeric quadrature matches closed forms (uniform prior)") {
  const Model model = make_planar_model(0.6, 0.5, 1.0);
  const ModelMoments mq = moments_numeric(model, 20);
  const ModelMoments ma = moments_planar(0.6, 0.5, 1.0);
  CHECK(max_entry_diff(mq.rho0.mat(), ma.rho0.mat()) <= 1e-12);
  for (int i = 0; i < 2; ++i)
    CHECK(max_entry_diff(mq.rho_bar[i].mat(), ma.rho_bar[i].mat()) <= 1e-12);
  CHECK(mq.lambda == doctest::Approx(ma.lambda).epsilon(1e-12));
}

TEST_CASE("phase-dephasing prior: ignorance prior normalizes") {
  const Model model = make_phase_dephasing_model(1, M_PI / 2, 5.0);
  const auto grid = integration_grid(model, 40);
  double mass = 0.0;
  for (const auto& pt : grid) mass += pt.pw;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("phase-dephasing single-copy closed forms") {
  const double W1 = M_PI / 2, W2 = 5.0;
  const ModelMoments m = moments_phase_dephasing(1, W1, W2);

  // lambda = (W1^2 + ln^2 W2)/12
  const double lw = std::log(W2);
  CHECK(m.lambda == doctest::Approx((W1 * W1 + lw * lw) / 12.0));

  // off-diagonal of rho0 = sin(W1/2)[Ei(-W2) - Ei(-1/W2)]/(W1 ln W2) / 2
  const double dEi = expint_ei(-W2) - expint_ei(-1.0 / W2);
  CHECK(m.rho0(0, 1).real() ==
        doctest::Approx(0.5 * std::sin(W1 / 2) * dEi / (W1 * lw)).epsilon(1e-13));
  CHECK(m.rho0(0, 0).real() == doctest::Approx(0.5));

  // rho_bar_1 proportional to sigma_y with the displayed coefficient
  const double c1 =
      (0.5 * W1 * std::cos(W1 / 2) - std::sin(W1 / 2)) * dEi / (2.0 * W1 * lw);
  CHECK(m.rho_bar[0](0, 1).imag() == doctest::Approx(-c1).epsilon(1e-12));
  CHECK(m.rho_bar[0](0, 0).real() == doctest::Approx(0.0));

  // rho_bar_2 proportional to sigma_x with the displayed coefficient
  const double sEi = expint_ei(-W2) + expint_ei(-1.0 / W2);
  const double c2 = std::sin(W1 / 2) / (2.0 * W1) *
                    ((W2 * xi_3f3(-W2) - xi_3f3(-1.0 / W2) / W2) / (2.0 * lw) +
                     sEi / 2.0 - kEulerGamma);
  CHECK(m.rho_bar[1](0, 1).real() == doctest::Approx(c2).epsilon(1e-12));
  CHECK(m.rho_bar[1](0, 0).real() == doctest::Approx(0.0));
}

TEST_CASE("phase-dephasing analytic moments equal quadrature moments") {
  for (int copies : {1, 2, 3}) {
    for (const auto& [W1, W2] : std::vector<std::pair<double, double>>{
             {M_PI / 2, 5.0}, {M_PI / 4, 2.0}}) {
      CAPTURE(copies);
      CAPTURE(W1);
      const Model model = make_phase_dephasing_model(copies, W1, W2);
      const ModelMoments ma = moments_phase_dephasing(copies, W1, W2);
      const ModelMoments mq = moments_numeric(model, 60);
      CHECK(max_entry_diff(mq.rho0.mat(), ma.rho0.mat()) <= 1e-6);
      CHECK(max_entry_diff(mq.rho_bar[0].mat(), ma.rho_bar[0].mat()) <= 1e-6);
      CHECK(max_entry_diff(mq.rho_bar[1].mat(), ma.rho_bar[1].mat()) <= 1e-6);
      CHECK(std::abs(mq.lambda - ma.lambda) <= 1e-8);
    }
  }
}

TEST_CASE("phase-dephasing multi-copy structure") {
  // diagonal entries of the phase first moment vanish (equal-exponent
  // integrals carry no theta_1 dependence)
  const ModelMoments m2 = moments_phase_dephasing(2, M_PI / 2, 5.0);
  for (int a = 0; a < 4; ++a)
    CHECK(std::abs(m2.rho_bar[0](a, a)) == doctest::Approx(0.0));

  // copies=1 assembly reduces to the single-copy formulas entrywise
  const ModelMoments m1 = moments_phase_dephasing(1, M_PI / 3, 3.0);
  const Model model = make_phase_dephasing_model(1, M_PI / 3, 3.0);
  const ModelMoments mq = moments_numeric(model, 80);
  CHECK(max_entry_diff(m1.rho0.mat(), mq.rho0.mat()) <= 1e-10);
  CHECK(max_entry_diff(m1.rho_bar[0].mat(), mq.rho_bar[0].mat()) <= 1e-10);
  CHECK(max_entry_diff(m1.rho_bar[1].mat(), mq.rho_bar[1].mat()) <= 1e-10);

  CHECK_THROWS_AS(moments_phase_dephasing(1, M_PI / 2, 0.8), PriorError);
  CHECK_THROWS_AS(make_phase_dephasing_model(9, M_PI / 2, 5.0), ResourceLimit);
}

TEST_CASE("grid model: two-point file") {
  std::istringstream in(
      "d=1 dim=2\n"
      "1.0\n"
      "f=identity\n"
      "theta: 0 | w: 0.5 | rho: 1 0 0 0 0 0 0 0\n"
      "theta: 1 | w: 0.5 | rho: 0 0 0 0 0 0 1 0\n");
  const Model m = parse_grid_model(in, "two-point");
  const ModelMoments mm = moments_of_grid(m);
  CHECK(mm.rho0(0, 0).real() == doctest::Approx(0.5));
  CHECK(mm.rho0(1, 1).real() == doctest::Approx(0.5));
  CHECK(mm.rho_bar[0](1, 1).real() == doctest::Approx(0.5));
  CHECK(mm.rho_bar[0](0, 0).real() == doctest::Approx(0.0));
  CHECK(mm.lambda == doctest::Approx(0.5));
  CHECK(mm.mu[0] == doctest::Approx(0.5));
}

TEST_CASE("grid model: parse errors carry location") {
  {
    std::istringstream in(
        "d=1 dim=2\n1.0\nf=identity\n"
        "theta: 0 | w: 0.4 | rho: 1 0 0 0 0 0 0 0\n"
        "theta: 1 | w: 0.5 | rho: 0 0 0 0 0 0 1 0\n");
    CHECK_THROWS_AS(parse_grid_model(in, "bad-weights"), ParseError);
  }
  {
    std::istringstream in("d=1 dim=2\n1.0\nf=identity\ntheta: 0 | w: 1\n");
    CHECK_THROWS_WITH_AS(parse_grid_model(in, "short"),
                         doctest::Contains("short:4"), ParseError);
  }
  {
    std::istringstream in("dim=2 d=1\n");
    CHECK_THROWS_AS(parse_grid_model(in, "header"), ParseError);
  }
  {
    // non-PSD record state
    std::istringstream in(
        "d=1 dim=2\n1.0\nf=identity\n"
        "theta: 0 | w: 1.0 | rho: 1.5 0 1 0 1 0 -0.5 0\n");
    CHECK_THROWS_AS(parse_grid_model(in, "npsd"), ModelError);
  }
  CHECK_THROWS_AS(load_grid_model("/nonexistent/missing.txt"), ParseError);
}

TEST_CASE("grid model invariants on random instances") {
  auto g = test::rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    const int dim = 2 + int(rep % 3);
    const int d = 1 + int(rep % 3);
    const Model m = test::random_grid_model(g, dim, d);
    const ModelMoments mm = moments_of_grid(m);
    CHECK(std::abs(trace_real(mm.rho0) - 1.0) <= 1e-12);
    CHECK(min_eigval(mm.rho0) >= -1e-10);
    double mlm = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) mlm += mm.mu[i] * mm.weight(i, j) * mm.mu[j];
    CHECK(mm.lambda >= mlm - 1e-12);
    CHECK(mlm >= -1e-12);
  }
}

TEST_CASE("discretized imaging grid model approximates the closed forms") {
  // midpoint discretization of the d=3 imaging prior at 21 points per axis
  const int d = 3, n = 4, pts = 21;
  const double alpha = 1.0;
  const Model cont = make_imaging_model(d, n, alpha);
  const double w = M_PI / n;

  std::ostringstream file;
  file << "d=3 dim=4\n";
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      file << (r == c ? 1.0 / d : 0.0) << (c + 1 == d ? "\n" : " ");
  file << "f=identity\nf=identity\nf=identity\n";
  const double pw = 1.0 / (pts * pts * pts);
  char buf[160];
  for (int i = 0; i < pts; ++i)
    for (int j = 0; j < pts; ++j)
      for (int k = 0; k < pts; ++k) {
        const double t[3] = {-w + (2 * i + 1) * w / pts,
                             -w + (2 * j + 1) * w / pts,
                             -w + (2 * k + 1) * w / pts};
        const CMat rho = cont.state_fn(t);
        std::snprintf(buf, sizeof buf, "theta: %.17g %.17g %.17g | w: %.17g",
                      t[0], t[1], t[2], pw);
        file << buf << " | rho:";
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c) {
            std::snprintf(buf, sizeof buf, " %.17g %.17g", rho(r, c).real(),
                          rho(r, c).imag());
            file << buf;
          }
        file << "\n";
      }

  std::istringstream in(file.str());
  const Model grid = parse_grid_model(in, "imaging-grid");
  const ModelMoments mg = moments_of_grid(grid);
  const ModelMoments ma = moments_imaging(d, n, alpha);
  CHECK(std::abs(mg.lambda - ma.lambda) <= 2e-3);
  CHECK(max_entry_diff(mg.rho0.mat(), ma.rho0.mat()) <= 2e-3);
  for (int i = 0; i < d; ++i)
    CHECK(max_entry_diff(mg.rho_bar[i].mat(), ma.rho_bar[i].mat()) <= 2e-3);
}

TEST_CASE("support restriction on a padded model") {
  auto g = test::rng(9);
  const ModelMoments base = moments_of_grid(test::random_grid_model(g, 2, 1));
  // embed into a 3-dimensional space with an unused basis vector
  CMat pad0(3, 3), pad1(3, 3);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      pad0(r, c) = base.rho0(r, c);
      pad1(r, c) = base.rho_bar[0](r, c);
    }
  ModelMoments padded;
  padded.d = 1;
  padded.rho0 = HermitianOp::trusted(std::move(pad0));
  padded.rho_bar.push_back(HermitianOp::trusted(std::move(pad1)));
  padded.lambda = base.lambda;
  padded.mu = base.mu;
  padded.weight = base.weight;

  const SupportedMoments sup = restrict_to_support(padded);
  CHECK(sup.projected);
  CHECK(sup.m.rho0.dim() == 2);
  CHECK(std::abs(trace_real(sup.m.rho0) - 1.0) <= 1e-10);
}

TEST_CASE("moments convergence: doubling the order is stable") {
  const Model model = make_phase_dephasing_model(2, M_PI / 2, 5.0);
  const ModelMoments a = moments_numeric(model, 30);
  const ModelMoments b = moments_numeric(model, 60);
  CHECK(max_entry_diff(a.rho0.mat(), b.rho0.mat()) <= 1e-10);
  CHECK(max_entry_diff(a.rho_bar[1].mat(), b.rho_bar[1].mat()) <= 1e-10);
}
