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

#include "qbb/bounds.hpp"
#include "qbb/linops.hpp"
#include "support/closed_forms.hpp"
#include "support/test_helpers.hpp"

using namespace qbb;

namespace {

Model single_point_model() {
  Model m;
  m.name = "grid";
  m.d = 1;
  m.dim = 2;
  m.weight = RMat::identity(1);
  m.symmetry = {SymmetryMap::Identity};
  GridRecord rec;
  rec.theta = {0.7};
  rec.w = 1.0;
  rec.rho = CMat(2, 2);
  rec.rho(0, 0) = 0.6;
  rec.rho(1, 1) = 0.4;
  m.records.push_back(rec);
  return m;
}

}  // namespace

TEST_CASE("prior loss") {
  CHECK(prior_loss(moments_imaging(3, 4, 1.0)) ==
        doctest::Approx(M_PI * M_PI / 48.0).epsilon(1e-14));
  CHECK(prior_loss(moments_imaging(3, 4, 1.0)) ==
        doctest::Approx(0.2056168).epsilon(1e-6));

  // planar with v1 = v2 = 0.25 (beta = 1/2, W = sqrt(1/2))
  const double w = std::sqrt(0.5);
  CHECK(prior_loss(moments_planar(w, w, 0.5)) == doctest::Approx(0.5));

  // deterministic prior: a single grid point
  CHECK(prior_loss(moments_of_grid(single_point_model())) ==
        doctest::Approx(0.0));
}

TEST_CASE("spm bound on the imaging model") {
  const ModelMoments m = moments_imaging(2, 4, std::sqrt(2.0));
  const SpmResult r = spm(m);
  CHECK(r.l_spm == doctest::Approx((M_PI * M_PI / 3.0 - 2.0 / 3.0) / 16.0)
                       .epsilon(1e-14));
  CHECK(r.l_spm == doctest::Approx(0.1639501).epsilon(1e-6));
  // mu = 0 here, so gain and pseudo-gain coincide
  CHECK(r.gain == doctest::Approx(r.pseudo_gain).epsilon(1e-14));
  // S_j from the anticommutator solve: prefactor -2 alpha/(n(1+alpha^2))
  const double c = 2.0 * std::sqrt(2.0) / (4.0 * 3.0);
  CHECK(r.S[0](1, 0).imag() == doctest::Approx(-c).epsilon(1e-12));
}

TEST_CASE("spm bound on the planar model") {
  const double w = std::sqrt(0.5);
  const SpmResult r = spm(moments_planar(w, w, 0.5));
  CHECK(r.l_spm == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(r.pseudo_gain == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("spm bound vanishes for a deterministic prior") {
  const SpmResult r = spm(moments_of_grid(single_point_model()));
  CHECK(r.l_spm == doctest::Approx(0.0));
}

TEST_CASE("spm never exceeds the prior loss") {
  auto g = test::rng(31);
  for (int rep = 0; rep < 30; ++rep) {
    const Model m = test::random_grid_model(g, 2 + rep % 3, 1 + rep % 3);
    const ModelMoments mm = moments_of_grid(m);
    CHECK(spm(mm).l_spm <= prior_loss(mm) + 1e-12);
  }
}

TEST_CASE("monotone SLD member reproduces the SPM bound") {
  auto g = test::rng(77);
  const ModelMoments cases[] = {
      moments_imaging(2, 4, std::sqrt(2.0)),
      moments_planar(0.6, 0.5, 1.0),
      moments_phase_dephasing(1, M_PI / 2, 5.0),
      moments_of_grid(test::random_grid_model(g, 3, 2)),
  };
  for (const ModelMoments& m : cases) {
    const MonotoneResult r = monotone_metric_bound(m, MetricChoice::SLD);
    CHECK(r.bound == doctest::Approx(spm(m).l_spm).epsilon(1e-10));
  }
}

TEST_CASE("RLD bound on the imaging model") {
  const double alpha = std::sqrt(2.0);
  const ModelMoments m = moments_imaging(2, 4, alpha);
  const MonotoneResult r = monotone_metric_bound(m, MetricChoice::RLD);
  // K = (1+alpha^2)/(n^2 (d+alpha^2)) I = (3/64) I
  CHECK(r.K(0, 0).real() == doctest::Approx(3.0 / 64.0).epsilon(1e-12));
  CHECK(r.K(1, 1).real() == doctest::Approx(3.0 / 64.0).epsilon(1e-12));
  CHECK(std::abs(r.K(0, 1)) <= 1e-14);
  CHECK(r.bound == doctest::Approx((M_PI * M_PI / 3.0 - 0.75) / 16.0)
                       .epsilon(1e-13));
  CHECK(r.bound == doctest::Approx(0.1587418).epsilon(1e-6));
}

TEST_CASE("RLD matrix on the planar model against direct arithmetic") {
  const double W1 = 0.6, W2 = 0.5, beta = 1.0;
  const ModelMoments m = moments_planar(W1, W2, beta);
  const MonotoneResult r = monotone_metric_bound(m, MetricChoice::RLD);
  // oracle: K_ij = Tr[rho_bar_i rho0^{-1} rho_bar_j] with rho0^{-1} = 2 I
  const CMat rinv = pinv_psd(m.rho0).mat();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const cplx want =
          trace_prod(matmul(m.rho_bar[i].mat(), rinv), m.rho_bar[j].mat());
      CHECK(std::abs(r.K(i, j) - want) <= 1e-14);
    }
  const double v1 = W1 * W1 / 3.0, v2 = W2 * W2 / 3.0;
  CHECK(r.K(0, 0).real() == doctest::Approx(v1 * v1).epsilon(1e-12));
  CHECK(r.K(1, 1).real() == doctest::Approx(v2 * v2).epsilon(1e-12));
}

TEST_CASE("sqrt metric ties to the PGM inner product") {
  auto g = test::rng(5150);
  const ModelMoments cases[] = {
      moments_imaging(2, 4, 1.2),
      moments_phase_dephasing(2, M_PI / 2, 5.0),
      moments_of_grid(test::random_grid_model(g, 3, 2)),
  };
  for (const ModelMoments& m : cases) {
    const MonotoneResult sq = monotone_metric_bound(m, MetricChoice::SQRT);
    double tr = 0.0;
    for (int i = 0; i < m.d; ++i)
      for (int j = 0; j < m.d; ++j)
        tr += m.weight(i, j) * sq.K(j, i).real();
    CHECK(m.lambda - tr == doctest::Approx(pgm_bound(m) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("pgm bound closed forms") {
  const ModelMoments mi = moments_imaging(2, 4, std::sqrt(2.0));
  CHECK(pgm_bound(mi) ==
        doctest::Approx((M_PI * M_PI / 3.0 - std::sqrt(2.0) / 2.0) / 8.0)
            .epsilon(1e-14));
  CHECK(pgm_bound(mi) == doctest::Approx(0.3228452).epsilon(1e-6));

  // rho0 proportional to the identity: PGM = 2 SPM exactly
  const double w = std::sqrt(0.5);
  const ModelMoments mp = moments_planar(w, w, 0.5);
  CHECK(pgm_bound(mp) == doctest::Approx(2.0 * spm(mp).l_spm).epsilon(1e-14));
}

TEST_CASE("pgm equals twice spm on commuting (diagonal) models") {
  auto g = test::rng(404);
  for (int rep = 0; rep < 10; ++rep) {
    const Model m = test::random_grid_model(g, 3, 2, 6, /*diagonal=*/true);
    const ModelMoments mm = moments_of_grid(m);
    CHECK(pgm_bound(mm) ==
          doctest::Approx(2.0 * spm(mm).l_spm).epsilon(1e-11));
  }
}

TEST_CASE("pgm within twice spm on random models") {
  auto g = test::rng(808);
  for (int rep = 0; rep < 30; ++rep) {
    const Model m = test::random_grid_model(g, 2 + rep % 3, 1 + rep % 3);
    const ModelMoments mm = moments_of_grid(m);
    CHECK(pgm_bound(mm) <= 2.0 * spm(mm).l_spm + 1e-9);
  }
}

TEST_CASE("pgm-star on the imaging model") {
  const double alpha = std::sqrt(2.0);
  const Model model = make_imaging_model(2, 4, alpha);
  const ModelMoments m = moments_imaging(2, 4, alpha);
  const double got = pgm_star_bound(model, m, 60);
  const test::ImagingForms forms(2, 4, alpha);
  CHECK(got == doctest::Approx(forms.pgm_star).epsilon(1e-10));
  CHECK(got == doctest::Approx(0.1899917).epsilon(1e-6));
}

TEST_CASE("pgm-star on the planar model is exact under the Jacobi rule") {
  auto g = test::rng(11);
  std::uniform_real_distribution<double> U(0.05, 0.65);
  std::uniform_real_distribution<double> B(0.05, 3.0);
  for (int rep = 0; rep < 20; ++rep) {
    const double W1 = U(g), W2 = U(g);
    if (W1 * W1 + W2 * W2 > 1.0) continue;
    const double beta = B(g);
    const Model model = make_planar_model(W1, W2, beta);
    const ModelMoments m = moments_planar(W1, W2, beta);
    const double v1 = W1 * W1 / (1 + 2 * beta), v2 = W2 * W2 / (1 + 2 * beta);
    CHECK(pgm_star_bound(model, m, 8) ==
          doctest::Approx(test::PlanarForms(v1, v2).pgm_star).epsilon(1e-12));
  }
}

TEST_CASE("pgm-star vanishes for a deterministic prior") {
  const Model m = single_point_model();
  const ModelMoments mm = moments_of_grid(m);
  CHECK(pgm_star_bound(m, mm, 0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("pgm-star never exceeds the prior loss") {
  auto g = test::rng(2718);
  for (int rep = 0; rep < 20; ++rep) {
    const Model m = test::random_grid_model(g, 2 + rep % 3, 1 + rep % 2);
    const ModelMoments mm = moments_of_grid(m);
    CHECK(pgm_star_bound(m, mm, 0) <= prior_loss(mm) + 1e-9);
  }
}

TEST_CASE("report on the imaging model (closed-form part)") {
  const Model model = make_imaging_model(2, 4, std::sqrt(2.0));
  const ModelMoments m = compute_moments(model);
  ReportOptions opt;
  opt.run_sdp = false;
  const BoundsReport rep = assemble_report(model, m, opt);

  // I_PGM ~ 0.96917 exceeds I_prior ~ 0.25414: the PGM chain is trivial here
  CHECK(rep.incompat.at("I_PGM") == doctest::Approx(0.96917).epsilon(1e-4));
  CHECK(rep.incompat.at("I_prior") == doctest::Approx(0.25414).epsilon(1e-4));
  CHECK(rep.pgm_trivial);
  CHECK(rep.two_spm_trivial);
  CHECK_FALSE(rep.upper_nontrivial);
  CHECK(rep.hierarchy_violations.empty());
  CHECK(rep.certified_range.first == 0.0);
  CHECK(rep.certified_range.second == rep.incompat.at("I_PGM_star"));
}

TEST_CASE("report flags the nontrivial planar regime") {
  // 2 (v1^2 + v2^2) > v1 + v2 at beta = 0.07, W1 = 0.83, W2 = 0.5
  const Model model = make_planar_model(0.83, 0.5, 0.07);
  const ModelMoments m = compute_moments(model);
  ReportOptions opt;
  opt.run_sdp = false;
  const BoundsReport rep = assemble_report(model, m, opt);
  CHECK(rep.upper_nontrivial);
  CHECK_FALSE(rep.two_spm_trivial);
  const double v1 = 0.83 * 0.83 / 1.14, v2 = 0.25 / 1.14;
  CHECK(2.0 * (v1 * v1 + v2 * v2) == doctest::Approx(0.826538).epsilon(1e-5));
  CHECK(v1 + v2 == doctest::Approx(0.823596).epsilon(1e-5));
  CHECK(rep.hierarchy_violations.empty());
}

TEST_CASE("degenerate model raises a distinct status") {
  const Model m = single_point_model();
  const ModelMoments mm = moments_of_grid(m);
  CHECK_THROWS_AS(assemble_report(m, mm, {}), DegenerateModel);
}

TEST_CASE("gain and pseudo-gain with a nonzero prior mean") {
  // two-point model with mean 0.5: gain = pseudo_gain - mu^T L mu
  Model m;
  m.name = "grid";
  m.d = 1;
  m.dim = 2;
  m.weight = RMat::identity(1);
  m.symmetry = {SymmetryMap::Identity};
  for (int k = 0; k < 2; ++k) {
    GridRecord rec;
    rec.theta = {double(k)};
    rec.w = 0.5;
    rec.rho = CMat(2, 2);
    rec.rho(k, k) = 1.0;
    m.records.push_back(rec);
  }
  const ModelMoments mm = moments_of_grid(m);
  const SpmResult r = spm(mm);
  CHECK(r.gain == doctest::Approx(r.pseudo_gain - 0.25).epsilon(1e-12));
  // classical perfectly distinguishable pair: SPM loss is zero
  CHECK(r.l_spm == doctest::Approx(0.0).epsilon(1e-12));
}
