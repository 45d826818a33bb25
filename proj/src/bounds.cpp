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

#include "qbb/bounds.hpp"

#include <cmath>

#include "qbb/errors.hpp"
#include "qbb/linops.hpp"
#include "qbb/sdp_bounds.hpp"

namespace qbb {
namespace {

double mu_l_mu(const ModelMoments& m) {
  double s = 0.0;
  for (int i = 0; i < m.d; ++i)
    for (int j = 0; j < m.d; ++j) s += m.mu[i] * m.weight(i, j) * m.mu[j];
  return s;
}

// tr(L Re K) for real symmetric L and Hermitian K
double weighted_trace(const RMat& L, const CMat& K) {
  double s = 0.0;
  for (int i = 0; i < L.rows(); ++i)
    for (int j = 0; j < L.cols(); ++j) s += L(i, j) * K(j, i).real();
  return s;
}

RMat sqrt_weight(const RMat& L) {
  RMat A = L, V;
  std::vector<double> w;
  eig_sym_inplace(A, V, w);
  RMat S(L.rows(), L.cols());
  for (int r = 0; r < L.rows(); ++r)
    for (int c = 0; c < L.cols(); ++c) {
      double acc = 0.0;
      for (int k = 0; k < L.rows(); ++k)
        acc += V(r, k) * std::sqrt(std::max(w[k], 0.0)) * V(c, k);
      S(r, c) = acc;
    }
  return S;
}

// || sqrt(L) Im K sqrt(L) ||_1 via the Hermitian matrix i sqrt(L) ImK sqrt(L)
double imag_tracenorm(const RMat& L, const CMat& K) {
  const int d = K.rows();
  const RMat sL = sqrt_weight(L);
  RMat imK(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) imK(r, c) = K(r, c).imag();
  const RMat A = matmul(matmul(sL, imK), sL);  // real antisymmetric
  CMat H(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) H(r, c) = cplx{0.0, A(r, c)};
  return trace_norm(HermitianOp(std::move(H)));
}

}  // namespace

double prior_loss(const ModelMoments& m) { return m.lambda - mu_l_mu(m); }

SpmResult spm(const ModelMoments& moments) {
  const SupportedMoments sup = restrict_to_support(moments);
  const ModelMoments& m = sup.m;

  SpmResult out;
  std::vector<HermitianOp> S;
  for (int i = 0; i < m.d; ++i)
    S.push_back(lyapunov_solve(m.rho0, m.rho_bar[i]));

  cplx pg{};
  for (int i = 0; i < m.d; ++i)
    for (int j = 0; j < m.d; ++j) {
      if (m.weight(i, j) == 0.0) continue;
      // L^{ij} Tr[rho0 S_j S_i] = L^{ij} Tr[rho_bar_j S_i]
      pg += m.weight(i, j) * trace_prod_herm(m.rho_bar[j].mat(), S[i].mat());
    }
  out.pseudo_gain = pg.real();
  out.l_spm = m.lambda - out.pseudo_gain;
  out.gain = out.pseudo_gain - mu_l_mu(m);
  for (auto& s : S)
    out.S.push_back(sup.projected ? embed_from(s, sup.basis) : std::move(s));
  return out;
}

MonotoneResult monotone_metric_bound(const ModelMoments& moments,
                                     MetricChoice metric) {
  const SupportedMoments sup = restrict_to_support(moments);
  const ModelMoments& m = sup.m;
  const int d = m.d;

  MonotoneResult out;
  out.K = CMat(d, d);
  switch (metric) {
    case MetricChoice::SLD: {
      for (int i = 0; i < d; ++i) {
        const HermitianOp Si = lyapunov_solve(m.rho0, m.rho_bar[i]);
        for (int j = 0; j < d; ++j)
          out.K(i, j) = trace_prod_herm(m.rho_bar[j].mat(), Si.mat());
      }
      break;
    }
    case MetricChoice::RLD: {
      const CMat rinv = pinv_psd(m.rho0).mat();
      for (int i = 0; i < d; ++i) {
        const CMat t = matmul(m.rho_bar[i].mat(), rinv);
        for (int j = 0; j < d; ++j)
          out.K(i, j) = trace_prod_herm(t, m.rho_bar[j].mat());
      }
      break;
    }
    case MetricChoice::SQRT: {
      const CMat risq = inv_sqrt_psd(m.rho0).mat();
      for (int i = 0; i < d; ++i) {
        const CMat t = matmul(risq, matmul(m.rho_bar[i].mat(), risq));
        for (int j = 0; j < d; ++j)
          out.K(i, j) = trace_prod_herm(t, m.rho_bar[j].mat());
      }
      break;
    }
  }
  // Hermitize against roundoff
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const cplx v = 0.5 * (out.K(i, j) + std::conj(out.K(j, i)));
      out.K(i, j) = v;
      out.K(j, i) = std::conj(v);
    }
  out.bound =
      m.lambda - weighted_trace(m.weight, out.K) + imag_tracenorm(m.weight, out.K);
  return out;
}

double pgm_bound(const ModelMoments& moments) {
  const MonotoneResult sq = monotone_metric_bound(moments, MetricChoice::SQRT);
  return 2.0 * (moments.lambda - weighted_trace(moments.weight, sq.K));
}

double pgm_star_bound(const Model& model, const ModelMoments& m,
                      int quad_order) {
  const HermitianOp risq = inv_sqrt_psd(m.rho0);
  std::vector<CMat> B;
  for (int i = 0; i < m.d; ++i)
    B.push_back(matmul(risq.mat(), matmul(m.rho_bar[i].mat(), risq.mat())));

  const auto grid = integration_grid(model, quad_order);
  double corr = 0.0;
  std::vector<double> t(m.d);
  for (const WeightedPoint& pt : grid) {
    const CMat rho = state_at_point(model, pt);
    for (int i = 0; i < m.d; ++i)
      t[i] = trace_prod_herm(rho, B[i]).real();
    double tlt = 0.0;
    for (int i = 0; i < m.d; ++i)
      for (int j = 0; j < m.d; ++j) tlt += t[i] * m.weight(i, j) * t[j];
    corr += pt.pw * tlt;
  }
  return m.lambda - corr;
}

BoundsReport assemble_report(const Model& model, const ModelMoments& m,
                             const ReportOptions& options) {
  BoundsReport rep;

  const double prior = prior_loss(m);
  const SpmResult sr = spm(m);
  if (sr.l_spm <= 1e-14)
    throw DegenerateModel(
        "assemble_report: L_SPM <= 1e-14, incompatibility undefined");

  const double rpm = monotone_metric_bound(m, MetricChoice::RLD).bound;
  const double msqrt = monotone_metric_bound(m, MetricChoice::SQRT).bound;
  const double pgm = pgm_bound(m);
  const double pgm_star = pgm_star_bound(model, m, options.quad_order);

  rep.losses["prior"] = prior;
  rep.losses["SPM"] = sr.l_spm;
  rep.losses["two_SPM"] = 2.0 * sr.l_spm;
  rep.losses["RPM"] = rpm;
  rep.losses["monotone_SQRT"] = msqrt;
  rep.losses["PGM"] = pgm;
  rep.losses["PGM_star"] = pgm_star;
  rep.gain = sr.gain;
  rep.pseudo_gain = sr.pseudo_gain;

  double nh = 0.0, holevo = 0.0;
  if (options.run_sdp) {
    NhResult nh_res = nh_bound(m, options.sdp);
    SdpSolution h_res = holevo_bound(m, options.sdp);
    nh = nh_res.value;
    holevo = h_res.value;
    rep.losses["NH"] = nh;
    rep.losses["Holevo"] = holevo;
    rep.sdp_iterations = nh_res.stats.iterations + h_res.iterations;
    rep.sdp_gap = std::max(nh_res.stats.gap, h_res.gap);
    rep.sdp_status = std::string(to_string(nh_res.stats.status)) + "/" +
                     to_string(h_res.status);
  }

  auto incomp = [&](double loss) { return loss / sr.l_spm - 1.0; };
  rep.incompat["I_prior"] = incomp(prior);
  rep.incompat["I_RPM"] = incomp(rpm);
  rep.incompat["I_PGM"] = incomp(pgm);
  rep.incompat["I_PGM_star"] = incomp(pgm_star);
  if (options.run_sdp) {
    rep.incompat["I_NH"] = std::max(0.0, incomp(nh));
    rep.incompat["I_H"] = std::max(0.0, incomp(holevo));
    rep.certified_range = {rep.incompat["I_NH"], rep.incompat["I_PGM_star"]};
  } else {
    rep.certified_range = {0.0, rep.incompat["I_PGM_star"]};
  }

  rep.pgm_trivial = pgm > prior;
  rep.two_spm_trivial = 2.0 * sr.l_spm > prior;
  rep.upper_nontrivial = !rep.two_spm_trivial;

  // hierarchy diagnostics
  const double slack = kHierarchySlack;
  auto check = [&](const char* what, double lo, double hi) {
    // requires hi >= lo - slack
    if (hi < lo - slack)
      rep.hierarchy_violations.push_back(std::string(what) + " (" +
                                         std::to_string(hi) + " < " +
                                         std::to_string(lo) + ")");
  };
  check("min(2SPM,prior) >= min(PGM,prior)", std::min(pgm, prior),
        std::min(2.0 * sr.l_spm, prior));
  check("min(PGM,prior) >= PGM*", pgm_star, std::min(pgm, prior));
  if (options.run_sdp) {
    check("PGM* >= NH", nh, pgm_star);
    check("NH >= Holevo", holevo, nh);
    check("Holevo >= max(SPM,RPM)", std::max(sr.l_spm, rpm), holevo);
  } else {
    check("PGM* >= max(SPM,RPM)", std::max(sr.l_spm, rpm), pgm_star);
  }
  check("I_PGM <= 1", rep.incompat["I_PGM"] * sr.l_spm, 1.0 * sr.l_spm);
  return rep;
}

}  // namespace qbb
