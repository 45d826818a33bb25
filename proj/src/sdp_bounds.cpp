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

#include "qbb/sdp_bounds.hpp"

#include <cmath>

#include "qbb/errors.hpp"
#include "qbb/linops.hpp"

namespace qbb {
namespace {

CMat weight_as_cmat(const RMat& L) {
  CMat W(L.rows(), L.cols());
  for (int r = 0; r < L.rows(); ++r)
    for (int c = 0; c < L.cols(); ++c) W(r, c) = L(r, c);
  return W;
}

// real symmetric PSD square root of the weight matrix
RMat sqrt_weight(const RMat& L) {
  RMat A = L, V;
  std::vector<double> w;
  eig_sym_inplace(A, V, w);
  RMat S(L.rows(), L.cols());
  for (int r = 0; r < L.rows(); ++r)
    for (int c = 0; c < L.cols(); ++c) {
      double s = 0.0;
      for (int k = 0; k < L.rows(); ++k)
        s += V(r, k) * std::sqrt(std::max(w[k], 0.0)) * V(c, k);
      S(r, c) = s;
    }
  return S;
}

}  // namespace

NhResult nh_bound(const ModelMoments& moments, const SdpTolerances& tol) {
  const SupportedMoments sup = restrict_to_support(moments);
  const ModelMoments& m = sup.m;
  const int d = m.d;
  const int D = m.rho0.dim();
  const CMat I = CMat::identity(D);

  SdpProblem p;
  std::vector<int> Mi(d);
  std::vector<std::vector<int>> Mij(d, std::vector<int>(d, -1));
  for (int i = 0; i < d; ++i) Mi[i] = p.herm_var(D);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) Mij[i][j] = p.herm_var(D);

  // [[S, V], [V^dag, I]] with S the d x d grid of M_ij and V the stacked M_i
  const int blk = p.block(d * D + D);
  p.add_const(blk, d * D, d * D, I);
  for (int i = 0; i < d; ++i) {
    p.add_herm_term(blk, i * D, I, Mij[i][i]);
    for (int j = i + 1; j < d; ++j)
      p.add_cross_term(blk, i * D, j * D, I, Mij[i][j], I);
    p.add_cross_term(blk, i * D, d * D, I, Mi[i], I);
  }

  p.obj_const(m.lambda);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const double w = (i == j) ? m.weight(i, i) : 2.0 * m.weight(i, j);
      if (w != 0.0) p.obj_trace(Mij[i][j], m.rho0.mat(), w);
    }
    CMat G(D, D);
    for (int j = 0; j < d; ++j) {
      if (m.weight(i, j) == 0.0) continue;
      CMat t = m.rho_bar[j].mat();
      t *= cplx{m.weight(i, j), 0.0};
      G += t;
    }
    p.obj_trace(Mi[i], G, -2.0);
  }

  NhResult out;
  out.stats = p.solve(tol);
  out.value = out.stats.value;
  for (int i = 0; i < d; ++i) {
    HermitianOp sol = p.extract(Mi[i], out.stats.y);
    out.first_moments.push_back(sup.projected ? embed_from(sol, sup.basis)
                                              : sol);
  }
  out.second_moments.assign(d, std::vector<HermitianOp>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      HermitianOp sol = p.extract(Mij[std::min(i, j)][std::max(i, j)],
                                  out.stats.y);
      out.second_moments[i][j] =
          sup.projected ? embed_from(sol, sup.basis) : sol;
    }
  return out;
}

SdpSolution nagaoka_two_param(const ModelMoments& moments,
                              const SdpTolerances& tol) {
  if (moments.d != 2)
    throw DomainError("nagaoka_two_param: defined for exactly two parameters");
  const SupportedMoments sup = restrict_to_support(moments);
  const ModelMoments& m = sup.m;
  const int D = m.rho0.dim();

  // pre-whiten the weight: rho_bar_i' = (sqrt L)^{ij} rho_bar_j
  const RMat sL = sqrt_weight(m.weight);
  std::vector<HermitianOp> rbw;
  for (int i = 0; i < 2; ++i) {
    CMat acc(D, D);
    for (int j = 0; j < 2; ++j) {
      CMat t = m.rho_bar[j].mat();
      t *= cplx{sL(i, j), 0.0};
      acc += t;
    }
    rbw.push_back(HermitianOp::trusted(std::move(acc)));
  }

  const CMat sqrt_rho = sqrt_psd(m.rho0).mat();
  const double inv_s2 = 1.0 / std::sqrt(2.0);
  const CMat I = CMat::identity(D);

  SdpProblem p;
  const int M1 = p.herm_var(D);
  const int M2 = p.herm_var(D);
  const int R = p.herm_var(D);

  for (int sign = 0; sign < 2; ++sign) {
    const cplx c2 = sign == 0 ? cplx{0.0, inv_s2} : cplx{0.0, -inv_s2};
    const int blk = p.block(2 * D);
    p.add_const(blk, D, D, I);
    p.add_herm_term(blk, 0, I, R);
    CMat A1 = I;
    A1 *= cplx{inv_s2, 0.0};
    CMat A2 = I;
    A2 *= c2;
    p.add_cross_term(blk, D, 0, A1, M1, sqrt_rho);
    p.add_cross_term(blk, D, 0, A2, M2, sqrt_rho);
  }

  p.obj_const(m.lambda);
  p.obj_trace(R, I, 2.0);
  p.obj_trace(M1, rbw[0].mat(), -2.0);
  p.obj_trace(M2, rbw[1].mat(), -2.0);
  return p.solve(tol);
}

SdpSolution holevo_bound(const ModelMoments& moments, const SdpTolerances& tol) {
  const SupportedMoments sup = restrict_to_support(moments);
  const ModelMoments& m = sup.m;
  const int d = m.d;
  const int D = m.rho0.dim();
  const CMat sqrt_rho = sqrt_psd(m.rho0).mat();
  const CMat Id = CMat::identity(d);

  SdpProblem p;
  std::vector<int> Mi(d);
  for (int i = 0; i < d; ++i) Mi[i] = p.herm_var(D);
  const int V = p.herm_var(d);
  const int Q = p.herm_var(d);

  // Gram/Schur block [[V, X^dag], [X, I]], columns of X = vec(sqrt(rho0) M_i)
  const int gram = p.block(d + D * D);
  p.add_herm_term(gram, 0, Id, V);
  for (int i = 0; i < d; ++i) p.add_vec_term(gram, d, i, sqrt_rho, Mi[i]);
  p.add_const(gram, d, d, CMat::identity(D * D));

  // trace-norm epigraph of sqrt(L) Im V sqrt(L): with H = i sqrt(L) ImV sqrt(L)
  // (traceless), ||H||_1 = min 2 Tr Q over Q >= 0, H + Q >= 0
  CMat sLc(d, d);
  {
    const RMat sL = sqrt_weight(m.weight);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) sLc(r, c) = sL(r, c);
  }
  const int qblk = p.block(d);
  p.add_herm_term(qblk, 0, Id, Q);
  const int hq = p.block(d);
  p.add_imag_term(hq, 0, sLc, V);
  p.add_herm_term(hq, 0, Id, Q);

  p.obj_const(m.lambda);
  p.obj_trace(V, weight_as_cmat(m.weight), 1.0);
  p.obj_trace(Q, Id, 2.0);
  for (int i = 0; i < d; ++i) {
    CMat G(D, D);
    for (int j = 0; j < d; ++j) {
      if (m.weight(i, j) == 0.0) continue;
      CMat t = m.rho_bar[j].mat();
      t *= cplx{m.weight(i, j), 0.0};
      G += t;
    }
    p.obj_trace(Mi[i], G, -2.0);
  }
  return p.solve(tol);
}

}  // namespace qbb
