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

#ifndef QBB_SDP_BOUNDS_HPP
#define QBB_SDP_BOUNDS_HPP

#include "qbb/model.hpp"
#include "qbb/sdp.hpp"

namespace qbb {

struct NhResult {
  double value = 0.0;
  std::vector<HermitianOp> first_moments;  // optimal M_i, for diagnostics
  std::vector<std::vector<HermitianOp>> second_moments;  // M_ij = M_ji
  SdpSolution stats;
};

// Nagaoka-Hayashi bound: minimum of
//   lambda + L^{ij} Tr[rho0 M_ji - 2 rho_bar_j M_i]
// over Hermitian blocks M_ij = M_ji and M_i, subject to the block operator
// sum_ij |i><j| (x) M_ij dominating the outer product of the first-moment
// vector; imposed through the Schur block [[S, V], [V^dag, I]].
NhResult nh_bound(const ModelMoments& m, const SdpTolerances& tol = {});

// Two-parameter Nagaoka form (weight pre-whitened to the identity):
//   min  Tr[rho0 (M1^2 + M2^2)] + || sqrt(rho0) [M1, M2] sqrt(rho0) ||_1
//        - 2 Tr[rho_bar_1' M1 + rho_bar_2' M2] + lambda.
// Solved through an exact linear-PSD reformulation: with
// B_pm = W_pm^dag W_pm, W_pm = (M1 pm i M2) sqrt(rho0) / sqrt(2), the
// quadratic-plus-trace-norm objective equals min 2 Tr R over R >= B_plus,
// R >= B_minus, each imposed as a Schur block.  An independent route to the
// same optimum as nh_bound for d = 2.
SdpSolution nagaoka_two_param(const ModelMoments& m,
                              const SdpTolerances& tol = {});

// Bayesian Holevo-type bound: relaxes the block constraint by taking the
// rho0 expectation, leaving the d x d matrix inequality V >= Z(M) with
// Z_ij = Tr[rho0 M_i M_j], imposed through a Gram/Schur block whose columns
// are the vectorized sqrt(rho0) M_i; objective
//   lambda + tr[L Re V] + || sqrt(L) Im V sqrt(L) ||_1 - 2 L^{ij} Tr[rho_bar_j M_i].
SdpSolution holevo_bound(const ModelMoments& m, const SdpTolerances& tol = {});

}  // namespace qbb

#endif  // QBB_SDP_BOUNDS_HPP
