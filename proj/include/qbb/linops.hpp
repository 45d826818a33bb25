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

#ifndef QBB_LINOPS_HPP
#define QBB_LINOPS_HPP

#include <vector>

#include "qbb/hermitian.hpp"

namespace qbb {

// Dense Hermitian eigendecomposition (cyclic Jacobi).  Ascending values,
// orthonormal vectors, reconstruction error <= 1e-10 * ||H||_F.
Spectrum eig_hermitian(const HermitianOp& H,
                       const ToleranceConfig& tol = default_tolerances());

// Raw symmetric/Hermitian Jacobi eigensolvers on plain matrices; the real
// overload is what the SDP solver runs on embedded blocks.
void eig_sym_inplace(RMat& A, RMat& V, std::vector<double>& w);
void eig_herm_inplace(CMat& A, CMat& V, std::vector<double>& w);

// Solve (X rho + rho X)/2 = B for Hermitian X on the support of rho.
// In rho's eigenbasis X_{jk} = 2 B_{jk} / (p_j + p_k); components of B
// outside the support beyond tolerance signal an invalid model.
HermitianOp lyapunov_solve(const HermitianOp& rho, const HermitianOp& B,
                           const ToleranceConfig& tol = default_tolerances());

// Sum of absolute eigenvalues.
double trace_norm(const HermitianOp& A,
                  const ToleranceConfig& tol = default_tolerances());

HermitianOp sqrt_psd(const HermitianOp& A,
                     const ToleranceConfig& tol = default_tolerances());

// Pseudo-inverse square root on the retained support; eigenvalues below
// rank_rel * max eigenvalue are treated as zero.
HermitianOp inv_sqrt_psd(const HermitianOp& A,
                         const ToleranceConfig& tol = default_tolerances());

// Pseudo-inverse on the support.
HermitianOp pinv_psd(const HermitianOp& A,
                     const ToleranceConfig& tol = default_tolerances());

double min_eigval(const HermitianOp& A);

// Orthonormal basis (columns) of the support of a PSD operator.
CMat support_basis(const HermitianOp& rho,
                   const ToleranceConfig& tol = default_tolerances());

// V^dag A V for a dim x r isometry V: restriction of A to the subspace.
HermitianOp restrict_to(const HermitianOp& A, const CMat& V);

// V B V^dag: embed an r x r operator back into the full space.
HermitianOp embed_from(const HermitianOp& B, const CMat& V);

}  // namespace qbb

#endif  // QBB_LINOPS_HPP
