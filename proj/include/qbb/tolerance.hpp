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

#ifndef QBB_TOLERANCE_HPP
#define QBB_TOLERANCE_HPP

#include <algorithm>

namespace qbb {

// Every tolerance is applied as an absolute-relative hybrid:
// a residual r measured on data of scale s passes when
// r <= tol + tol * s.  The single record below is threaded through the
// numerical layers; defaults match the contracts of the operations.
struct ToleranceConfig {
  double hermiticity = 1e-12;   // constructor symmetrization gate
  double psd = 1e-12;           // eigenvalue floor before NotPSD
  double rank_rel = 1e-12;      // spectral cut for pseudo-inverses
  double support_leak = 1e-8;   // moment components outside support(rho0)
  double eig_recon = 1e-10;     // eigendecomposition reconstruction
  double lyapunov = 1e-10;      // anticommutator solve residual
  double sqrt_residual = 1e-9;  // sqrt(A)^2 = A residual

  static double hybrid(double tol, double scale) {
    return tol * (1.0 + scale);
  }
  bool within(double residual, double tol, double scale) const {
    return residual <= hybrid(tol, scale);
  }
};

inline const ToleranceConfig& default_tolerances() {
  static const ToleranceConfig cfg{};
  return cfg;
}

}  // namespace qbb

#endif  // QBB_TOLERANCE_HPP
