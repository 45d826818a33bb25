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

#ifndef QBB_HERMITIAN_HPP
#define QBB_HERMITIAN_HPP

#include <utility>
#include <vector>

#include "qbb/errors.hpp"
#include "qbb/matrix.hpp"
#include "qbb/tolerance.hpp"

namespace qbb {

// Finite-dimensional complex Hermitian operator.  Construction symmetrizes
// (A + A^dag)/2 when the asymmetry is below the hermiticity tolerance and
// rejects otherwise, so numerical drift never propagates past a constructor.
class HermitianOp {
 public:
  HermitianOp() = default;

  static HermitianOp zero(int dim) { return HermitianOp(CMat::zero(dim, dim)); }
  static HermitianOp identity(int dim) { return HermitianOp(CMat::identity(dim)); }
  static HermitianOp diag(const std::vector<double>& d) {
    CMat m(int(d.size()), int(d.size()));
    for (int i = 0; i < int(d.size()); ++i) m(i, i) = d[i];
    return HermitianOp(std::move(m));
  }

  explicit HermitianOp(CMat m,
                       const ToleranceConfig& tol = default_tolerances()) {
    if (m.rows() != m.cols()) throw InvalidOperator("operator must be square");
    if (!all_finite(m)) throw InvalidOperator("operator has non-finite entries");
    double asym = 0.0;
    for (int r = 0; r < m.rows(); ++r)
      for (int c = r; c < m.cols(); ++c)
        asym = std::max(asym, std::abs(m(r, c) - std::conj(m(c, r))));
    if (asym > ToleranceConfig::hybrid(tol.hermiticity, fro_norm(m)))
      throw InvalidOperator("operator is not Hermitian (asymmetry " +
                            std::to_string(asym) + ")");
    for (int r = 0; r < m.rows(); ++r) {
      m(r, r) = cplx{m(r, r).real(), 0.0};
      for (int c = r + 1; c < m.cols(); ++c) {
        const cplx v = 0.5 * (m(r, c) + std::conj(m(c, r)));
        m(r, c) = v;
        m(c, r) = std::conj(v);
      }
    }
    mat_ = std::move(m);
  }

  int dim() const { return mat_.rows(); }
  const CMat& mat() const { return mat_; }
  const cplx& operator()(int r, int c) const { return mat_(r, c); }

  friend HermitianOp operator+(const HermitianOp& a, const HermitianOp& b) {
    return HermitianOp::trusted(a.mat_ + b.mat_);
  }
  friend HermitianOp operator-(const HermitianOp& a, const HermitianOp& b) {
    return HermitianOp::trusted(a.mat_ - b.mat_);
  }
  friend HermitianOp operator*(double s, const HermitianOp& a) {
    CMat m = a.mat_;
    m *= cplx{s, 0.0};
    return HermitianOp::trusted(std::move(m));
  }

  // For internal construction of results that are Hermitian by algebra
  // (sums, real scalings, congruences); skips the tolerance gate but still
  // hard-symmetrizes to kill roundoff.
  static HermitianOp trusted(CMat m) {
    HermitianOp h;
    for (int r = 0; r < m.rows(); ++r) {
      m(r, r) = cplx{m(r, r).real(), 0.0};
      for (int c = r + 1; c < m.cols(); ++c) {
        const cplx v = 0.5 * (m(r, c) + std::conj(m(c, r)));
        m(r, c) = v;
        m(c, r) = std::conj(v);
      }
    }
    h.mat_ = std::move(m);
    return h;
  }

 private:
  CMat mat_;
};

// Eigensystem of a Hermitian operator: ascending real eigenvalues with the
// matching orthonormal eigenvectors as columns.
struct Spectrum {
  std::vector<double> values;
  CMat vectors;

  CMat reconstruct() const {
    const int n = int(values.size());
    CMat scaled = vectors;
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) scaled(r, c) *= values[c];
    return matmul(scaled, adjoint(vectors));
  }
};

inline double trace_real(const HermitianOp& h) { return trace(h.mat()).real(); }

}  // namespace qbb

#endif  // QBB_HERMITIAN_HPP
