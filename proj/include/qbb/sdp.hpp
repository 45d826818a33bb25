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

#ifndef QBB_SDP_HPP
#define QBB_SDP_HPP

#include <string>
#include <vector>

#include "qbb/hermitian.hpp"

namespace qbb {

struct SdpTolerances {
  double gap = 1e-7;   // relative complementarity gap
  double feas = 1e-8;  // primal/dual residual norms
  int max_iters = 200;
};

enum class SdpStatus { Optimal, MaxIters, Infeasible };

inline const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::MaxIters: return "max-iters";
    case SdpStatus::Infeasible: return "infeasible";
  }
  return "?";
}

struct SdpSolution {
  SdpStatus status = SdpStatus::MaxIters;
  double value = 0.0;       // objective at the returned (dual-feasible) point
  double dual_value = 0.0;  // certified lower bound from the primal side
  double gap = 0.0;         // complementarity <X, Z>
  int iterations = 0;
  std::vector<double> y;    // variable coordinates

  bool ok() const { return status == SdpStatus::Optimal; }
};

namespace detail {
struct SparseEntry {
  int r, c;  // upper triangle of the embedded real block (r <= c)
  double v;
};
struct CompiledBlock {
  int n = 0;  // embedded real dimension
  RMat F0;
  std::vector<std::vector<SparseEntry>> coef;  // per variable coordinate
  std::vector<int> active;                     // coordinates touching this block
};
}  // namespace detail

// LMI-form semidefinite program
//     minimize  c^T y + c0
//     s.t.      F0_b + sum_k y_k F_{b,k}  PSD         for every block b.
//
// The builder describes variables and constraint blocks as complex Hermitian
// operators; compile() embeds H -> [[Re H, -Im H], [Im H, Re H]] so the
// interior-point core runs on real symmetric blocks of doubled size.
class SdpProblem {
 public:
  // Complex Hermitian matrix variable (dim^2 real coordinates); dim = 1 gives
  // a plain real scalar.
  int herm_var(int dim);

  // Complex Hermitian constraint block of the given dimension.
  int block(int dim);

  // block += C placed at (r0, c0), plus its adjoint at (c0, r0) when off
  // the diagonal.  Diagonal placements require Hermitian C.
  void add_const(int blk, int r0, int c0, const CMat& C);

  // block += A X_var A^dag at diagonal position (r0, r0).
  void add_herm_term(int blk, int r0, const CMat& A, int var);

  // block += A X_var B at (r0, c0) plus B^dag X A^dag at (c0, r0); the two
  // rectangles must not overlap.
  void add_cross_term(int blk, int r0, int c0, const CMat& A, int var,
                      const CMat& B);

  // block += column vec_row-major(A X_var) at rows r0.., column c0, plus the
  // adjoint row.
  void add_vec_term(int blk, int r0, int c0, const CMat& A, int var);

  // block += A (i Im X_var) A^dag at diagonal position (r0, r0).  Only the
  // imaginary coordinates of the variable contribute.
  void add_imag_term(int blk, int r0, const CMat& A, int var);

  // objective += coef * Re Tr[G X_var]
  void obj_trace(int var, const CMat& G, double coef);
  void obj_const(double c) { c0_ += c; }

  int num_vars() const { return total_coords_; }
  int var_dim(int var) const { return var_dims_[var]; }

  // Reassemble a variable's Hermitian value from solution coordinates.
  HermitianOp extract(int var, const std::vector<double>& y) const;

  SdpSolution solve(const SdpTolerances& tol = {}) const;

 private:
  friend SdpSolution solve_compiled(const SdpProblem&, const SdpTolerances&);

  struct TermBase { int blk, r0, c0, var; CMat A, B; int kind; };
  std::vector<int> var_dims_;
  std::vector<int> var_offset_;  // first real coordinate of each variable
  int total_coords_ = 0;
  std::vector<int> block_dims_;
  std::vector<TermBase> terms_;
  struct ConstTerm { int blk, r0, c0; CMat C; };
  std::vector<ConstTerm> consts_;
  std::vector<double> c_;
  double c0_ = 0.0;
};

}  // namespace qbb

#endif  // QBB_SDP_HPP
