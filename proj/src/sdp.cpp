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

#include "qbb/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qbb/errors.hpp"
#include "qbb/linops.hpp"

namespace qbb {

// ---- builder ----------------------------------------------------------------

namespace {

// Coordinate layout of a Hermitian variable of dimension D:
//   [0, D)                      diagonal entries,
//   then for a < b (row major)  Re X_ab, Im X_ab.
struct Coord {
  int a, b;
  enum { Diag, Re, Im } type;
};

Coord coord_of(int dim, int k) {
  if (k < dim) return {k, k, Coord::Diag};
  int off = k - dim;
  const int pair = off / 2;
  // pair index -> (a, b), a < b, row-major
  int a = 0, left = pair;
  int rowlen = dim - 1;
  while (left >= rowlen) {
    left -= rowlen;
    ++a;
    --rowlen;
  }
  const int b = a + 1 + left;
  return {a, b, (off % 2 == 0) ? Coord::Re : Coord::Im};
}

}  // namespace

int SdpProblem::herm_var(int dim) {
  var_dims_.push_back(dim);
  var_offset_.push_back(total_coords_);
  total_coords_ += dim * dim;
  c_.resize(total_coords_, 0.0);
  return int(var_dims_.size()) - 1;
}

int SdpProblem::block(int dim) {
  block_dims_.push_back(dim);
  return int(block_dims_.size()) - 1;
}

void SdpProblem::add_const(int blk, int r0, int c0, const CMat& C) {
  consts_.push_back({blk, r0, c0, C});
}

void SdpProblem::add_herm_term(int blk, int r0, const CMat& A, int var) {
  terms_.push_back({blk, r0, r0, var, A, CMat(), 0});
}

void SdpProblem::add_cross_term(int blk, int r0, int c0, const CMat& A, int var,
                                const CMat& B) {
  // the placement and its adjoint mirror must not overlap
  if (!(r0 + A.rows() <= c0 || c0 + B.cols() <= r0))
    throw Error("add_cross_term: overlapping placement regions");
  terms_.push_back({blk, r0, c0, var, A, B, 1});
}

void SdpProblem::add_vec_term(int blk, int r0, int c0, const CMat& A, int var) {
  terms_.push_back({blk, r0, c0, var, A, CMat(), 2});
}

void SdpProblem::add_imag_term(int blk, int r0, const CMat& A, int var) {
  terms_.push_back({blk, r0, r0, var, A, CMat(), 3});
}

void SdpProblem::obj_trace(int var, const CMat& G, double coef) {
  const int dim = var_dims_[var];
  const int off = var_offset_[var];
  for (int k = 0; k < dim * dim; ++k) {
    const Coord co = coord_of(dim, k);
    double val = 0.0;
    switch (co.type) {
      case Coord::Diag: val = G(co.a, co.a).real(); break;
      case Coord::Re: val = (G(co.a, co.b) + G(co.b, co.a)).real(); break;
      case Coord::Im:
        val = (cplx{0.0, 1.0} * (G(co.b, co.a) - G(co.a, co.b))).real();
        break;
    }
    c_[off + k] += coef * val;
  }
}

HermitianOp SdpProblem::extract(int var, const std::vector<double>& y) const {
  const int dim = var_dims_[var];
  const int off = var_offset_[var];
  CMat m(dim, dim);
  for (int k = 0; k < dim * dim; ++k) {
    const Coord co = coord_of(dim, k);
    const double v = y[off + k];
    switch (co.type) {
      case Coord::Diag: m(co.a, co.a) += v; break;
      case Coord::Re:
        m(co.a, co.b) += v;
        m(co.b, co.a) += v;
        break;
      case Coord::Im:
        m(co.a, co.b) += cplx{0.0, v};
        m(co.b, co.a) += cplx{0.0, -v};
        break;
    }
  }
  return HermitianOp::trusted(std::move(m));
}

// ---- compilation to embedded real blocks -------------------------------------

namespace {

using detail::CompiledBlock;
using detail::SparseEntry;

// Hermitian sparse accumulator over the complex block: upper triangle keyed
// by (r, c) with r <= c; entries placed below the diagonal are folded in as
// their adjoints.
struct HermAccum {
  std::map<std::pair<int, int>, cplx> e;
  void add(int r, int c, cplx v) {
    if (std::abs(v.real()) + std::abs(v.imag()) == 0.0) return;
    if (r > c) {
      std::swap(r, c);
      v = std::conj(v);
    }
    e[{r, c}] += v;
  }
};

// basis matrix action: columns of A / rows of B selected by the coordinate.
// Diagonal placements (upper_only) produce a Hermitian contribution whose
// lower triangle must not be folded in a second time.
void accumulate_product(HermAccum& acc, const Coord& co, const CMat& A,
                        const CMat& B, int r0, int c0, bool upper_only) {
  const int nr = A.rows(), nc = B.cols();
  auto outer = [&](int acol, int brow, cplx scale) {
    for (int i = 0; i < nr; ++i) {
      const cplx av = A(i, acol) * scale;
      if (av == cplx{}) continue;
      for (int j = 0; j < nc; ++j) {
        if (upper_only && r0 + i > c0 + j) continue;
        const cplx t = av * B(brow, j);
        if (t != cplx{}) acc.add(r0 + i, c0 + j, t);
      }
    }
  };
  switch (co.type) {
    case Coord::Diag: outer(co.a, co.a, 1.0); break;
    case Coord::Re:
      outer(co.a, co.b, 1.0);
      outer(co.b, co.a, 1.0);
      break;
    case Coord::Im:
      outer(co.a, co.b, cplx{0.0, 1.0});
      outer(co.b, co.a, cplx{0.0, -1.0});
      break;
  }
}

// A E_k with E_k the coordinate basis matrix, for vec terms
void accumulate_vec(HermAccum& acc, const Coord& co, const CMat& A, int r0,
                    int c0, int bdim) {
  auto column = [&](int acol, int outcol, cplx scale) {
    // vec_row-major(M): entry (i, outcol) of A E lands at row i*bdim + outcol
    for (int i = 0; i < A.rows(); ++i) {
      const cplx v = A(i, acol) * scale;
      if (v != cplx{}) acc.add(r0 + i * bdim + outcol, c0, v);
    }
  };
  switch (co.type) {
    case Coord::Diag: column(co.a, co.a, 1.0); break;
    case Coord::Re:
      column(co.a, co.b, 1.0);
      column(co.b, co.a, 1.0);
      break;
    case Coord::Im:
      column(co.a, co.b, cplx{0.0, 1.0});
      column(co.b, co.a, cplx{0.0, -1.0});
      break;
  }
}

// complex Hermitian (upper) -> embedded real symmetric (upper) entries
void embed_entries(const HermAccum& acc, int n, std::vector<SparseEntry>& out) {
  for (const auto& [rc, v] : acc.e) {
    const auto [r, c] = rc;
    const double x = v.real(), y = v.imag();
    if (r == c) {
      if (x != 0.0) {
        out.push_back({r, r, x});
        out.push_back({r + n, r + n, x});
      }
    } else {
      if (x != 0.0) {
        out.push_back({r, c, x});
        out.push_back({r + n, c + n, x});
      }
      if (y != 0.0) {
        out.push_back({r, c + n, -y});
        out.push_back({c, r + n, y});
      }
    }
  }
}

struct Compiled {
  int m = 0;
  std::vector<double> c;
  double c0 = 0.0;
  std::vector<CompiledBlock> blocks;
};

}  // namespace

// Defined as a free function so the solver below only sees compiled data.
namespace {

Compiled compile(const std::vector<int>& var_dims,
                 const std::vector<int>& var_offset, int total_coords,
                 const std::vector<int>& block_dims, const auto& terms,
                 const auto& consts, const std::vector<double>& c, double c0) {
  Compiled out;
  out.m = total_coords;
  out.c = c;
  out.c0 = c0;
  out.blocks.resize(block_dims.size());

  std::vector<std::vector<HermAccum>> acc(block_dims.size());
  std::vector<HermAccum> cacc(block_dims.size());
  for (std::size_t b = 0; b < block_dims.size(); ++b)
    acc[b].resize(total_coords);

  for (const auto& t : terms) {
    const int dim = var_dims[t.var];
    const int off = var_offset[t.var];
    for (int k = 0; k < dim * dim; ++k) {
      const Coord co = coord_of(dim, k);
      if (t.kind == 0) {
        // A X A^dag at diagonal position
        accumulate_product(acc[t.blk][off + k], co, t.A, adjoint(t.A), t.r0,
                           t.r0, true);
      } else if (t.kind == 1) {
        accumulate_product(acc[t.blk][off + k], co, t.A, t.B, t.r0, t.c0,
                           false);
      } else if (t.kind == 2) {
        accumulate_vec(acc[t.blk][off + k], co, t.A, t.r0, t.c0, dim);
      } else {
        // A (i Im X) A^dag: i Im of the basis matrix is the matrix itself
        // for imaginary coordinates and zero otherwise
        if (co.type == Coord::Im)
          accumulate_product(acc[t.blk][off + k], co, t.A, adjoint(t.A), t.r0,
                             t.r0, true);
      }
    }
  }
  for (const auto& ct : consts) {
    const bool diag_placement = ct.r0 == ct.c0;
    for (int i = 0; i < ct.C.rows(); ++i)
      for (int j = 0; j < ct.C.cols(); ++j) {
        if (diag_placement && ct.r0 + i > ct.c0 + j) continue;
        if (ct.C(i, j) != cplx{})
          cacc[ct.blk].add(ct.r0 + i, ct.c0 + j, ct.C(i, j));
      }
  }

  for (std::size_t b = 0; b < block_dims.size(); ++b) {
    const int n = block_dims[b];
    CompiledBlock& cb = out.blocks[b];
    cb.n = 2 * n;
    cb.F0 = RMat::zero(2 * n, 2 * n);
    std::vector<SparseEntry> centries;
    embed_entries(cacc[b], n, centries);
    for (const auto& e : centries) {
      cb.F0(e.r, e.c) = e.v;
      cb.F0(e.c, e.r) = e.v;
    }
    cb.coef.resize(total_coords);
    for (int k = 0; k < total_coords; ++k) {
      if (acc[b][k].e.empty()) continue;
      embed_entries(acc[b][k], n, cb.coef[k]);
      cb.active.push_back(k);
    }
  }
  return out;
}

// ---- dense helpers ------------------------------------------------------------

bool chol_lower(RMat& A) {
  const auto& K = kern::active();
  const int n = A.rows();
  constexpr int nb = 48;
  for (int k = 0; k < n; k += nb) {
    const int kb = std::min(nb, n - k);
    // unblocked factor of the diagonal block
    for (int j = k; j < k + kb; ++j) {
      double d = A(j, j) - K.dot(A.row(j) + k, A.row(j) + k, j - k);
      if (d <= 0.0 || !std::isfinite(d)) return false;
      d = std::sqrt(d);
      A(j, j) = d;
      const double inv = 1.0 / d;
      for (int i = j + 1; i < k + kb; ++i)
        A(i, j) = (A(i, j) - K.dot(A.row(i) + k, A.row(j) + k, j - k)) * inv;
    }
    if (k + kb >= n) break;
    // panel: rows below, columns [k, k+kb)
    for (int r = k + kb; r < n; ++r) {
      double* br = A.row(r) + k;
      for (int j = 0; j < kb; ++j) {
        const double* lj = A.row(k + j) + k;
        br[j] = (br[j] - K.dot(br, lj, j)) / lj[j];
      }
    }
    // trailing update in row chunks: A22 -= B B^T (lower part)
    constexpr int rc = 64;
    for (int r0 = k + kb; r0 < n; r0 += rc) {
      const int rows = std::min(rc, n - r0);
      const int width = (r0 + rows) - (k + kb);
      K.gemm_nt(rows, width, kb, -1.0, A.row(r0) + k, A.cols(),
                A.row(k + kb) + k, A.cols(), A.row(r0) + (k + kb), A.cols());
    }
  }
  // zero strict upper triangle
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c) A(r, c) = 0.0;
  return true;
}

// y <- L^{-1} y (forward) and y <- L^{-T} y (backward)
void solve_lower(const RMat& L, std::vector<double>& y) {
  const auto& K = kern::active();
  const int n = L.rows();
  for (int i = 0; i < n; ++i)
    y[i] = (y[i] - K.dot(L.row(i), y.data(), i)) / L(i, i);
}
void solve_lower_t(const RMat& L, std::vector<double>& y) {
  const int n = L.rows();
  for (int i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (int j = i + 1; j < n; ++j) s -= L(j, i) * y[j];
    y[i] = s / L(i, i);
  }
}

// inverse of a lower-triangular matrix
RMat inv_lower(const RMat& L) {
  const int n = L.rows();
  RMat M = RMat::zero(n, n);
  for (int c = 0; c < n; ++c) {
    M(c, c) = 1.0 / L(c, c);
    for (int r = c + 1; r < n; ++r) {
      double s = 0.0;
      for (int j = c; j < r; ++j) s += L(r, j) * M(j, c);
      M(r, c) = -s / L(r, r);
    }
  }
  return M;
}

void symmetrize(RMat& A) {
  for (int r = 0; r < A.rows(); ++r)
    for (int c = r + 1; c < A.cols(); ++c) {
      const double v = 0.5 * (A(r, c) + A(c, r));
      A(r, c) = v;
      A(c, r) = v;
    }
}

double sym_sparse_dot(const std::vector<SparseEntry>& es, const RMat& M) {
  double s = 0.0;
  for (const auto& e : es) s += e.v * (e.r == e.c ? M(e.r, e.r) : 2.0 * M(e.r, e.c));
  return s;
}

void sparse_add(RMat& M, const std::vector<SparseEntry>& es, double scale) {
  for (const auto& e : es) {
    M(e.r, e.c) += scale * e.v;
    if (e.r != e.c) M(e.c, e.r) += scale * e.v;
  }
}

// ---- NT interior point core ----------------------------------------------------

struct BlockState {
  RMat X, Z;          // iterates
  RMat R, Rinv, W;    // NT scaling factors, W = R R^T
  std::vector<double> lam;  // scaled spectrum (diagonal lambda)
  RMat Rd;            // dual residual F0 + sum y F - Z
  RMat dX, dZ;        // current direction
  RMat dXt, dZt;      // scaled directions
};

// largest step in [0, 1] keeping lam + alpha * D^{-1/2} S D^{-1/2} PSD
double max_step(const std::vector<double>& lam, RMat S) {
  const int n = S.rows();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      S(r, c) /= std::sqrt(lam[r] * lam[c]);
  symmetrize(S);
  RMat V;
  std::vector<double> w;
  eig_sym_inplace(S, V, w);
  const double mn = w.empty() ? 0.0 : w.front();
  if (mn >= -1e-13) return 1.0;
  return std::min(1.0, -1.0 / mn);
}

SdpSolution run_ipm(const Compiled& P, const SdpTolerances& tol) {
  const auto& K = kern::active();
  const int m = P.m;
  const int nblocks = int(P.blocks.size());

  double nu = 0.0;
  double normF0 = 0.0, maxFk = 0.0;
  std::vector<double> normA(m, 0.0);
  for (const auto& cb : P.blocks) {
    nu += cb.n;
    normF0 = std::max(normF0, fro_norm(cb.F0));
    for (int k : cb.active) {
      double s = 0.0;
      for (const auto& e : cb.coef[k]) s += e.v * e.v * (e.r == e.c ? 1.0 : 2.0);
      normA[k] += s;
    }
  }
  double normc = 0.0;
  for (int k = 0; k < m; ++k) {
    normA[k] = std::sqrt(normA[k]);
    maxFk = std::max(maxFk, normA[k]);
    normc = std::max(normc, std::abs(P.c[k]));
  }

  double nbig = 0.0;
  for (const auto& cb : P.blocks) nbig = std::max(nbig, double(cb.n));

  // identity-multiple interior start
  double zeta_p = std::max({10.0, std::sqrt(nbig), 1.0 + normc});
  double zeta_d = std::max({10.0, std::sqrt(nbig), normF0, maxFk});
  zeta_p = std::min(zeta_p, 1e6);
  zeta_d = std::min(zeta_d, 1e6);

  std::vector<BlockState> B(nblocks);
  for (int b = 0; b < nblocks; ++b) {
    const int n = P.blocks[b].n;
    B[b].X = RMat::zero(n, n);
    B[b].Z = RMat::zero(n, n);
    for (int i = 0; i < n; ++i) {
      B[b].X(i, i) = zeta_p;
      B[b].Z(i, i) = zeta_d;
    }
  }
  std::vector<double> y(m, 0.0);

  SdpSolution best;
  best.y = y;
  best.status = SdpStatus::MaxIters;

  RMat H(m, m), Hfac(m, m);
  std::vector<double> rhs(m), dy(m);
  int consecutive_small = 0;

  for (int it = 0; it < tol.max_iters; ++it) {
    // residuals and objective values
    double gap = 0.0, pobj = 0.0;
    for (int b = 0; b < nblocks; ++b) {
      const auto& cb = P.blocks[b];
      const std::size_t nn = std::size_t(cb.n) * cb.n;
      gap += K.dot(B[b].X.data(), B[b].Z.data(), nn);
      pobj += K.dot(cb.F0.data(), B[b].X.data(), nn);
    }
    double dobj = -P.c0;
    for (int k = 0; k < m; ++k) dobj -= P.c[k] * y[k];  // = b^T y - c0*(-1)
    // our LMI objective value at y:
    const double obj_y = -dobj;  // c^T y + c0

    std::vector<double> rp(m);
    for (int k = 0; k < m; ++k) rp[k] = -P.c[k];
    double dinf = 0.0;
    for (int b = 0; b < nblocks; ++b) {
      const auto& cb = P.blocks[b];
      B[b].Rd = cb.F0;
      B[b].Rd -= B[b].Z;
      for (int k : cb.active) {
        sparse_add(B[b].Rd, cb.coef[k], y[k]);
        rp[k] += sym_sparse_dot(cb.coef[k], B[b].X);
      }
      dinf = std::max(dinf, fro_norm(B[b].Rd));
    }
    double pinf = 0.0;
    for (int k = 0; k < m; ++k) pinf += rp[k] * rp[k];
    pinf = std::sqrt(pinf);

    const double rel_gap = gap / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double rel_p = pinf / (1.0 + normc);
    const double rel_d = dinf / (1.0 + normF0);

    best.value = obj_y;
    best.dual_value = P.c0 - pobj;
    best.gap = gap;
    best.iterations = it;
    best.y = y;

    if (rel_gap <= tol.gap && rel_p <= tol.feas && rel_d <= tol.feas) {
      best.status = SdpStatus::Optimal;
      return best;
    }
    // crude infeasibility flag: complementarity collapsed but residuals stuck
    if (gap / nu < 1e-14 && (rel_p > 1e3 * tol.feas || rel_d > 1e3 * tol.feas)) {
      best.status = SdpStatus::Infeasible;
      return best;
    }

    const double mu = gap / nu;

    // NT scaling per block
    bool scale_ok = true;
    for (int b = 0; b < nblocks; ++b) {
      const int n = P.blocks[b].n;
      RMat Lx = B[b].X;
      RMat Lz = B[b].Z;
      if (!chol_lower(Lx) || !chol_lower(Lz)) {
        scale_ok = false;
        break;
      }
      // M = Lx^T Z Lx, eig -> V, sigma^2
      RMat ZL(n, n);
      K.gemm_nn(n, n, n, 1.0, B[b].Z.data(), n, Lx.data(), n, ZL.data(), n);
      RMat M(n, n);
      // Lx^T * ZL
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          double s = 0.0;
          for (int p = r; p < n; ++p) s += Lx(p, r) * ZL(p, c);
          M(r, c) = s;
        }
      symmetrize(M);
      RMat V;
      std::vector<double> s2;
      eig_sym_inplace(M, V, s2);
      std::vector<double>& lam = B[b].lam;
      lam.resize(n);
      for (int i = 0; i < n; ++i) lam[i] = std::sqrt(std::max(s2[i], 1e-300));
      // R = Lx V diag(lam^{-1/2}), Rinv = diag(lam^{1/2}) V^T Lx^{-1}
      RMat LV(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          double s = 0.0;
          for (int p = 0; p <= r; ++p) s += Lx(r, p) * V(p, c);
          LV(r, c) = s;
        }
      B[b].R = LV;
      for (int c = 0; c < n; ++c) {
        const double f = 1.0 / std::sqrt(lam[c]);
        for (int r = 0; r < n; ++r) B[b].R(r, c) *= f;
      }
      const RMat Lxi = inv_lower(Lx);
      RMat VtLxi(n, n);
      K.gemm_nn(n, n, n, 1.0, transpose(V).data(), n, Lxi.data(), n,
                VtLxi.data(), n);
      B[b].Rinv = VtLxi;
      for (int r = 0; r < n; ++r) {
        const double f = std::sqrt(lam[r]);
        for (int c = 0; c < n; ++c) B[b].Rinv(r, c) *= f;
      }
      B[b].W = matmul_nt(B[b].R, B[b].R);
      symmetrize(B[b].W);
    }
    if (!scale_ok) {
      best.status = SdpStatus::MaxIters;
      return best;
    }

    // Schur complement H_kl = sum_b <F_k, W F_l W>
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) H(r, c) = 0.0;
    for (int b = 0; b < nblocks; ++b) {
      const auto& cb = P.blocks[b];
      const int n = cb.n;
      RMat T(n, n);
      for (int l : cb.active) {
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) T(r, c) = 0.0;
        for (const auto& e : cb.coef[l]) {
          const double* wr = B[b].W.row(e.r);
          const double* wc = B[b].W.row(e.c);
          if (e.r == e.c) {
            for (int i = 0; i < n; ++i)
              K.axpy(e.v * wr[i], wc, T.row(i), n);
          } else {
            for (int i = 0; i < n; ++i) {
              K.axpy(e.v * wr[i], wc, T.row(i), n);
              K.axpy(e.v * wc[i], wr, T.row(i), n);
            }
          }
        }
        for (int k : cb.active) {
          if (k < l) continue;
          H(k, l) += sym_sparse_dot(cb.coef[k], T);
        }
      }
    }
    for (int r = 0; r < m; ++r)
      for (int c = r + 1; c < m; ++c) H(r, c) = H(c, r);

    // factor H with escalating jitter if needed
    double jitter = 0.0;
    for (int attempt = 0; attempt < 6; ++attempt) {
      Hfac = H;
      if (jitter > 0.0)
        for (int k = 0; k < m; ++k) Hfac(k, k) += jitter * (1.0 + H(k, k));
      if (chol_lower(Hfac)) break;
      jitter = jitter == 0.0 ? 1e-14 : jitter * 100.0;
      if (attempt == 5) {
        best.status = SdpStatus::MaxIters;
        return best;
      }
    }

    // helper: given scaled-space U, assemble rhs and solve for (dy, dZ, dX)
    std::vector<RMat> WRdW(nblocks), RURt(nblocks);
    for (int b = 0; b < nblocks; ++b) {
      const int n = P.blocks[b].n;
      RMat tmp = matmul(B[b].W, B[b].Rd);
      WRdW[b] = matmul(tmp, B[b].W);
      symmetrize(WRdW[b]);
      (void)n;
    }

    auto solve_direction = [&](const std::vector<RMat>* U, bool predictor) {
      for (int k = 0; k < m; ++k) rhs[k] = rp[k];
      for (int b = 0; b < nblocks; ++b) {
        const auto& cb = P.blocks[b];
        if (predictor) {
          // R U R^T = -X exactly
          for (int k : cb.active)
            rhs[k] += -sym_sparse_dot(cb.coef[k], B[b].X) -
                      sym_sparse_dot(cb.coef[k], WRdW[b]);
        } else {
          RMat RU = matmul((*U)[b], transpose(B[b].R));
          RURt[b] = matmul(B[b].R, RU);
          symmetrize(RURt[b]);
          for (int k : cb.active)
            rhs[k] += sym_sparse_dot(cb.coef[k], RURt[b]) -
                      sym_sparse_dot(cb.coef[k], WRdW[b]);
        }
      }
      dy = rhs;
      solve_lower(Hfac, dy);
      solve_lower_t(Hfac, dy);
      for (int b = 0; b < nblocks; ++b) {
        const auto& cb = P.blocks[b];
        const int n = cb.n;
        B[b].dZ = B[b].Rd;
        for (int k : cb.active) sparse_add(B[b].dZ, cb.coef[k], dy[k]);
        RMat WdZW = matmul(matmul(B[b].W, B[b].dZ), B[b].W);
        if (predictor) {
          B[b].dX = RMat::zero(n, n);
          B[b].dX -= B[b].X;
        } else {
          B[b].dX = RURt[b];
        }
        B[b].dX -= WdZW;
        symmetrize(B[b].dX);
        // scaled directions
        B[b].dXt = matmul(matmul(B[b].Rinv, B[b].dX), transpose(B[b].Rinv));
        symmetrize(B[b].dXt);
        B[b].dZt = matmul(matmul(transpose(B[b].R), B[b].dZ), B[b].R);
        symmetrize(B[b].dZt);
      }
    };

    auto step_lengths = [&](double& ap, double& ad) {
      ap = 1.0;
      ad = 1.0;
      for (int b = 0; b < nblocks; ++b) {
        ap = std::min(ap, max_step(B[b].lam, B[b].dXt));
        ad = std::min(ad, max_step(B[b].lam, B[b].dZt));
      }
    };

    // predictor
    solve_direction(nullptr, true);
    double ap, ad;
    step_lengths(ap, ad);

    double gap_aff = 0.0;
    for (int b = 0; b < nblocks; ++b) {
      const auto& cb = P.blocks[b];
      const std::size_t nn = std::size_t(cb.n) * cb.n;
      RMat Xa = B[b].X;
      RMat Za = B[b].Z;
      K.axpy(ap, B[b].dX.data(), Xa.data(), nn);
      K.axpy(ad, B[b].dZ.data(), Za.data(), nn);
      gap_aff += K.dot(Xa.data(), Za.data(), nn);
    }
    double sigma = std::pow(std::max(gap_aff, 0.0) / gap, 3.0);
    sigma = std::clamp(sigma, 1e-6, 0.999);

    // corrector: lam o U = sigma*mu*I - Lam^2 - sym(dXt dZt)
    std::vector<RMat> U(nblocks);
    for (int b = 0; b < nblocks; ++b) {
      const int n = P.blocks[b].n;
      RMat D = matmul(B[b].dXt, B[b].dZt);
      symmetrize(D);  // (dXt dZt + dZt dXt)/2
      D *= -1.0;
      for (int i = 0; i < n; ++i)
        D(i, i) += sigma * mu - B[b].lam[i] * B[b].lam[i];
      U[b] = RMat(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          U[b](r, c) = 2.0 * D(r, c) / (B[b].lam[r] + B[b].lam[c]);
    }
    solve_direction(&U, false);
    step_lengths(ap, ad);

    const double tau = 0.98;
    ap = std::min(1.0, tau * ap);
    ad = std::min(1.0, tau * ad);

    for (int b = 0; b < nblocks; ++b) {
      const auto& cb = P.blocks[b];
      const std::size_t nn = std::size_t(cb.n) * cb.n;
      K.axpy(ap, B[b].dX.data(), B[b].X.data(), nn);
      K.axpy(ad, B[b].dZ.data(), B[b].Z.data(), nn);
    }
    for (int k = 0; k < m; ++k) y[k] += ad * dy[k];

    if (ap < 1e-4 && ad < 1e-4) {
      if (++consecutive_small >= 3) {
        best.status = SdpStatus::MaxIters;
        best.y = y;
        return best;
      }
    } else {
      consecutive_small = 0;
    }
  }

  return best;
}

}  // namespace

SdpSolution SdpProblem::solve(const SdpTolerances& tol) const {
  Compiled compiled = compile(var_dims_, var_offset_, total_coords_,
                              block_dims_, terms_, consts_, c_, c0_);
  return run_ipm(compiled, tol);
}

}  // namespace qbb
