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

#include "qbb/linops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbb {
namespace {

inline double abs2(double x) { return x * x; }
inline double abs2(cplx x) { return std::norm(x); }

// Cyclic Jacobi for Hermitian (or real symmetric) matrices.  Each rotation
// zeroes A(p,q) exactly; off-diagonal mass decays quadratically across
// sweeps.  Jacobi is slower than tridiagonalization but has excellent
// relative accuracy, which the bound hierarchy checks lean on.
template <typename T>
void jacobi_eig(Mat<T>& A, Mat<T>& V, std::vector<double>& w) {
  const int n = A.rows();
  V = Mat<T>::identity(n);
  w.assign(n, 0.0);
  if (n == 0) return;

  const double normf = fro_norm(A);
  if (normf > 0.0) {
    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      double off2 = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) off2 += abs2(A(p, q));
      if (std::sqrt(off2) <= 1e-15 * normf) break;

      for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const double r = std::abs(A(p, q));
          if (r <= 1e-18 * normf) continue;

          // unit phase of A(p,q); +-1 in the real instantiation
          T e;
          if constexpr (std::is_same_v<T, double>)
            e = A(p, q) >= 0 ? 1.0 : -1.0;
          else
            e = A(p, q) / r;

          const double app = std::real(A(p, p));
          const double aqq = std::real(A(q, q));
          const double tau = (aqq - app) / (2.0 * r);
          const double t =
              (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
          const double c = 1.0 / std::hypot(1.0, t);
          const double s = t * c;
          const T ec = [&] {
            if constexpr (std::is_same_v<T, double>) return e;
            else return std::conj(e);
          }();

          // rows p,q:  A <- G^dag A
          for (int j = 0; j < n; ++j) {
            const T apj = A(p, j), aqj = A(q, j);
            A(p, j) = c * apj - s * e * aqj;
            A(q, j) = s * apj + c * e * aqj;
          }
          // cols p,q:  A <- A G,  V <- V G
          for (int i = 0; i < n; ++i) {
            const T aip = A(i, p), aiq = A(i, q);
            A(i, p) = c * aip - s * ec * aiq;
            A(i, q) = s * aip + c * ec * aiq;
            const T vip = V(i, p), viq = V(i, q);
            V(i, p) = c * vip - s * ec * viq;
            V(i, q) = s * vip + c * ec * viq;
          }
          A(p, q) = T{};
          A(q, p) = T{};
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) w[i] = std::real(A(i, i));

  // sort ascending, permute eigenvector columns to match
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return w[a] < w[b]; });
  std::vector<double> ws(n);
  Mat<T> Vs(n, n);
  for (int c = 0; c < n; ++c) {
    ws[c] = w[idx[c]];
    for (int r = 0; r < n; ++r) Vs(r, c) = V(r, idx[c]);
  }
  w = std::move(ws);
  V = std::move(Vs);
}

struct PsdSpectrum {
  std::vector<double> w;  // ascending, negatives clamped to zero
  CMat V;
  double wmax;
};

PsdSpectrum psd_spectrum(const HermitianOp& A, const ToleranceConfig& tol,
                         const char* who) {
  CMat work = A.mat();
  PsdSpectrum out;
  jacobi_eig(work, out.V, out.w);
  out.wmax = out.w.empty() ? 0.0 : out.w.back();
  const double floor = -ToleranceConfig::hybrid(tol.psd, std::abs(out.wmax));
  for (double& v : out.w) {
    if (v < floor)
      throw NotPSD(std::string(who) + ": eigenvalue " + std::to_string(v) +
                   " below PSD tolerance");
    if (v < 0.0) v = 0.0;
  }
  return out;
}

CMat rebuild(const CMat& V, const std::vector<double>& f) {
  const int n = V.rows();
  CMat scaled = V;
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) scaled(r, c) *= f[c];
  return matmul(scaled, adjoint(V));
}

}  // namespace

void eig_sym_inplace(RMat& A, RMat& V, std::vector<double>& w) {
  jacobi_eig(A, V, w);
}

void eig_herm_inplace(CMat& A, CMat& V, std::vector<double>& w) {
  jacobi_eig(A, V, w);
}

Spectrum eig_hermitian(const HermitianOp& H, const ToleranceConfig&) {
  CMat work = H.mat();
  Spectrum s;
  jacobi_eig(work, s.vectors, s.values);
  return s;
}

HermitianOp lyapunov_solve(const HermitianOp& rho, const HermitianOp& B,
                           const ToleranceConfig& tol) {
  if (rho.dim() != B.dim())
    throw InvalidOperator("lyapunov_solve: dimension mismatch");
  const PsdSpectrum sp = psd_spectrum(rho, tol, "lyapunov_solve");
  const int n = rho.dim();
  const double cut = tol.rank_rel * std::max(sp.wmax, 0.0);

  // B in rho's eigenbasis
  CMat Bt = matmul(adjoint(sp.V), matmul(B.mat(), sp.V));
  const double bnorm = fro_norm(B.mat());
  const double leak_tol = ToleranceConfig::hybrid(tol.support_leak, bnorm);

  CMat Xt(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double denom = sp.w[j] + sp.w[k];
      if (sp.w[j] <= cut || sp.w[k] <= cut) {
        if (std::abs(Bt(j, k)) > leak_tol)
          throw UnsupportedMoment(
              "lyapunov_solve: moment has components outside support(rho)");
        Xt(j, k) = 0.0;
      } else {
        Xt(j, k) = 2.0 * Bt(j, k) / denom;
      }
    }
  }
  return HermitianOp::trusted(matmul(sp.V, matmul(Xt, adjoint(sp.V))));
}

double trace_norm(const HermitianOp& A, const ToleranceConfig&) {
  CMat work = A.mat();
  CMat V;
  std::vector<double> w;
  jacobi_eig(work, V, w);
  double sum = 0.0;
  for (double v : w) sum += std::abs(v);
  return sum;
}

HermitianOp sqrt_psd(const HermitianOp& A, const ToleranceConfig& tol) {
  PsdSpectrum sp = psd_spectrum(A, tol, "sqrt_psd");
  std::vector<double> f(sp.w.size());
  for (std::size_t i = 0; i < sp.w.size(); ++i) f[i] = std::sqrt(sp.w[i]);
  return HermitianOp::trusted(rebuild(sp.V, f));
}

HermitianOp inv_sqrt_psd(const HermitianOp& A, const ToleranceConfig& tol) {
  PsdSpectrum sp = psd_spectrum(A, tol, "inv_sqrt_psd");
  const double cut = tol.rank_rel * std::max(sp.wmax, 0.0);
  std::vector<double> f(sp.w.size());
  for (std::size_t i = 0; i < sp.w.size(); ++i)
    f[i] = sp.w[i] > cut ? 1.0 / std::sqrt(sp.w[i]) : 0.0;
  return HermitianOp::trusted(rebuild(sp.V, f));
}

HermitianOp pinv_psd(const HermitianOp& A, const ToleranceConfig& tol) {
  PsdSpectrum sp = psd_spectrum(A, tol, "pinv_psd");
  const double cut = tol.rank_rel * std::max(sp.wmax, 0.0);
  std::vector<double> f(sp.w.size());
  for (std::size_t i = 0; i < sp.w.size(); ++i)
    f[i] = sp.w[i] > cut ? 1.0 / sp.w[i] : 0.0;
  return HermitianOp::trusted(rebuild(sp.V, f));
}

double min_eigval(const HermitianOp& A) {
  CMat work = A.mat();
  CMat V;
  std::vector<double> w;
  jacobi_eig(work, V, w);
  return w.empty() ? 0.0 : w.front();
}

CMat support_basis(const HermitianOp& rho, const ToleranceConfig& tol) {
  PsdSpectrum sp = psd_spectrum(rho, tol, "support_basis");
  const double cut = tol.rank_rel * std::max(sp.wmax, 0.0);
  int r = 0;
  for (double v : sp.w)
    if (v > cut) ++r;
  const int n = rho.dim();
  CMat P(n, r);
  int c0 = 0;
  for (int c = 0; c < n; ++c) {
    if (sp.w[c] <= cut) continue;
    for (int row = 0; row < n; ++row) P(row, c0) = sp.V(row, c);
    ++c0;
  }
  return P;
}

HermitianOp restrict_to(const HermitianOp& A, const CMat& V) {
  return HermitianOp::trusted(matmul(adjoint(V), matmul(A.mat(), V)));
}

HermitianOp embed_from(const HermitianOp& B, const CMat& V) {
  return HermitianOp::trusted(matmul(V, matmul(B.mat(), adjoint(V))));
}

}  // namespace qbb
