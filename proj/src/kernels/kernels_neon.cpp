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

#include "qbb/kernels.hpp"

#if defined(__aarch64__) && !defined(QBB_DISABLE_NEON)

#include <arm_neon.h>

namespace qbb::kern {
namespace {

double n_dot(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void n_axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t av = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

double n_sumsq(const double* x, std::size_t n) { return n_dot(x, x, n); }

void n_gemm_nn(std::size_t m, std::size_t n, std::size_t k, double alpha,
               const double* A, std::size_t lda, const double* B,
               std::size_t ldb, double* C, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = C + i * ldc;
    const double* ai = A + i * lda;
    for (std::size_t p = 0; p < k; ++p) {
      const double a = alpha * ai[p];
      if (a == 0.0) continue;
      n_axpy(a, B + p * ldb, ci, n);
    }
  }
}

void n_gemm_nt(std::size_t m, std::size_t n, std::size_t k, double alpha,
               const double* A, std::size_t lda, const double* B,
               std::size_t ldb, double* C, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = A + i * lda;
    double* ci = C + i * ldc;
    for (std::size_t j = 0; j < n; ++j)
      ci[j] += alpha * n_dot(ai, B + j * ldb, k);
  }
}

cplx n_zdotc(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  double rr = 0.0, ii = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    const double yr = yd[2 * i], yi = yd[2 * i + 1];
    rr += xr * yr + xi * yi;
    ii += xr * yi - xi * yr;
  }
  return {rr, ii};
}

void n_zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  // One complex element per 128-bit lane: (re,im) with fused rotate.
  const float64x2_t ar = vdupq_n_f64(a.real());
  const double aim = a.imag();
  const float64x2_t ai = {-aim, aim};
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xd + 2 * i);
    const float64x2_t xs = vextq_f64(xv, xv, 1);  // (im, re)
    float64x2_t yv = vld1q_f64(yd + 2 * i);
    yv = vfmaq_f64(yv, ar, xv);
    yv = vfmaq_f64(yv, ai, xs);
    vst1q_f64(yd + 2 * i, yv);
  }
}

void n_zgemm_nn(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
                const cplx* A, std::size_t lda, const cplx* B, std::size_t ldb,
                cplx* C, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* ci = C + i * ldc;
    const cplx* ai = A + i * lda;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx a = alpha * ai[p];
      if (a == cplx{0.0, 0.0}) continue;
      n_zaxpy(a, B + p * ldb, ci, n);
    }
  }
}

}  // namespace

const Ops* neon_ops() {
  static const Ops table = {
      "neon",   n_dot,   n_axpy,  n_sumsq,  n_gemm_nn,
      n_gemm_nt, n_zdotc, n_zaxpy, n_zgemm_nn,
  };
  return &table;
}

}  // namespace qbb::kern

#else

namespace qbb::kern {
const Ops* neon_ops() { return nullptr; }
}  // namespace qbb::kern

#endif  // aarch64 && !QBB_DISABLE_NEON
