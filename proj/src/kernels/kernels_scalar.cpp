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

namespace qbb::kern {
namespace {

double s_dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void s_axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double s_sumsq(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void s_gemm_nn(std::size_t m, std::size_t n, std::size_t k, double alpha,
               const double* A, std::size_t lda, const double* B,
               std::size_t ldb, double* C, std::size_t ldc) {
  // axpy-style update: C[i,:] += (alpha*A[i,p]) * B[p,:]
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = C + i * ldc;
    const double* ai = A + i * lda;
    for (std::size_t p = 0; p < k; ++p) {
      const double a = alpha * ai[p];
      if (a == 0.0) continue;
      const double* bp = B + p * ldb;
      for (std::size_t j = 0; j < n; ++j) ci[j] += a * bp[j];
    }
  }
}

void s_gemm_nt(std::size_t m, std::size_t n, std::size_t k, double alpha,
               const double* A, std::size_t lda, const double* B,
               std::size_t ldb, double* C, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = A + i * lda;
    double* ci = C + i * ldc;
    for (std::size_t j = 0; j < n; ++j) {
      const double* bj = B + j * ldb;
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += ai[p] * bj[p];
      ci[j] += alpha * acc;
    }
  }
}

cplx s_zdotc(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void s_zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  double* yd = reinterpret_cast<double*>(y);
  const double* xd = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    yd[2 * i] += ar * xr - ai * xi;
    yd[2 * i + 1] += ar * xi + ai * xr;
  }
}

void s_zgemm_nn(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
                const cplx* A, std::size_t lda, const cplx* B, std::size_t ldb,
                cplx* C, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* ci = C + i * ldc;
    const cplx* ai = A + i * lda;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx a = alpha * ai[p];
      if (a == cplx{0.0, 0.0}) continue;
      const cplx* bp = B + p * ldb;
      const double ar = a.real(), aim = a.imag();
      double* cd = reinterpret_cast<double*>(ci);
      const double* bd = reinterpret_cast<const double*>(bp);
      for (std::size_t j = 0; j < n; ++j) {
        const double br = bd[2 * j], bi = bd[2 * j + 1];
        cd[2 * j] += ar * br - aim * bi;
        cd[2 * j + 1] += ar * bi + aim * br;
      }
    }
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table = {
      "scalar", s_dot,   s_axpy,  s_sumsq,  s_gemm_nn,
      s_gemm_nt, s_zdotc, s_zaxpy, s_zgemm_nn,
  };
  return table;
}

}  // namespace qbb::kern
