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

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace qbb::kern {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double a_dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] * y[i];
  return hsum(_mm256_add_pd(acc0, acc1)) + tail;
}

void a_axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double a_sumsq(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] * x[i];
  return hsum(acc) + tail;
}

void a_gemm_nn(std::size_t m, std::size_t n, std::size_t k, double alpha,
               const double* A, std::size_t lda, const double* B,
               std::size_t ldb, double* C, std::size_t ldc) {
  // Rank-1 row updates with two broadcast lanes of A per pass.
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = C + i * ldc;
    const double* ai = A + i * lda;
    std::size_t p = 0;
    for (; p + 2 <= k; p += 2) {
      const __m256d a0 = _mm256_set1_pd(alpha * ai[p]);
      const __m256d a1 = _mm256_set1_pd(alpha * ai[p + 1]);
      const double* b0 = B + p * ldb;
      const double* b1 = B + (p + 1) * ldb;
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        __m256d cv = _mm256_loadu_pd(ci + j);
        cv = _mm256_fmadd_pd(a0, _mm256_loadu_pd(b0 + j), cv);
        cv = _mm256_fmadd_pd(a1, _mm256_loadu_pd(b1 + j), cv);
        _mm256_storeu_pd(ci + j, cv);
      }
      for (; j < n; ++j)
        ci[j] += alpha * (ai[p] * b0[j] + ai[p + 1] * b1[j]);
    }
    for (; p < k; ++p) {
      const double a = alpha * ai[p];
      const double* bp = B + p * ldb;
      const __m256d av = _mm256_set1_pd(a);
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        __m256d cv = _mm256_loadu_pd(ci + j);
        cv = _mm256_fmadd_pd(av, _mm256_loadu_pd(bp + j), cv);
        _mm256_storeu_pd(ci + j, cv);
      }
      for (; j < n; ++j) ci[j] += a * bp[j];
    }
  }
}

void a_gemm_nt(std::size_t m, std::size_t n, std::size_t k, double alpha,
               const double* A, std::size_t lda, const double* B,
               std::size_t ldb, double* C, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = A + i * lda;
    double* ci = C + i * ldc;
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      const double* b0 = B + j * ldb;
      const double* b1 = B + (j + 1) * ldb;
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      std::size_t p = 0;
      for (; p + 4 <= k; p += 4) {
        const __m256d av = _mm256_loadu_pd(ai + p);
        acc0 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b0 + p), acc0);
        acc1 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b1 + p), acc1);
      }
      double t0 = hsum(acc0), t1 = hsum(acc1);
      for (; p < k; ++p) {
        t0 += ai[p] * b0[p];
        t1 += ai[p] * b1[p];
      }
      ci[j] += alpha * t0;
      ci[j + 1] += alpha * t1;
    }
    for (; j < n; ++j) ci[j] += alpha * a_dot(ai, B + j * ldb, k);
  }
}

cplx a_zdotc(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);  // xr0 xi0 xr1 xi1
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d ys = _mm256_permute_pd(yv, 0b0101);  // yi0 yr0 yi1 yr1
    re = _mm256_fmadd_pd(xv, yv, re);   // xr*yr + xi*yi per pair
    im = _mm256_fmadd_pd(xv, ys, im);   // xr*yi + xi*yr, need xr*yi - xi*yr
  }
  // re lanes hold xr*yr (even) and xi*yi (odd): both add.
  // im lanes hold xr*yi (even) and xi*yr (odd): even minus odd.
  alignas(32) double rbuf[4], ibuf[4];
  _mm256_store_pd(rbuf, re);
  _mm256_store_pd(ibuf, im);
  double rr = rbuf[0] + rbuf[1] + rbuf[2] + rbuf[3];
  double ii = ibuf[0] - ibuf[1] + ibuf[2] - ibuf[3];
  for (; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    const double yr = yd[2 * i], yi = yd[2 * i + 1];
    rr += xr * yr + xi * yi;
    ii += xr * yi - xi * yr;
  }
  return {rr, ii};
}

void a_zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    // (ar*xr - ai*xi, ar*xi + ai*xr) via addsub
    yv = _mm256_add_pd(yv, _mm256_addsub_pd(_mm256_mul_pd(ar, xv),
                                            _mm256_mul_pd(ai, xs)));
    _mm256_storeu_pd(yd + 2 * i, yv);
  }
  for (; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    yd[2 * i] += a.real() * xr - a.imag() * xi;
    yd[2 * i + 1] += a.real() * xi + a.imag() * xr;
  }
}

void a_zgemm_nn(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
                const cplx* A, std::size_t lda, const cplx* B, std::size_t ldb,
                cplx* C, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* ci = C + i * ldc;
    const cplx* ai = A + i * lda;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx a = alpha * ai[p];
      if (a == cplx{0.0, 0.0}) continue;
      a_zaxpy(a, B + p * ldb, ci, n);
    }
  }
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops table = {
      "avx2",   a_dot,   a_axpy,  a_sumsq,  a_gemm_nn,
      a_gemm_nt, a_zdotc, a_zaxpy, a_zgemm_nn,
  };
  return &table;
}

}  // namespace qbb::kern

#else

namespace qbb::kern {
const Ops* avx2_ops() { return nullptr; }
}  // namespace qbb::kern

#endif  // x86-64
