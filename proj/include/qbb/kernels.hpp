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

#ifndef QBB_KERNELS_HPP
#define QBB_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qbb {

using cplx = std::complex<double>;

namespace kern {

// Dense inner-loop kernels used by all matrix arithmetic in the library.
// Every operation exists as a scalar reference implementation plus optional
// SIMD variants (AVX2 on x86-64, NEON on aarch64).  The active variant is
// picked once at startup from CPU features; QBB_KERNEL=scalar|avx2|neon
// overrides the selection.  All matrices are dense row-major with an
// explicit leading dimension (stride between rows, >= the row length).
//
// The gemm kernels *accumulate*: C += alpha * op(A, B).  Callers that want
// a plain product zero C first.
struct Ops {
  const char* name;

  // real vectors
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  double (*sumsq)(const double* x, std::size_t n);

  // C(m x n) += alpha * A(m x k) * B(k x n)
  void (*gemm_nn)(std::size_t m, std::size_t n, std::size_t k, double alpha,
                  const double* A, std::size_t lda, const double* B,
                  std::size_t ldb, double* C, std::size_t ldc);
  // C(m x n) += alpha * A(m x k) * B(n x k)^T
  void (*gemm_nt)(std::size_t m, std::size_t n, std::size_t k, double alpha,
                  const double* A, std::size_t lda, const double* B,
                  std::size_t ldb, double* C, std::size_t ldc);

  // complex vectors (interleaved re,im)
  cplx (*zdotc)(const cplx* x, const cplx* y, std::size_t n);  // sum conj(x)*y
  void (*zaxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);

  // C(m x n) += alpha * A(m x k) * B(k x n), complex
  void (*zgemm_nn)(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
                   const cplx* A, std::size_t lda, const cplx* B,
                   std::size_t ldb, cplx* C, std::size_t ldc);
};

// Kernel table currently in use (runtime-selected, env-overridable).
const Ops& active();

// Scalar reference table; the oracle the SIMD variants are tested against.
const Ops& scalar_ops();

// Every table that can run on this machine (scalar first).
std::vector<const Ops*> available();

}  // namespace kern
}  // namespace qbb

#endif  // QBB_KERNELS_HPP
