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

#ifndef QBB_MATRIX_HPP
#define QBB_MATRIX_HPP

#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

#include "qbb/kernels.hpp"

namespace qbb {

// Dense row-major matrices.  These are deliberately thin: storage plus
// element access; arithmetic lives in free functions backed by the kernel
// layer.

template <typename T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  static Mat zero(int rows, int cols) { return Mat(rows, cols); }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T* data() { return a_.data(); }
  const T* data() const { return a_.data(); }
  T* row(int r) { return a_.data() + std::size_t(r) * cols_; }
  const T* row(int r) const { return a_.data() + std::size_t(r) * cols_; }

  T& operator()(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  const T& operator()(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

  Mat& operator+=(const Mat& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Mat& operator*=(T s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(T s, Mat a) { return a *= s; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using CMat = Mat<cplx>;
using RMat = Mat<double>;

// C = A * B
inline CMat matmul(const CMat& A, const CMat& B) {
  assert(A.cols() == B.rows());
  CMat C(A.rows(), B.cols());
  kern::active().zgemm_nn(A.rows(), B.cols(), A.cols(), cplx{1.0, 0.0},
                          A.data(), A.cols(), B.data(), B.cols(), C.data(),
                          C.cols());
  return C;
}

inline RMat matmul(const RMat& A, const RMat& B) {
  assert(A.cols() == B.rows());
  RMat C(A.rows(), B.cols());
  kern::active().gemm_nn(A.rows(), B.cols(), A.cols(), 1.0, A.data(), A.cols(),
                         B.data(), B.cols(), C.data(), C.cols());
  return C;
}

// C = A * B^T
inline RMat matmul_nt(const RMat& A, const RMat& B) {
  assert(A.cols() == B.cols());
  RMat C(A.rows(), B.rows());
  kern::active().gemm_nt(A.rows(), B.rows(), A.cols(), 1.0, A.data(), A.cols(),
                         B.data(), B.cols(), C.data(), C.cols());
  return C;
}

inline CMat adjoint(const CMat& A) {
  CMat B(A.cols(), A.rows());
  for (int r = 0; r < A.rows(); ++r)
    for (int c = 0; c < A.cols(); ++c) B(c, r) = std::conj(A(r, c));
  return B;
}

inline RMat transpose(const RMat& A) {
  RMat B(A.cols(), A.rows());
  for (int r = 0; r < A.rows(); ++r)
    for (int c = 0; c < A.cols(); ++c) B(c, r) = A(r, c);
  return B;
}

template <typename T>
inline T trace(const Mat<T>& A) {
  T t{};
  const int n = std::min(A.rows(), A.cols());
  for (int i = 0; i < n; ++i) t += A(i, i);
  return t;
}

// Tr[A B] without forming the product.
inline cplx trace_prod(const CMat& A, const CMat& B) {
  assert(A.cols() == B.rows() && A.rows() == B.cols());
  cplx t{};
  for (int i = 0; i < A.rows(); ++i)
    for (int k = 0; k < A.cols(); ++k) t += A(i, k) * B(k, i);
  return t;
}

// Tr[A B] for Hermitian B: equals the conjugated elementwise dot, which the
// kernel layer vectorizes.
inline cplx trace_prod_herm(const CMat& A, const CMat& B) {
  assert(A.rows() == B.rows() && A.cols() == B.cols());
  return kern::active().zdotc(B.data(), A.data(),
                              std::size_t(A.rows()) * A.cols());
}

template <typename T>
inline double fro_norm(const Mat<T>& A) {
  const std::size_t n = std::size_t(A.rows()) * A.cols();
  if constexpr (std::is_same_v<T, double>) {
    return std::sqrt(kern::active().sumsq(A.data(), n));
  } else {
    return std::sqrt(
        kern::active().sumsq(reinterpret_cast<const double*>(A.data()), 2 * n));
  }
}

template <typename T>
inline bool all_finite(const Mat<T>& A) {
  for (int r = 0; r < A.rows(); ++r)
    for (int c = 0; c < A.cols(); ++c) {
      if constexpr (std::is_same_v<T, double>) {
        if (!std::isfinite(A(r, c))) return false;
      } else {
        if (!std::isfinite(A(r, c).real()) || !std::isfinite(A(r, c).imag()))
          return false;
      }
    }
  return true;
}

}  // namespace qbb

#endif  // QBB_MATRIX_HPP
