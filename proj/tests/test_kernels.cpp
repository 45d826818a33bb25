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

#include <doctest.h>

#include <random>
#include <vector>

#include "qbb/kernels.hpp"

using namespace qbb;

namespace {

std::vector<double> random_vec(std::mt19937_64& g, std::size_t n) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = N(g);
  return v;
}

std::vector<cplx> random_cvec(std::mt19937_64& g, std::size_t n) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx{N(g), N(g)};
  return v;
}

// Sizes chosen to hit vector-width remainders on every lane count.
const std::size_t kSizes[] = {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 100};

}  // namespace

TEST_CASE("active kernel table is usable") {
  const auto& ops = kern::active();
  CHECK(ops.name != nullptr);
  const double x[3] = {1.0, 2.0, 3.0};
  CHECK(ops.dot(x, x, 3) == doctest::Approx(14.0));
}

// Every SIMD variant must agree with the scalar reference.
TEST_CASE("simd variants match scalar on vector ops") {
  auto g = std::mt19937_64(12345);
  const auto& ref = kern::scalar_ops();
  for (const auto* ops : kern::available()) {
    CAPTURE(ops->name);
    for (std::size_t n : kSizes) {
      const auto x = random_vec(g, n);
      const auto y = random_vec(g, n);
      CHECK(ops->dot(x.data(), y.data(), n) ==
            doctest::Approx(ref.dot(x.data(), y.data(), n)).epsilon(1e-12));
      CHECK(ops->sumsq(x.data(), n) ==
            doctest::Approx(ref.sumsq(x.data(), n)).epsilon(1e-12));

      auto y1 = y, y2 = y;
      ops->axpy(0.7, x.data(), y1.data(), n);
      ref.axpy(0.7, x.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-13));

      const auto cx = random_cvec(g, n);
      const auto cy = random_cvec(g, n);
      const cplx d1 = ops->zdotc(cx.data(), cy.data(), n);
      const cplx d2 = ref.zdotc(cx.data(), cy.data(), n);
      CHECK(std::abs(d1 - d2) <= 1e-12 * (1.0 + std::abs(d2)));

      auto cy1 = cy, cy2 = cy;
      const cplx a{0.3, -1.1};
      ops->zaxpy(a, cx.data(), cy1.data(), n);
      ref.zaxpy(a, cx.data(), cy2.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(cy1[i] - cy2[i]) <= 1e-13 * (1.0 + std::abs(cy2[i])));
    }
  }
}

TEST_CASE("simd variants match scalar on gemm") {
  auto g = std::mt19937_64(777);
  const auto& ref = kern::scalar_ops();
  const std::size_t shapes[][3] = {
      {1, 1, 1}, {2, 3, 4}, {5, 5, 5}, {7, 9, 3}, {16, 16, 16}, {17, 13, 21}};
  for (const auto* ops : kern::available()) {
    CAPTURE(ops->name);
    for (const auto& s : shapes) {
      const std::size_t m = s[0], n = s[1], k = s[2];
      const auto A = random_vec(g, m * k);
      const auto B = random_vec(g, k * n);
      const auto Bt = random_vec(g, n * k);
      std::vector<double> C1(m * n, 0.5), C2(m * n, 0.5);

      ops->gemm_nn(m, n, k, 1.3, A.data(), k, B.data(), n, C1.data(), n);
      ref.gemm_nn(m, n, k, 1.3, A.data(), k, B.data(), n, C2.data(), n);
      for (std::size_t i = 0; i < m * n; ++i)
        CHECK(C1[i] == doctest::Approx(C2[i]).epsilon(1e-12));

      std::fill(C1.begin(), C1.end(), -0.25);
      std::fill(C2.begin(), C2.end(), -0.25);
      ops->gemm_nt(m, n, k, -0.9, A.data(), k, Bt.data(), k, C1.data(), n);
      ref.gemm_nt(m, n, k, -0.9, A.data(), k, Bt.data(), k, C2.data(), n);
      for (std::size_t i = 0; i < m * n; ++i)
        CHECK(C1[i] == doctest::Approx(C2[i]).epsilon(1e-12));

      const auto zA = random_cvec(g, m * k);
      const auto zB = random_cvec(g, k * n);
      std::vector<cplx> Z1(m * n, cplx{0.1, 0.2}), Z2(m * n, cplx{0.1, 0.2});
      ops->zgemm_nn(m, n, k, cplx{0.8, 0.1}, zA.data(), k, zB.data(), n,
                    Z1.data(), n);
      ref.zgemm_nn(m, n, k, cplx{0.8, 0.1}, zA.data(), k, zB.data(), n,
                   Z2.data(), n);
      for (std::size_t i = 0; i < m * n; ++i)
        CHECK(std::abs(Z1[i] - Z2[i]) <= 1e-12 * (1.0 + std::abs(Z2[i])));
    }
  }
}

TEST_CASE("gemm with leading dimensions larger than the row length") {
  auto g = std::mt19937_64(99);
  const auto& ref = kern::scalar_ops();
  const std::size_t m = 4, n = 5, k = 6, lda = 9, ldb = 8, ldc = 11;
  const auto A = random_vec(g, m * lda);
  const auto B = random_vec(g, k * ldb);
  for (const auto* ops : kern::available()) {
    std::vector<double> C1(m * ldc, 1.0), C2(m * ldc, 1.0);
    ops->gemm_nn(m, n, k, 2.0, A.data(), lda, B.data(), ldb, C1.data(), ldc);
    ref.gemm_nn(m, n, k, 2.0, A.data(), lda, B.data(), ldb, C2.data(), ldc);
    for (std::size_t i = 0; i < m * ldc; ++i)
      CHECK(C1[i] == doctest::Approx(C2[i]).epsilon(1e-12));
  }
}
