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

#ifndef QBB_TEST_HELPERS_HPP
#define QBB_TEST_HELPERS_HPP

#include <random>

#include "qbb/linops.hpp"
#include "qbb/model.hpp"

namespace qbb::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline CMat random_complex(std::mt19937_64& g, int rows, int cols,
                           double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  CMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = cplx{N(g), N(g)};
  return m;
}

inline HermitianOp random_hermitian(std::mt19937_64& g, int dim,
                                    double scale = 1.0) {
  CMat m = random_complex(g, dim, dim, scale);
  CMat h = m + adjoint(m);
  h *= cplx{0.5, 0.0};
  return HermitianOp::trusted(std::move(h));
}

// strictly positive definite with unit trace
inline HermitianOp random_density(std::mt19937_64& g, int dim,
                                  double floor = 0.05) {
  CMat m = random_complex(g, dim, dim);
  CMat p = matmul(m, adjoint(m));
  for (int i = 0; i < dim; ++i) p(i, i) += floor * dim;
  HermitianOp h = HermitianOp::trusted(std::move(p));
  const double tr = trace_real(h);
  return (1.0 / tr) * h;
}

inline RMat random_psd_weight(std::mt19937_64& g, int d, double floor = 0.1) {
  std::normal_distribution<double> N(0.0, 1.0);
  RMat a(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) a(r, c) = N(g);
  RMat w = matmul_nt(a, a);
  for (int i = 0; i < d; ++i) w(i, i) += floor;
  return w;
}

// Random finite-support model: `points` hypotheses in [-1, 1]^d with
// Dirichlet-ish weights and full-rank states.
inline Model random_grid_model(std::mt19937_64& g, int dim, int d,
                               int points = 6, bool diagonal = false) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_real_distribution<double> U01(0.05, 1.0);
  Model m;
  m.name = "grid";
  m.d = d;
  m.dim = dim;
  m.weight = RMat::identity(d);
  m.symmetry.assign(d, SymmetryMap::Identity);
  double wsum = 0.0;
  std::vector<double> ws(points);
  for (int p = 0; p < points; ++p) {
    ws[p] = U01(g);
    wsum += ws[p];
  }
  for (int p = 0; p < points; ++p) {
    GridRecord rec;
    rec.w = ws[p] / wsum;
    rec.theta.resize(d);
    for (int i = 0; i < d; ++i) rec.theta[i] = U(g);
    if (diagonal) {
      std::vector<double> probs(dim);
      double s = 0.0;
      for (int i = 0; i < dim; ++i) {
        probs[i] = U01(g);
        s += probs[i];
      }
      CMat rho(dim, dim);
      for (int i = 0; i < dim; ++i) rho(i, i) = probs[i] / s;
      rec.rho = std::move(rho);
    } else {
      rec.rho = random_density(g, dim).mat();
    }
    m.records.push_back(std::move(rec));
  }
  return m;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace qbb::test

#endif  // QBB_TEST_HELPERS_HPP
