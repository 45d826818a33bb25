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

#ifndef QBB_SPECFUN_HPP
#define QBB_SPECFUN_HPP

#include <vector>

namespace qbb {

// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209;

// Exponential integral Ei(x) for x < 0.  Power series up to |x| = 6,
// modified Lentz continued fraction beyond.  Relative error <= 1e-12.
double expint_ei(double x);

// Xi(z) = 3F3((1,1,1),(2,2,2),z) = sum_m z^m / ((m+1)^3 m!), for z <= 0.
// Series (compensated, extended precision) for |z| <= 20; the large-|z|
// asymptotic expansion of -z*Xi(z) takes over beyond that, so the domain
// has no practical ceiling.
double xi_3f3(double z);

struct QuadratureRule {
  std::vector<double> nodes;    // strictly inside (a, b)
  std::vector<double> weights;  // positive
  int order = 0;

  double integrate(const std::vector<double>& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f[i];
    return acc;
  }
};

// Gauss-Legendre nodes and weights mapped affinely to (a, b); exact for
// polynomials of degree <= 2*order - 1, sum of weights = b - a.
QuadratureRule gl_nodes(int order, double a, double b);

// Gauss rule for the symmetric Jacobi weight (1-x^2)^{beta-1} on (-1, 1),
// with weights normalized to sum to one (a probability rule for the
// symmetric beta density).  Built by Golub-Welsch on the Jacobi recurrence.
QuadratureRule gauss_jacobi_sym(int order, double beta);

}  // namespace qbb

#endif  // QBB_SPECFUN_HPP
