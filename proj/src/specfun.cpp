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

#include "qbb/specfun.hpp"

#include <cmath>
#include <limits>

#include "qbb/errors.hpp"
#include "qbb/linops.hpp"

namespace qbb {
namespace {

// Ei(x) = gamma + ln|x| + sum_k x^k/(k k!).  The sum alternates for x < 0,
// so accumulate in extended precision to keep the cancellation harmless up
// to the continued-fraction handover at |x| = 6.
double ei_series(double x) {
  long double sum = 0.0L;
  long double term = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= static_cast<long double>(x) / k;
    const long double add = term / k;
    sum += add;
    if (std::fabs(static_cast<double>(add)) <
        1e-18 * (1.0 + std::fabs(static_cast<double>(sum))))
      break;
  }
  return static_cast<double>(
      static_cast<long double>(kEulerGamma) +
      std::log(std::fabs(x)) + sum);
}

// E1(z) for z > 0 by the modified Lentz continued fraction
//   E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...))))
// and Ei(-z) = -E1(z).
double e1_lentz(double z) {
  constexpr double tiny = 1e-300;
  double b = z + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -double(i) * double(i);
    b += 2.0;
    d = a * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

}  // namespace

double expint_ei(double x) {
  if (!(x < 0.0))
    throw DomainError("expint_ei: argument must be negative, got " +
                      std::to_string(x));
  if (x >= -6.0) return ei_series(x);
  return -e1_lentz(-x);
}

double xi_3f3(double z) {
  if (z > 0.0) throw DomainError("xi_3f3: argument must be <= 0");
  if (z == 0.0) return 1.0;
  const double y = -z;
  if (y <= 20.0) {
    // sum_m z^m / ((m+1)^3 m!)
    long double sum = 0.0L;
    long double term = 1.0L;  // z^m / m!
    for (int m = 0; m < 500; ++m) {
      const long double mp1 = m + 1;
      const long double add = term / (mp1 * mp1 * mp1);
      sum += add;
      if (std::fabs(static_cast<double>(add)) <
          1e-18 * std::fabs(static_cast<double>(sum)) && m > 4)
        break;
      term *= static_cast<long double>(z) / mp1;
    }
    return static_cast<double>(sum);
  }
  // Phi(-y) := z*Xi(z) obeys, for large y,
  //   Phi(-y) = -ln^2(y)/2 - g ln(y) - g^2/2 - pi^2/12
  //             + e^{-y} (1/y^2 - 3/y^3 + 11/y^4 - 50/y^5) + O(e^{-y}/y^6).
  const double ly = std::log(y);
  const double c0 = -kEulerGamma * kEulerGamma / 2.0 -
                    9.869604401089358618834490999876 / 12.0;  // -g^2/2 - pi^2/12
  const double y2 = y * y;
  const double tail =
      std::exp(-y) * (1.0 / y2 - 3.0 / (y2 * y) + 11.0 / (y2 * y2) -
                      50.0 / (y2 * y2 * y));
  const double phi = -0.5 * ly * ly - kEulerGamma * ly + c0 + tail;
  return phi / z;
}

QuadratureRule gl_nodes(int order, double a, double b) {
  if (order < 1) throw InvalidOrder("gl_nodes: order must be >= 1");
  if (!(a < b)) throw InvalidOrder("gl_nodes: need a < b");

  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);

  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_order from the Chebyshev-like initial guess
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) {
        // one polishing pass, then stop
        if (it > 0) break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = x;
    rule.weights[i] = w;
    rule.nodes[order - 1 - i] = -x;
    rule.weights[order - 1 - i] = w;
  }

  const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = mid - hw * rule.nodes[i];  // ascending in (a, b)
    rule.weights[i] *= hw;
  }
  return rule;
}

QuadratureRule gauss_jacobi_sym(int order, double beta) {
  if (order < 1) throw InvalidOrder("gauss_jacobi_sym: order must be >= 1");
  if (!(beta > 0.0)) throw InvalidOrder("gauss_jacobi_sym: need beta > 0");

  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the monic
  // orthogonal polynomials for (1-x)^a (1+x)^a with a = beta-1; weights are
  // mu0 * (first eigenvector component)^2, here normalized to sum to one.
  const double aa = beta - 1.0;
  RMat J(order, order);
  for (int k = 1; k < order; ++k) {
    double bk;
    if (k == 1) {
      bk = 4.0 * (1.0 + aa) * (1.0 + aa) /
           ((2.0 + 2.0 * aa) * (2.0 + 2.0 * aa) * (3.0 + 2.0 * aa));
    } else {
      const double s = 2.0 * k + 2.0 * aa;
      bk = 4.0 * k * (k + aa) * (k + aa) * (k + 2.0 * aa) /
           (s * s * (s + 1.0) * (s - 1.0));
    }
    const double off = std::sqrt(bk);
    J(k - 1, k) = off;
    J(k, k - 1) = off;
  }

  RMat V;
  std::vector<double> nodes;
  eig_sym_inplace(J, V, nodes);

  QuadratureRule rule;
  rule.order = order;
  rule.nodes = nodes;
  rule.weights.resize(order);
  double total = 0.0;
  for (int i = 0; i < order; ++i) {
    rule.weights[i] = V(0, i) * V(0, i);
    total += rule.weights[i];
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

}  // namespace qbb
