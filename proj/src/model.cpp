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

#include "qbb/model.hpp"

#include <cmath>
#include <cstdint>

#include "qbb/errors.hpp"
#include "qbb/linops.hpp"
#include "qbb/pauli.hpp"

namespace qbb {
namespace {

constexpr std::size_t kMaxGridPoints = std::size_t(1) << 24;

double apply_map(SymmetryMap m, double theta) {
  return m == SymmetryMap::Log ? std::log(theta) : theta;
}

struct AxisRule {
  std::vector<double> theta;  // node positions in parameter space
  std::vector<double> pw;     // probability weights (sum 1)
};

AxisRule axis_rule(const PriorAxis& ax, int order) {
  AxisRule out;
  switch (ax.kind) {
    case PriorAxis::Kind::Uniform: {
      QuadratureRule q = gl_nodes(order, ax.lo, ax.hi);
      out.theta = q.nodes;
      out.pw = q.weights;
      const double inv = 1.0 / (ax.hi - ax.lo);
      for (double& w : out.pw) w *= inv;
      break;
    }
    case PriorAxis::Kind::JeffreysLog: {
      // Jeffreys density 1/theta on [lo, hi] is uniform in u = log(theta);
      // integrate in u to avoid the endpoint behaviour entirely.
      if (!(ax.lo > 0.0)) throw PriorError("jeffreys axis needs lo > 0");
      const double ulo = std::log(ax.lo), uhi = std::log(ax.hi);
      QuadratureRule q = gl_nodes(order, ulo, uhi);
      out.theta.resize(q.nodes.size());
      out.pw = q.weights;
      const double inv = 1.0 / (uhi - ulo);
      for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        out.theta[i] = std::exp(q.nodes[i]);
        out.pw[i] *= inv;
      }
      break;
    }
    case PriorAxis::Kind::Beta: {
      QuadratureRule q = gauss_jacobi_sym(order, ax.beta);
      const double mid = 0.5 * (ax.lo + ax.hi), hw = 0.5 * (ax.hi - ax.lo);
      out.theta.resize(q.nodes.size());
      out.pw = q.weights;
      for (std::size_t i = 0; i < q.nodes.size(); ++i)
        out.theta[i] = mid + hw * q.nodes[i];
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<WeightedPoint> integration_grid(const Model& model, int order) {
  std::vector<WeightedPoint> grid;
  if (model.discrete()) {
    grid.reserve(model.records.size());
    for (std::size_t r = 0; r < model.records.size(); ++r) {
      WeightedPoint pt;
      pt.theta = model.records[r].theta;
      pt.f.resize(model.d);
      for (int i = 0; i < model.d; ++i)
        pt.f[i] = apply_map(model.symmetry[i], pt.theta[i]);
      pt.pw = model.records[r].w;
      pt.record = int(r);
      grid.push_back(std::move(pt));
    }
    return grid;
  }

  if (order <= 0) order = model.default_order();
  std::vector<AxisRule> rules;
  rules.reserve(model.axes.size());
  std::size_t total = 1;
  for (const PriorAxis& ax : model.axes) {
    rules.push_back(axis_rule(ax, order));
    total *= rules.back().theta.size();
    if (total > kMaxGridPoints)
      throw IntegrationError("tensor grid too large; lower the per-axis order");
  }

  grid.reserve(total);
  std::vector<std::size_t> idx(model.d, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    WeightedPoint pt;
    pt.theta.resize(model.d);
    pt.f.resize(model.d);
    pt.pw = 1.0;
    for (int i = 0; i < model.d; ++i) {
      pt.theta[i] = rules[i].theta[idx[i]];
      pt.f[i] = apply_map(model.symmetry[i], pt.theta[i]);
      pt.pw *= rules[i].pw[idx[i]];
    }
    grid.push_back(std::move(pt));
    for (int i = model.d - 1; i >= 0; --i) {
      if (++idx[i] < rules[i].theta.size()) break;
      idx[i] = 0;
    }
  }
  return grid;
}

CMat state_at_point(const Model& model, const WeightedPoint& pt) {
  if (pt.record >= 0) return model.records[pt.record].rho;
  return model.state_fn(pt.theta.data());
}

void validate_moments(const ModelMoments& m, const ToleranceConfig& tol) {
  const double tr = trace_real(m.rho0);
  if (std::abs(tr - 1.0) > 1e-9)
    throw ModelError("moments: trace(rho0) = " + std::to_string(tr));
  if (min_eigval(m.rho0) < -ToleranceConfig::hybrid(tol.psd * 100, 1.0))
    throw ModelError("moments: rho0 is not PSD");
  if (int(m.rho_bar.size()) != m.d || int(m.mu.size()) != m.d)
    throw ModelError("moments: inconsistent parameter count");
  double mu_l_mu = 0.0;
  for (int i = 0; i < m.d; ++i)
    for (int j = 0; j < m.d; ++j) mu_l_mu += m.mu[i] * m.weight(i, j) * m.mu[j];
  if (m.lambda < mu_l_mu - 1e-10 * (1.0 + std::abs(m.lambda)))
    throw ModelError("moments: lambda < mu^T L mu");
}

SupportedMoments restrict_to_support(const ModelMoments& m,
                                     const ToleranceConfig& tol) {
  SupportedMoments out;
  out.basis = support_basis(m.rho0, tol);
  if (out.basis.cols() == m.rho0.dim()) {
    out.m = m;
    out.projected = false;
    return out;
  }
  out.projected = true;
  out.m.d = m.d;
  out.m.rho0 = restrict_to(m.rho0, out.basis);
  const double leak_tol = ToleranceConfig::hybrid(tol.support_leak, 1.0);
  for (const HermitianOp& rb : m.rho_bar) {
    HermitianOp r = restrict_to(rb, out.basis);
    // verify nothing was lost: the embedded restriction must reproduce rb
    const double lost = fro_norm((embed_from(r, out.basis) - rb).mat());
    if (lost > leak_tol)
      throw UnsupportedMoment(
          "moment has components outside support(rho0): residual " +
          std::to_string(lost));
    out.m.rho_bar.push_back(std::move(r));
  }
  out.m.lambda = m.lambda;
  out.m.mu = m.mu;
  out.m.weight = m.weight;
  return out;
}

ModelMoments moments_numeric(const Model& model, int order_per_axis) {
  if (model.discrete()) return moments_of_grid(model);

  const auto grid = integration_grid(model, order_per_axis);
  const int dim = model.dim, d = model.d;

  CMat rho0(dim, dim);
  std::vector<CMat> rbar(d, CMat(dim, dim));
  double lambda = 0.0;
  std::vector<double> mu(d, 0.0);
  const std::size_t nn = std::size_t(dim) * dim;

  for (const WeightedPoint& pt : grid) {
    const CMat rho = model.state_fn(pt.theta.data());
    kern::active().zaxpy(pt.pw, rho.data(), rho0.data(), nn);
    for (int i = 0; i < d; ++i)
      kern::active().zaxpy(pt.pw * pt.f[i], rho.data(), rbar[i].data(), nn);
    double flf = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) flf += pt.f[i] * model.weight(i, j) * pt.f[j];
    lambda += pt.pw * flf;
    for (int i = 0; i < d; ++i) mu[i] += pt.pw * pt.f[i];
  }

  ModelMoments m;
  m.d = d;
  m.rho0 = HermitianOp::trusted(std::move(rho0));
  const double tr = trace_real(m.rho0);
  if (std::abs(tr - 1.0) > 1e-8)
    throw PriorError("moments_numeric: prior mass integrates to " +
                     std::to_string(tr));
  m.rho_bar.reserve(d);
  for (int i = 0; i < d; ++i)
    m.rho_bar.push_back(HermitianOp::trusted(std::move(rbar[i])));
  m.lambda = lambda;
  m.mu = std::move(mu);
  m.weight = model.weight;
  validate_moments(m);
  return m;
}

// ---- imaging ---------------------------------------------------------------

Model make_imaging_model(int d, int n, double alpha) {
  if (d < 1) throw ModelError("imaging: need d >= 1");
  if (n < 4) throw ModelError("imaging: need n >= 4 (prior width <= pi/2)");
  if (!(alpha > 0.0)) throw ModelError("imaging: need alpha > 0");

  Model m;
  m.name = "imaging";
  m.d = d;
  m.dim = d + 1;
  m.weight = RMat::zero(d, d);
  for (int i = 0; i < d; ++i) m.weight(i, i) = 1.0 / d;
  m.symmetry.assign(d, SymmetryMap::Identity);
  for (int i = 0; i < d; ++i)
    m.axes.push_back({PriorAxis::Kind::Uniform, -M_PI / n, M_PI / n, 1.0});
  m.params = {{"d", double(d)}, {"n", double(n)}, {"alpha", alpha}};

  const double norm = 1.0 / std::sqrt(d + alpha * alpha);
  m.state_fn = [d, n, alpha, norm](const double* theta) {
    std::vector<cplx> psi(d + 1);
    psi[0] = alpha * norm;
    for (int j = 1; j <= d; ++j) {
      const double ph = -n * theta[j - 1];
      psi[j] = norm * cplx{std::cos(ph), std::sin(ph)};
    }
    CMat rho(d + 1, d + 1);
    for (int r = 0; r <= d; ++r)
      for (int c = 0; c <= d; ++c) rho(r, c) = psi[r] * std::conj(psi[c]);
    return rho;
  };
  return m;
}

ModelMoments moments_imaging(int d, int n, double alpha) {
  Model shell = make_imaging_model(d, n, alpha);  // validates arguments
  const double a2 = alpha * alpha;
  const int dim = d + 1;

  ModelMoments m;
  m.d = d;
  m.weight = shell.weight;
  m.lambda = M_PI * M_PI / (3.0 * n * n);
  m.mu.assign(d, 0.0);

  CMat rho0(dim, dim);
  rho0(0, 0) = a2 / (d + a2);
  for (int j = 1; j <= d; ++j) rho0(j, j) = 1.0 / (d + a2);
  m.rho0 = HermitianOp::trusted(std::move(rho0));

  const double coef = alpha / (n * (d + a2));
  for (int j = 1; j <= d; ++j) {
    CMat rb(dim, dim);
    rb(j, 0) = cplx{0.0, -coef};
    rb(0, j) = cplx{0.0, coef};
    m.rho_bar.push_back(HermitianOp::trusted(std::move(rb)));
  }
  return m;
}

// ---- phase & dephasing -----------------------------------------------------

namespace {

struct PdpTables {
  // entry integrals keyed by (k, m): exponents of rho_12 and rho_21 in the
  // n-copy tensor entry; rows of each table are k, columns m
  std::vector<std::vector<double>> t0;
  std::vector<std::vector<cplx>> t1;
  std::vector<std::vector<double>> t2;
};

// Closed forms of the prior integrals of
//   2^-n exp(-(k+m) theta2^2) exp(i (k-m) theta1) * {1, theta1, log theta2}
// under the ignorance prior on [-W1/2, W1/2] x [1/sqrt(W2), sqrt(W2)].
PdpTables pdp_tables(int n, double W1, double W2) {
  const double lw = std::log(W2);
  const double g = kEulerGamma;
  const double scale = std::pow(2.0, -n);

  auto dEi = [&](int s) {
    return expint_ei(-s * W2) - expint_ei(-double(s) / W2);
  };
  auto sEi = [&](int s) {
    return expint_ei(-s * W2) + expint_ei(-double(s) / W2);
  };
  // A(s) = int_{1/W2}^{W2} e^{-s u} log(u)/u du
  auto A = [&](int s) {
    const double xi_hi = xi_3f3(-s * W2);
    const double xi_lo = xi_3f3(-double(s) / W2);
    return s * (W2 * xi_hi - xi_lo / W2) + lw * (sEi(s) - 2.0 * std::log(double(s)) - 2.0 * g);
  };

  PdpTables T;
  T.t0.assign(n + 1, std::vector<double>(n + 1, 0.0));
  T.t1.assign(n + 1, std::vector<cplx>(n + 1, cplx{}));
  T.t2.assign(n + 1, std::vector<double>(n + 1, 0.0));

  for (int k = 0; k <= n; ++k) {
    for (int mm = 0; mm + k <= n; ++mm) {
      const int s = k + mm;
      const int c = k - mm;
      if (s == 0) {
        T.t0[k][mm] = scale;
        T.t1[k][mm] = 0.0;
        T.t2[k][mm] = 0.0;
        continue;
      }
      if (c == 0) {
        T.t0[k][mm] = scale * dEi(s) / (2.0 * lw);
        T.t1[k][mm] = 0.0;
        T.t2[k][mm] = scale * A(s) / (4.0 * lw);
      } else {
        const double half = 0.5 * c * W1;
        T.t0[k][mm] = scale * std::sin(half) * dEi(s) / (c * W1 * lw);
        T.t1[k][mm] = cplx{0.0, scale * (std::sin(half) - half * std::cos(half)) *
                                    dEi(s) / (double(c) * c * W1 * lw)};
        T.t2[k][mm] = scale * std::sin(half) * A(s) / (2.0 * c * W1 * lw);
      }
    }
  }
  return T;
}

}  // namespace

Model make_phase_dephasing_model(int copies, double W1, double W2) {
  if (copies < 1) throw ModelError("phase-dephasing: need copies >= 1");
  if (copies > 8)
    throw ResourceLimit("phase-dephasing: copies > 8 (state dim 2^copies)");
  if (!(W2 > 1.0))
    throw PriorError("phase-dephasing: W2 must exceed 1 (positive log-width)");
  if (!(W1 > 0.0)) throw PriorError("phase-dephasing: need W1 > 0");

  Model m;
  m.name = "phase-dephasing";
  m.d = 2;
  m.dim = 1 << copies;
  m.weight = RMat::identity(2);
  m.symmetry = {SymmetryMap::Identity, SymmetryMap::Log};
  m.axes.push_back({PriorAxis::Kind::Uniform, -0.5 * W1, 0.5 * W1, 1.0});
  m.axes.push_back(
      {PriorAxis::Kind::JeffreysLog, 1.0 / std::sqrt(W2), std::sqrt(W2), 1.0});
  m.params = {{"copies", double(copies)}, {"w1", W1}, {"w2", W2}};

  m.state_fn = [copies](const double* theta) {
    const double damp = std::exp(-theta[1] * theta[1]);
    CMat q(2, 2);
    q(0, 0) = 0.5;
    q(1, 1) = 0.5;
    q(0, 1) = 0.5 * damp * cplx{std::cos(theta[0]), std::sin(theta[0])};
    q(1, 0) = std::conj(q(0, 1));
    CMat full = q;
    for (int c = 1; c < copies; ++c) full = kron(full, q);
    return full;
  };
  return m;
}

ModelMoments moments_phase_dephasing(int copies, double W1, double W2) {
  Model shell = make_phase_dephasing_model(copies, W1, W2);
  const int n = copies;
  const int dim = 1 << n;
  const PdpTables T = pdp_tables(n, W1, W2);

  CMat rho0(dim, dim), rb1(dim, dim), rb2(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      // exponents of rho_12 / rho_21 in the (a, b) tensor entry
      const int k = __builtin_popcount(unsigned(~a & b) & unsigned(dim - 1));
      const int mm = __builtin_popcount(unsigned(a & ~b) & unsigned(dim - 1));
      rho0(a, b) = T.t0[k][mm];
      rb1(a, b) = T.t1[k][mm];
      rb2(a, b) = T.t2[k][mm];
    }
  }

  ModelMoments m;
  m.d = 2;
  m.rho0 = HermitianOp::trusted(std::move(rho0));
  m.rho_bar.push_back(HermitianOp::trusted(std::move(rb1)));
  m.rho_bar.push_back(HermitianOp::trusted(std::move(rb2)));
  const double lw = std::log(W2);
  m.lambda = (W1 * W1 + lw * lw) / 12.0;
  m.mu = {0.0, 0.0};
  m.weight = shell.weight;
  validate_moments(m);
  return m;
}

// ---- planar tomography ------------------------------------------------------

Model make_planar_model(double W1, double W2, double beta) {
  if (!(beta > 0.0)) throw ModelError("planar: need beta > 0");
  if (!(W1 > 0.0) || !(W2 > 0.0)) throw ModelError("planar: need positive widths");
  if (W1 * W1 + W2 * W2 > 1.0 + 1e-12)
    throw ModelError("planar: W1^2 + W2^2 > 1 leaves the Bloch disc");

  Model m;
  m.name = "planar";
  m.d = 2;
  m.dim = 2;
  m.weight = RMat::identity(2);
  m.symmetry = {SymmetryMap::Identity, SymmetryMap::Identity};
  m.axes.push_back({PriorAxis::Kind::Beta, -W1, W1, beta});
  m.axes.push_back({PriorAxis::Kind::Beta, -W2, W2, beta});
  m.params = {{"w1", W1}, {"w2", W2}, {"beta", beta}};

  m.state_fn = [](const double* theta) {
    CMat rho(2, 2);
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    rho(0, 1) = 0.5 * cplx{theta[0], -theta[1]};
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
  };
  return m;
}

ModelMoments moments_planar(double W1, double W2, double beta) {
  Model shell = make_planar_model(W1, W2, beta);
  const double v1 = W1 * W1 / (1.0 + 2.0 * beta);
  const double v2 = W2 * W2 / (1.0 + 2.0 * beta);

  ModelMoments m;
  m.d = 2;
  m.rho0 = HermitianOp::trusted(0.5 * CMat::identity(2));
  m.rho_bar.push_back(HermitianOp::trusted(cplx{0.5 * v1, 0.0} * pauli_x()));
  m.rho_bar.push_back(HermitianOp::trusted(cplx{0.5 * v2, 0.0} * pauli_y()));
  m.lambda = v1 + v2;
  m.mu = {0.0, 0.0};
  m.weight = shell.weight;
  return m;
}

// ---- moments dispatch -------------------------------------------------------

ModelMoments moments_of_grid(const Model& model) {
  const int dim = model.dim, d = model.d;
  CMat rho0(dim, dim);
  std::vector<CMat> rbar(d, CMat(dim, dim));
  double lambda = 0.0;
  std::vector<double> mu(d, 0.0);
  const std::size_t nn = std::size_t(dim) * dim;

  for (const GridRecord& rec : model.records) {
    std::vector<double> f(d);
    for (int i = 0; i < d; ++i) f[i] = apply_map(model.symmetry[i], rec.theta[i]);
    kern::active().zaxpy(rec.w, rec.rho.data(), rho0.data(), nn);
    for (int i = 0; i < d; ++i)
      kern::active().zaxpy(rec.w * f[i], rec.rho.data(), rbar[i].data(), nn);
    double flf = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) flf += f[i] * model.weight(i, j) * f[j];
    lambda += rec.w * flf;
    for (int i = 0; i < d; ++i) mu[i] += rec.w * f[i];
  }

  ModelMoments m;
  m.d = d;
  m.rho0 = HermitianOp::trusted(std::move(rho0));
  for (int i = 0; i < d; ++i)
    m.rho_bar.push_back(HermitianOp::trusted(std::move(rbar[i])));
  m.lambda = lambda;
  m.mu = std::move(mu);
  m.weight = model.weight;
  validate_moments(m);
  return m;
}

ModelMoments compute_moments(const Model& model, int order_per_axis) {
  if (model.discrete()) return moments_of_grid(model);
  if (model.name == "imaging")
    return moments_imaging(int(model.params.at("d")), int(model.params.at("n")),
                           model.params.at("alpha"));
  if (model.name == "phase-dephasing")
    return moments_phase_dephasing(int(model.params.at("copies")),
                                   model.params.at("w1"), model.params.at("w2"));
  if (model.name == "planar")
    return moments_planar(model.params.at("w1"), model.params.at("w2"),
                          model.params.at("beta"));
  return moments_numeric(model, order_per_axis);
}

}  // namespace qbb
