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

#include "qbb/povm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qbb/bounds.hpp"
#include "qbb/errors.hpp"
#include "qbb/linops.hpp"
#include "qbb/parallel.hpp"
#include "qbb/pauli.hpp"

namespace qbb {

Povm make_povm(std::vector<HermitianOp> elements,
               std::vector<std::vector<double>> estimates,
               const ToleranceConfig& tol) {
  if (elements.empty()) throw InvalidPovm("POVM needs at least one element");
  const int dim = elements.front().dim();
  CMat sum(dim, dim);
  for (const HermitianOp& e : elements) {
    if (e.dim() != dim) throw InvalidPovm("POVM elements differ in dimension");
    if (min_eigval(e) < -ToleranceConfig::hybrid(1e-10, fro_norm(e.mat())))
      throw InvalidPovm("POVM element is not PSD");
    sum += e.mat();
  }
  Povm p;
  p.completeness_residual = fro_norm(sum - CMat::identity(dim));
  if (p.completeness_residual > 1e-9 * (1.0 + std::sqrt(double(dim))))
    throw InvalidPovm("POVM does not resolve the identity (residual " +
                      std::to_string(p.completeness_residual) + ")");
  if (!estimates.empty() && estimates.size() != elements.size())
    throw InvalidPovm("estimate count does not match element count");
  p.elements = std::move(elements);
  p.estimates = std::move(estimates);
  (void)tol;
  return p;
}

MslResult msl_of_povm(const Povm& povm, const Model& model, EstimatorMode mode,
                      int quad_order) {
  if (povm.dim() != model.dim)
    throw InvalidPovm("POVM dimension does not match the model");
  if (mode == EstimatorMode::Fixed && !povm.has_estimates())
    throw InvalidPovm("fixed estimator requested but POVM has no estimates");

  const auto grid = integration_grid(model, quad_order);
  const std::size_t nx = povm.elements.size();
  const std::size_t ng = grid.size();
  const int d = model.d;

  // likelihood table p(x | theta_g), filled outcome-parallel
  std::vector<double> like(nx * ng);
  parallel_for(ng, [&](std::size_t g) {
    const CMat rho = state_at_point(model, grid[g]);
    for (std::size_t x = 0; x < nx; ++x)
      like[x * ng + g] =
          std::max(0.0, trace_prod_herm(rho, povm.elements[x].mat()).real());
  });

  // estimates in the mapped space
  std::vector<std::vector<double>> est(nx, std::vector<double>(d, 0.0));
  std::vector<bool> dead(nx, false);
  if (mode == EstimatorMode::Fixed) {
    for (std::size_t x = 0; x < nx; ++x) est[x] = povm.estimates[x];
  } else {
    for (std::size_t x = 0; x < nx; ++x) {
      double norm = 0.0;
      std::vector<double> num(d, 0.0);
      for (std::size_t g = 0; g < ng; ++g) {
        const double w = grid[g].pw * like[x * ng + g];
        norm += w;
        for (int i = 0; i < d; ++i) num[i] += w * grid[g].f[i];
      }
      if (norm <= 1e-300) {
        dead[x] = true;  // zero-probability outcome: skipped with weight 0
        continue;
      }
      for (int i = 0; i < d; ++i) est[x][i] = num[i] / norm;
    }
  }

  RMat sigma(d, d);
  for (std::size_t x = 0; x < nx; ++x) {
    if (dead[x]) continue;
    for (std::size_t g = 0; g < ng; ++g) {
      const double w = grid[g].pw * like[x * ng + g];
      if (w == 0.0) continue;
      for (int i = 0; i < d; ++i) {
        const double di = est[x][i] - grid[g].f[i];
        for (int j = i; j < d; ++j) {
          const double dj = est[x][j] - grid[g].f[j];
          sigma(i, j) += w * di * dj;
        }
      }
    }
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) sigma(i, j) = sigma(j, i);

  MslResult out;
  out.sigma = std::move(sigma);
  out.msl = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.msl += model.weight(i, j) * out.sigma(j, i);
  return out;
}

Povm spm_projective(const ModelMoments& m, int param_index, const Model& model) {
  if (param_index < 0 || param_index >= m.d)
    throw InvalidPovm("spm_projective: parameter index out of range");
  const SpmResult sr = spm(m);
  const Spectrum sp = eig_hermitian(sr.S[param_index]);
  const int dim = sr.S[param_index].dim();

  // merge degenerate eigenspaces; ties broken by ascending eigenvalue
  const double scale = std::abs(sp.values.back()) + std::abs(sp.values.front());
  const double merge_tol = 1e-10 * (1.0 + scale);

  std::vector<HermitianOp> elements;
  std::vector<std::vector<double>> estimates;
  int a = 0;
  while (a < dim) {
    int b = a + 1;
    while (b < dim && sp.values[b] - sp.values[a] <= merge_tol) ++b;
    CMat proj(dim, dim);
    for (int k = a; k < b; ++k)
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
          proj(r, c) += sp.vectors(r, k) * std::conj(sp.vectors(c, k));
    elements.push_back(HermitianOp::trusted(std::move(proj)));
    std::vector<double> est = m.mu;  // prior means for untargeted coordinates
    est[param_index] = sp.values[a];
    estimates.push_back(std::move(est));
    a = b;
  }
  (void)model;
  return make_povm(std::move(elements), std::move(estimates));
}

Povm pauli_tomography_povm(int copies) {
  if (copies < 1) throw InvalidPovm("pauli_tomography_povm: copies >= 1");
  if (copies > 6)
    throw ResourceLimit("pauli_tomography_povm: copies > 6 (6^copies outcomes)");

  // single-qubit basis projectors (x,y,z) x (+,-)
  CMat half = CMat::identity(2);
  half *= cplx{0.5, 0.0};
  std::vector<std::vector<CMat>> proj(3, std::vector<CMat>(2, CMat(2, 2)));
  const CMat paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  for (int bdx = 0; bdx < 3; ++bdx)
    for (int s = 0; s < 2; ++s) {
      CMat p = paulis[bdx];
      p *= cplx{s == 0 ? 0.5 : -0.5, 0.0};
      proj[bdx][s] = half + p;
    }

  const double wscale = std::pow(3.0, -copies);
  std::vector<HermitianOp> elements;
  const long total = long(std::pow(6.0, copies));
  elements.reserve(total);

  // outcomes ordered by (basis string, sign string), both lexicographic
  std::vector<int> basis(copies, 0), sign(copies, 0);
  long nb = long(std::pow(3.0, copies));
  long ns = long(std::pow(2.0, copies));
  for (long bi = 0; bi < nb; ++bi) {
    long t = bi;
    for (int c = copies - 1; c >= 0; --c) {
      basis[c] = int(t % 3);
      t /= 3;
    }
    for (long si = 0; si < ns; ++si) {
      long u = si;
      for (int c = copies - 1; c >= 0; --c) {
        sign[c] = int(u % 2);
        u /= 2;
      }
      CMat el = proj[basis[0]][sign[0]];
      for (int c = 1; c < copies; ++c) el = kron(el, proj[basis[c]][sign[c]]);
      el *= cplx{wscale, 0.0};
      elements.push_back(HermitianOp::trusted(std::move(el)));
    }
  }
  return make_povm(std::move(elements));
}

OptimalityCertificate verify_optimality(
    const Povm& povm, const Model& model,
    const std::vector<std::vector<double>>& grid_f, double herm_tol,
    double psd_tol) {
  if (!povm.has_estimates())
    throw InvalidPovm("verify_optimality: POVM carries no estimates");
  const ModelMoments m = compute_moments(model);
  const int d = m.d;
  const int dim = model.dim;

  // measurement moments from the relabelled POVM
  std::vector<CMat> Mi(d, CMat(dim, dim));
  CMat C1(dim, dim);  // L^{ij} M_ji
  for (std::size_t x = 0; x < povm.elements.size(); ++x) {
    const CMat& el = povm.elements[x].mat();
    const auto& e = povm.estimates[x];
    const std::size_t nn = std::size_t(dim) * dim;
    for (int i = 0; i < d; ++i)
      kern::active().zaxpy(e[i], el.data(), Mi[i].data(), nn);
    double ll = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) ll += e[i] * m.weight(i, j) * e[j];
    kern::active().zaxpy(ll, el.data(), C1.data(), nn);
  }
  std::vector<CMat> G(d, CMat(dim, dim));  // G_j = sum_i L_ji rho_bar_i
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      if (m.weight(j, i) == 0.0) continue;
      kern::active().zaxpy(m.weight(j, i), m.rho_bar[i].mat().data(),
                           G[j].data(), std::size_t(dim) * dim);
    }

  OptimalityCertificate cert;

  // hermiticity of the one-sided operator: (C1 rho0 - rho0 C1) - 2 sum_j (M_j G_j - G_j M_j)
  {
    CMat resid = matmul(C1, m.rho0.mat());
    resid -= matmul(m.rho0.mat(), C1);
    for (int j = 0; j < d; ++j) {
      CMat t = matmul(Mi[j], G[j]);
      t -= matmul(G[j], Mi[j]);
      t *= cplx{2.0, 0.0};
      resid -= t;
    }
    cert.hermiticity_residual = fro_norm(resid);
  }

  // symmetrized Upsilon = (C1 rho0 + rho0 C1)/2 - sum_j (M_j G_j + G_j M_j) + Lambda;
  // Lambda drops out of every grid comparison and contributes lambda to the trace
  CMat ups = matmul(C1, m.rho0.mat());
  ups += matmul(m.rho0.mat(), C1);
  ups *= cplx{0.5, 0.0};
  for (int j = 0; j < d; ++j) {
    CMat t = matmul(Mi[j], G[j]);
    t += matmul(G[j], Mi[j]);
    ups -= t;
  }
  cert.upsilon = HermitianOp::trusted(ups);
  cert.trace_upsilon = m.lambda + trace_real(cert.upsilon);

  // risk-minus-Upsilon scan over the grid (both sides minus Lambda)
  std::vector<double> mins(grid_f.size());
  parallel_for(grid_f.size(), [&](std::size_t gidx) {
    const std::vector<double>& f = grid_f[gidx];
    double ll = 0.0;
    std::vector<double> lf(d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        ll += f[i] * m.weight(i, j) * f[j];
        lf[i] += m.weight(i, j) * f[j];
      }
    CMat diff = m.rho0.mat();
    diff *= cplx{ll, 0.0};
    for (int i = 0; i < d; ++i) {
      CMat t = m.rho_bar[i].mat();
      t *= cplx{2.0 * lf[i], 0.0};
      diff -= t;
    }
    diff -= cert.upsilon.mat();
    mins[gidx] = min_eigval(HermitianOp::trusted(std::move(diff)));
  });
  cert.min_eig_over_grid = mins.empty() ? 0.0 : mins.front();
  for (double v : mins) cert.min_eig_over_grid = std::min(cert.min_eig_over_grid, v);
  cert.grid_points_checked = int(grid_f.size());

  cert.passed = cert.hermiticity_residual <= herm_tol &&
                cert.min_eig_over_grid >= -psd_tol;
  return cert;
}

std::vector<std::vector<double>> default_verify_grid(const Model& model,
                                                     const Povm& povm,
                                                     int per_axis) {
  const int d = model.d;
  std::vector<std::vector<double>> axes(d);
  if (model.discrete()) {
    for (int i = 0; i < d; ++i) {
      double lo = 1e300, hi = -1e300;
      for (const GridRecord& r : model.records) {
        const double f = model.symmetry[i] == SymmetryMap::Log
                             ? std::log(r.theta[i])
                             : r.theta[i];
        lo = std::min(lo, f);
        hi = std::max(hi, f);
      }
      if (hi <= lo) hi = lo + 1.0;
      for (int k = 0; k < per_axis; ++k)
        axes[i].push_back(lo + (hi - lo) * k / (per_axis - 1));
    }
  } else {
    for (int i = 0; i < d; ++i) {
      double lo = model.axes[i].lo, hi = model.axes[i].hi;
      if (model.symmetry[i] == SymmetryMap::Log) {
        lo = std::log(lo);
        hi = std::log(hi);
      }
      for (int k = 0; k < per_axis; ++k)
        axes[i].push_back(lo + (hi - lo) * k / (per_axis - 1));
    }
  }

  std::vector<std::vector<double>> grid;
  std::vector<int> idx(d, 0);
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= axes[i].size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<double> f(d);
    for (int i = 0; i < d; ++i) f[i] = axes[i][idx[i]];
    grid.push_back(std::move(f));
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < int(axes[i].size())) break;
      idx[i] = 0;
    }
  }
  if (povm.has_estimates())
    for (const auto& e : povm.estimates) grid.push_back(e);
  return grid;
}

// ---- file io -----------------------------------------------------------------

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

std::vector<double> parse_floats(const std::string& s, const std::string& origin,
                                 int line, const char* field) {
  std::istringstream iss(s);
  std::vector<double> out;
  double v;
  while (iss >> v) out.push_back(v);
  std::string rest;
  if (iss.bad() || (iss.clear(), iss >> rest))
    fail(origin, line, std::string("bad float in field '") + field + "'");
  return out;
}

bool next_line(std::istream& in, std::string& s, int& line) {
  while (std::getline(in, s)) {
    ++line;
    const auto pos = s.find_first_not_of(" \t\r");
    if (pos == std::string::npos || s[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Povm parse_povm(std::istream& in, const std::string& origin) {
  int line = 0;
  std::string s;
  if (!next_line(in, s, line)) fail(origin, line, "missing header");
  int d = 0, dim = 0;
  {
    std::istringstream iss(s);
    std::string kd, kdim;
    iss >> kd >> kdim;
    if (kd.rfind("d=", 0) != 0 || kdim.rfind("dim=", 0) != 0)
      fail(origin, line, "header must be 'd=<int> dim=<int>'");
    try {
      d = std::stoi(kd.substr(2));
      dim = std::stoi(kdim.substr(4));
    } catch (const std::exception&) {
      fail(origin, line, "header must be 'd=<int> dim=<int>'");
    }
    if (d < 1 || dim < 1) fail(origin, line, "d and dim must be positive");
  }

  std::vector<HermitianOp> elements;
  std::vector<std::vector<double>> estimates;
  bool any_estimate = false;
  while (next_line(in, s, line)) {
    const auto bar = s.find('|');
    const auto ep = s.find("element:");
    if (ep == std::string::npos) fail(origin, line, "record needs 'element:'");
    const std::string epart =
        s.substr(ep + 8, bar == std::string::npos ? std::string::npos
                                                  : bar - (ep + 8));
    const auto ev = parse_floats(epart, origin, line, "element");
    if (int(ev.size()) != 2 * dim * dim)
      fail(origin, line,
           "element needs " + std::to_string(2 * dim * dim) + " floats");
    CMat el(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        el(r, c) = cplx{ev[2 * (r * dim + c)], ev[2 * (r * dim + c) + 1]};
    elements.emplace_back(el);

    if (bar != std::string::npos) {
      const auto sp = s.find("estimate:", bar);
      if (sp == std::string::npos) fail(origin, line, "expected 'estimate:'");
      const auto est = parse_floats(s.substr(sp + 9), origin, line, "estimate");
      if (int(est.size()) != d)
        fail(origin, line, "estimate needs " + std::to_string(d) + " values");
      estimates.push_back(est);
      any_estimate = true;
    } else {
      estimates.push_back({});
    }
  }
  if (elements.empty()) fail(origin, line, "no POVM elements");
  if (any_estimate) {
    for (std::size_t i = 0; i < estimates.size(); ++i)
      if (int(estimates[i].size()) != d)
        throw ParseError(origin + ": estimates must be present on every record");
  } else {
    estimates.clear();
  }
  return make_povm(std::move(elements), std::move(estimates));
}

Povm load_povm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open POVM file");
  return parse_povm(in, path);
}

void save_povm(const Povm& povm, int d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  const int dim = povm.dim();
  out << "d=" << d << " dim=" << dim << "\n";
  char buf[80];
  for (std::size_t x = 0; x < povm.elements.size(); ++x) {
    out << "element:";
    const CMat& el = povm.elements[x].mat();
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        std::snprintf(buf, sizeof buf, " %.17g %.17g", el(r, c).real(),
                      el(r, c).imag());
        out << buf;
      }
    if (povm.has_estimates()) {
      out << " | estimate:";
      for (double e : povm.estimates[x]) {
        std::snprintf(buf, sizeof buf, " %.17g", e);
        out << buf;
      }
    }
    out << "\n";
  }
}

}  // namespace qbb
