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

#ifndef QBB_BOUNDS_HPP
#define QBB_BOUNDS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qbb/model.hpp"
#include "qbb/sdp.hpp"

namespace qbb {

// Prior loss lambda - mu^T L mu: the loss of the best outcome-independent
// guess (the prior mean).
double prior_loss(const ModelMoments& m);

struct SpmResult {
  std::vector<HermitianOp> S;  // symmetric posterior-mean operators
  double l_spm = 0.0;
  double pseudo_gain = 0.0;  // L^{ij} Tr[rho0 S_j S_i]
  double gain = 0.0;         // pseudo_gain - mu^T L mu
};

// SPM operators (anticommutator solves) and the SPM lower bound
// lambda - L^{ij} Tr[rho0 S_j S_i].
SpmResult spm(const ModelMoments& m);

// Generalised posterior-mean matrix bounds from monotone metrics.
enum class MetricChoice { SLD, RLD, SQRT };

struct MonotoneResult {
  CMat K;              // d x d Hermitian metric matrix
  double bound = 0.0;  // lambda - tr[L Re K] + ||sqrt(L) Im K sqrt(L)||_1
};

MonotoneResult monotone_metric_bound(const ModelMoments& m, MetricChoice metric);

// MSL of the pretty good measurement with its built-in labels:
// 2 (lambda - L^{ij} Tr[rho_bar_j rho0^{-1/2} rho_bar_i rho0^{-1/2}]).
double pgm_bound(const ModelMoments& m);

// MSL of the PGM followed by the posterior-mean estimator; the integral over
// outcomes reuses the model's prior quadrature grid (the PGM outcome density
// equals the prior).
double pgm_star_bound(const Model& model, const ModelMoments& m, int quad_order);

struct ReportOptions {
  bool run_sdp = true;  // NH and Holevo bounds
  int quad_order = 0;   // 0 = model default
  SdpTolerances sdp;
};

struct BoundsReport {
  std::map<std::string, double> losses;    // prior, SPM, two_SPM, RPM, PGM, ...
  std::map<std::string, double> incompat;  // I_NH, I_H, I_RPM, I_PGM, ...
  std::pair<double, double> certified_range{0.0, 0.0};  // (I_NH, I_PGM*)
  std::vector<std::string> hierarchy_violations;
  double gain = 0.0;
  double pseudo_gain = 0.0;
  bool pgm_trivial = false;      // L_PGM > L_prior
  bool two_spm_trivial = false;  // 2 L_SPM > L_prior
  bool upper_nontrivial = false; // !two_spm_trivial
  int sdp_iterations = 0;
  double sdp_gap = 0.0;
  std::string sdp_status;
};

// All requested bounds plus the incompatibility quantifiers
// I_X = L_X / L_SPM - 1 and the certified range [I_NH, I_PGM*].
BoundsReport assemble_report(const Model& model, const ModelMoments& m,
                             const ReportOptions& options = {});

// Hierarchy slack used by the report diagnostics and the CLI exit code.
inline constexpr double kHierarchySlack = 1e-6;

}  // namespace qbb

#endif  // QBB_BOUNDS_HPP
