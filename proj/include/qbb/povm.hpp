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

#ifndef QBB_POVM_HPP
#define QBB_POVM_HPP

#include <string>
#include <vector>

#include "qbb/model.hpp"

namespace qbb {

// Finite-outcome POVM, optionally carrying one estimate vector per element.
// Estimates live in the symmetry-mapped space (the space the quadratic loss
// compares in).
struct Povm {
  std::vector<HermitianOp> elements;
  std::vector<std::vector<double>> estimates;  // empty, or one per element
  double completeness_residual = 0.0;

  int dim() const { return elements.empty() ? 0 : elements.front().dim(); }
  bool has_estimates() const { return !estimates.empty(); }
};

// Validates PSD elements and completeness (sum = identity to 1e-9).
Povm make_povm(std::vector<HermitianOp> elements,
               std::vector<std::vector<double>> estimates = {},
               const ToleranceConfig& tol = default_tolerances());

enum class EstimatorMode { Fixed, PosteriorMean };

struct MslResult {
  double msl = 0.0;
  RMat sigma;  // d x d loss matrix; msl = tr(L sigma)
};

// Mean square loss of the measurement on the model, with the supplied
// estimates (Fixed) or the optimal posterior-mean relabeling.
// Zero-probability outcomes contribute zero weight under PosteriorMean.
MslResult msl_of_povm(const Povm& povm, const Model& model, EstimatorMode mode,
                      int quad_order = 0);

// Projective measurement in the eigenbasis of the i-th SPM operator;
// eigenvalues become the estimates for coordinate i, prior means fill the
// rest.  Degenerate eigenspaces are merged onto a single projector.
Povm spm_projective(const ModelMoments& m, int param_index, const Model& model);

// Local qubit tomography on `copies` qubits: a uniformly weighted random
// Pauli basis per copy; 6^copies outcomes, no built-in estimates.
Povm pauli_tomography_povm(int copies);

struct OptimalityCertificate {
  HermitianOp upsilon;
  double trace_upsilon = 0.0;       // candidate minimum loss when passed
  double hermiticity_residual = 0.0;
  double min_eig_over_grid = 0.0;
  int grid_points_checked = 0;
  bool passed = false;
};

// Holevo-Helstrom optimality verifier: assembles the Hermitian operator
// Upsilon from the measurement moments and scans the risk-minus-Upsilon
// operator for positive semidefiniteness over a grid of estimate points
// (in the symmetry-mapped space).  A pass is grid-certified only.
OptimalityCertificate verify_optimality(
    const Povm& povm, const Model& model,
    const std::vector<std::vector<double>>& grid_f, double herm_tol = 1e-8,
    double psd_tol = 1e-8);

// Default scan grid: tensor grid of per_axis points across each mapped axis
// range, plus the POVM's own estimate vectors.
std::vector<std::vector<double>> default_verify_grid(const Model& model,
                                                     const Povm& povm,
                                                     int per_axis = 21);

// POVM file format (mirrors the grid-model format):
//   d=<int> dim=<int>
//   element: <2*dim^2 floats row-major re,im> [| estimate: <d floats>]
Povm load_povm(const std::string& path);
Povm parse_povm(std::istream& in, const std::string& origin);
void save_povm(const Povm& povm, int d, const std::string& path);

}  // namespace qbb

#endif  // QBB_POVM_HPP
