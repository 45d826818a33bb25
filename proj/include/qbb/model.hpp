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

#ifndef QBB_MODEL_HPP
#define QBB_MODEL_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbb/hermitian.hpp"
#include "qbb/specfun.hpp"

namespace qbb {

// Per-parameter symmetry map applied inside the quadratic loss: identity for
// location parameters, log for scale parameters.
enum class SymmetryMap { Identity, Log };

struct PriorAxis {
  enum class Kind { Uniform, JeffreysLog, Beta };
  Kind kind = Kind::Uniform;
  double lo = 0.0, hi = 1.0;  // support
  double beta = 1.0;          // Beta shape (symmetric beta on [lo, hi])
};

// Discrete prior support point: hypothesis, weight, density matrix.
struct GridRecord {
  std::vector<double> theta;
  double w = 0.0;
  CMat rho;
};

// An estimation model: prior over a box, parametric state family, weight
// matrix, and per-parameter symmetry maps.  Either continuous (axes +
// state_fn) or a finite grid of records.
struct Model {
  std::string name;
  int d = 0;
  int dim = 0;
  RMat weight;
  std::vector<SymmetryMap> symmetry;

  std::vector<PriorAxis> axes;                      // continuous models
  std::function<CMat(const double*)> state_fn;      // continuous models
  std::vector<GridRecord> records;                  // grid models

  std::map<std::string, double> params;  // provenance for reports

  bool discrete() const { return !records.empty(); }
  // Default tensor quadrature order per axis: 60 for d <= 2, 24 for
  // d in {3,4}, smaller beyond that so the tensor grid stays bounded.
  int default_order() const {
    if (d <= 2) return 60;
    if (d <= 4) return 24;
    return 12;
  }
  CMat state_at(const std::vector<double>& theta) const {
    return state_fn(theta.data());
  }
};

// One tensor-quadrature (or grid-record) point: hypothesis, mapped
// hypothesis f(theta), and joint probability weight.
struct WeightedPoint {
  std::vector<double> theta;
  std::vector<double> f;
  double pw = 0.0;
  int record = -1;  // index into Model::records for discrete models
};

// Tensor integration grid with probability weights (sum = 1).  For grid
// models this is the record list itself and `order` is ignored.
std::vector<WeightedPoint> integration_grid(const Model& model, int order);

// State at a grid point (record lookup for discrete models).
CMat state_at_point(const Model& model, const WeightedPoint& pt);

// The quartet (rho0, {rho_bar_i}, lambda, mu) plus the weight matrix: the
// sole input of every bound.
struct ModelMoments {
  int d = 0;
  HermitianOp rho0;
  std::vector<HermitianOp> rho_bar;
  double lambda = 0.0;
  std::vector<double> mu;
  RMat weight;
};

// Consistency checks on the invariants (PSD rho0 with unit trace,
// lambda >= mu^T L mu); throws ModelError on violation.
void validate_moments(const ModelMoments& m,
                      const ToleranceConfig& tol = default_tolerances());

// Moments restricted to the support of rho0 (identity when full rank).
// Every bound is invariant under this restriction; working on the support
// keeps the map inversions well posed for rank-deficient averages.
struct SupportedMoments {
  ModelMoments m;  // on the support subspace
  CMat basis;      // dim x rank isometry back to the full space
  bool projected = false;
};
SupportedMoments restrict_to_support(
    const ModelMoments& m, const ToleranceConfig& tol = default_tolerances());

// Moments by tensor Gauss quadrature on the model's prior axes.
ModelMoments moments_numeric(const Model& model, int order_per_axis);

// ---- built-in models -----------------------------------------------------

// Discrete quantum phase imaging with a generalised N00N probe on d+1
// modes; uniform priors of width 2*pi/n and weight matrix I/d.
Model make_imaging_model(int d, int n, double alpha);
ModelMoments moments_imaging(int d, int n, double alpha);

// Joint qubit phase/dephasing estimation on `copies` identical copies with
// the ignorance prior (flat phase, Jeffreys scale) and the (identity, log)
// symmetry map.
Model make_phase_dephasing_model(int copies, double W1, double W2);
ModelMoments moments_phase_dephasing(int copies, double W1, double W2);

// Planar qubit tomography: Bloch-disc states with independent symmetric
// beta priors of widths (W1, W2) and shape beta.
Model make_planar_model(double W1, double W2, double beta);
ModelMoments moments_planar(double W1, double W2, double beta);

// ---- grid-model file ingestion --------------------------------------------

// Text format:
//   d=<int> dim=<int>
//   <d rows of the weight matrix, d floats each>
//   <d lines f=identity|log>
//   theta: <d floats> | w: <float> | rho: <2*dim^2 floats row-major re,im>
Model load_grid_model(const std::string& path);
Model parse_grid_model(std::istream& in, const std::string& origin);
ModelMoments moments_of_grid(const Model& model);

// Moments for any model: closed forms for grid models, quadrature otherwise.
ModelMoments compute_moments(const Model& model, int order_per_axis = 0);

}  // namespace qbb

#endif  // QBB_MODEL_HPP
