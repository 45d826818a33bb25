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

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qbb/bounds.hpp"
#include "qbb/errors.hpp"
#include "qbb/parallel.hpp"
#include "qbb/povm.hpp"
#include "qbb/report_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitHierarchy = 2;
constexpr int kExitVerifyFail = 3;
constexpr int kExitUsage = 64;
constexpr int kExitModel = 65;

struct ModelArgs {
  std::string model;
  int d = 2;
  int n = 4;
  std::string alpha = "1.0";
  int copies = 1;
  double w1 = std::nan("");  // model-specific default when unset
  double w2 = std::nan("");
  double beta = 1.0;
};

void add_model_options(CLI::App* cmd, ModelArgs& a) {
  cmd->add_option("--model", a.model,
                  "imaging | phase-dephasing | planar | grid:<path>")
      ->required();
  cmd->add_option("--d", a.d, "imaging: number of phases");
  cmd->add_option("--n", a.n, "imaging: photon number (>= 4)");
  cmd->add_option("--alpha", a.alpha, "imaging: probe weight (or 'auto' = sqrt(d))");
  cmd->add_option("--copies", a.copies, "phase-dephasing: number of copies");
  cmd->add_option("--w1", a.w1, "prior width for parameter 1");
  cmd->add_option("--w2", a.w2, "prior width for parameter 2");
  cmd->add_option("--beta", a.beta, "planar: beta prior shape");
}

qbb::Model build_model(const ModelArgs& a) {
  if (a.model == "imaging") {
    const double alpha =
        a.alpha == "auto" ? std::sqrt(double(a.d)) : std::stod(a.alpha);
    return qbb::make_imaging_model(a.d, a.n, alpha);
  }
  if (a.model == "phase-dephasing") {
    const double w1 = std::isnan(a.w1) ? M_PI / 2 : a.w1;
    const double w2 = std::isnan(a.w2) ? 5.0 : a.w2;
    return qbb::make_phase_dephasing_model(a.copies, w1, w2);
  }
  if (a.model == "planar") {
    const double w1 = std::isnan(a.w1) ? 0.5 : a.w1;
    const double w2 = std::isnan(a.w2) ? 0.5 : a.w2;
    return qbb::make_planar_model(w1, w2, a.beta);
  }
  if (a.model.rfind("grid:", 0) == 0)
    return qbb::load_grid_model(a.model.substr(5));
  throw qbb::ModelError("unknown model '" + a.model + "'");
}

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qbb::ParseError(path + ": cannot open for writing");
  out << text;
}

struct SweepRange {
  std::string var;
  std::vector<double> values;
};

// name=a:b (inclusive integer step) or name=a:b:count (linspace)
SweepRange parse_vary(const std::string& spec) {
  SweepRange r;
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw CLI::ValidationError("--vary", "expected name=a:b or name=a:b:count");
  r.var = spec.substr(0, eq);
  const std::string rest = spec.substr(eq + 1);
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto p = rest.find(':', start);
    parts.push_back(rest.substr(start, p == std::string::npos ? p : p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  try {
    if (parts.size() == 2) {
      const double a = std::stod(parts[0]), b = std::stod(parts[1]);
      for (double v = a; v <= b + 1e-12; v += 1.0) r.values.push_back(v);
    } else if (parts.size() == 3) {
      const double a = std::stod(parts[0]), b = std::stod(parts[1]);
      const int cnt = std::stoi(parts[2]);
      if (cnt < 1) throw std::invalid_argument("count");
      for (int i = 0; i < cnt; ++i)
        r.values.push_back(cnt == 1 ? a : a + (b - a) * i / (cnt - 1));
    } else {
      throw std::invalid_argument("parts");
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("--vary", "expected name=a:b or name=a:b:count");
  }
  if (r.values.empty())
    throw CLI::ValidationError("--vary", "empty sweep range");
  return r;
}

ModelArgs with_value(ModelArgs a, const std::string& var, double v) {
  if (var == "d") a.d = int(std::lround(v));
  else if (var == "n") a.n = int(std::lround(v));
  else if (var == "copies") a.copies = int(std::lround(v));
  else if (var == "alpha") a.alpha = qbb::fmt_double(v);
  else if (var == "w1") a.w1 = v;
  else if (var == "w2") a.w2 = v;
  else if (var == "beta") a.beta = v;
  else throw CLI::ValidationError("--vary", "unknown sweep variable '" + var + "'");
  return a;
}

qbb::Povm build_povm(const std::string& spec, const qbb::Model& model,
                     const qbb::ModelMoments& moments) {
  if (spec.rfind("spm:", 0) == 0) {
    const int idx = std::stoi(spec.substr(4));
    return qbb::spm_projective(moments, idx, model);
  }
  if (spec.rfind("pauli:", 0) == 0) {
    const int copies = std::stoi(spec.substr(6));
    return qbb::pauli_tomography_povm(copies);
  }
  return qbb::load_povm(spec);
}

int run_bounds(const ModelArgs& margs, bool skip_sdp, int order,
               const std::string& out, const std::string& format) {
  const qbb::Model model = build_model(margs);
  const qbb::ModelMoments moments = qbb::compute_moments(model, order);
  qbb::ReportOptions opt;
  opt.run_sdp = !skip_sdp;
  opt.quad_order = order;
  const qbb::BoundsReport rep = qbb::assemble_report(model, moments, opt);

  if (format == "csv") {
    std::string text = qbb::sweep_csv_header("point") + "\n" +
                       qbb::sweep_csv_row(0.0, rep, std::nullopt) + "\n";
    write_or_print(text, out);
  } else {
    write_or_print(qbb::report_to_json(model, rep, opt), out);
  }
  return rep.hierarchy_violations.empty() ? kExitOk : kExitHierarchy;
}

int run_sweep(const ModelArgs& margs, const std::string& vary, bool skip_sdp,
              int order, const std::string& out) {
  const SweepRange range = parse_vary(vary);

  struct Row {
    std::string text;
    bool ok = false;
    std::string error;
  };
  std::vector<Row> rows(range.values.size());

  qbb::parallel_for(range.values.size(), [&](std::size_t i) {
    try {
      const ModelArgs a = with_value(margs, range.var, range.values[i]);
      const qbb::Model model = build_model(a);
      const qbb::ModelMoments moments = qbb::compute_moments(model, order);
      qbb::ReportOptions opt;
      opt.run_sdp = !skip_sdp;
      opt.quad_order = order;
      const qbb::BoundsReport rep = qbb::assemble_report(model, moments, opt);

      std::optional<double> tom;
      if (model.name == "phase-dephasing") {
        const qbb::Povm povm =
            qbb::pauli_tomography_povm(int(model.params.at("copies")));
        tom = qbb::msl_of_povm(povm, model, qbb::EstimatorMode::PosteriorMean,
                               order)
                  .msl;
      }
      rows[i].text = qbb::sweep_csv_row(range.values[i], rep, tom);
      rows[i].ok = true;
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });

  std::ostringstream os;
  os << qbb::sweep_csv_header(range.var) << "\n";
  for (const Row& r : rows) {
    if (!r.ok) throw qbb::ModelError("sweep point failed: " + r.error);
    os << r.text << "\n";
  }
  write_or_print(os.str(), out);
  return kExitOk;
}

int run_verify(const ModelArgs& margs, const std::string& povm_spec,
               int grid_per_axis, const std::string& out) {
  const qbb::Model model = build_model(margs);
  const qbb::ModelMoments moments = qbb::compute_moments(model, 0);
  const qbb::Povm povm = build_povm(povm_spec, model, moments);
  const auto grid = qbb::default_verify_grid(model, povm, grid_per_axis);
  const qbb::OptimalityCertificate cert =
      qbb::verify_optimality(povm, model, grid);
  write_or_print(qbb::certificate_to_json(model, cert), out);
  return cert.passed ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian multiparameter estimation bounds"};
  app.require_subcommand(1);

  ModelArgs margs;
  bool skip_sdp = false;
  int order = 0;
  std::string out, format = "json", vary, povm_spec;
  int grid_per_axis = 21;

  CLI::App* bounds = app.add_subcommand("bounds", "compute a bounds report");
  add_model_options(bounds, margs);
  bounds->add_flag("--skip-sdp", skip_sdp, "skip the NH and Holevo SDP bounds");
  bounds->add_option("--order", order, "quadrature order per axis (0 = default)");
  bounds->add_option("--out", out, "output path (default stdout)");
  bounds->add_option("--format", format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* sweep = app.add_subcommand("sweep", "sweep a model parameter");
  add_model_options(sweep, margs);
  sweep->add_option("--vary", vary, "name=a:b or name=a:b:count")->required();
  sweep->add_flag("--skip-sdp", skip_sdp, "skip the NH and Holevo SDP bounds");
  sweep->add_option("--order", order, "quadrature order per axis (0 = default)");
  sweep->add_option("--out", out, "output path (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "verify POVM optimality");
  add_model_options(verify, margs);
  verify
      ->add_option("--povm", povm_spec,
                   "POVM file, or spm:<param index>, or pauli:<copies>")
      ->required();
  verify->add_option("--grid-per-axis", grid_per_axis, "scan grid resolution");
  verify->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << app.help() << "\n";
    return kExitUsage;
  }

  try {
    if (bounds->parsed()) return run_bounds(margs, skip_sdp, order, out, format);
    if (sweep->parsed()) return run_sweep(margs, vary, skip_sdp, order, out);
    if (verify->parsed())
      return run_verify(margs, povm_spec, grid_per_axis, out);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const qbb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  }
  return kExitUsage;
}
