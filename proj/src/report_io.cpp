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

#include "qbb/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qbb {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

const char* const kLossKeys[] = {"prior",  "SPM", "two_SPM",  "RPM",
                                 "monotone_SQRT", "PGM", "PGM_star", "NH",
                                 "Holevo"};
const char* const kIncompatKeys[] = {"I_prior", "I_RPM",      "I_PGM",
                                     "I_PGM_star", "I_NH", "I_H"};

double lookup(const std::map<std::string, double>& m, const std::string& k) {
  const auto it = m.find(k);
  return it == m.end() ? std::nan("") : it->second;
}

}  // namespace

std::string report_to_json(const Model& model, const BoundsReport& rep,
                           const ReportOptions& options) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"model\": {\n    \"name\": \"" << model.name << "\",\n";
  os << "    \"params\": {";
  bool first = true;
  for (const auto& [k, v] : model.params) {
    os << (first ? "" : ", ") << "\"" << k << "\": " << fmt_double(v);
    first = false;
  }
  os << "}\n  },\n";

  os << "  \"options\": {\n";
  os << "    \"skip_sdp\": " << (options.run_sdp ? "false" : "true") << ",\n";
  os << "    \"quad_order\": " << options.quad_order << ",\n";
  os << "    \"sdp_gap_tol\": " << fmt_double(options.sdp.gap) << ",\n";
  os << "    \"sdp_feas_tol\": " << fmt_double(options.sdp.feas) << "\n";
  os << "  },\n";

  os << "  \"losses\": {";
  first = true;
  for (const char* k : kLossKeys) {
    if (!rep.losses.count(k)) continue;
    os << (first ? "" : ", ") << "\"" << k << "\": "
       << fmt_double(rep.losses.at(k));
    first = false;
  }
  os << "},\n";

  os << "  \"incompat\": {";
  first = true;
  for (const char* k : kIncompatKeys) {
    if (!rep.incompat.count(k)) continue;
    os << (first ? "" : ", ") << "\"" << k << "\": "
       << fmt_double(rep.incompat.at(k));
    first = false;
  }
  os << "},\n";

  os << "  \"certified_range\": [" << fmt_double(rep.certified_range.first)
     << ", " << fmt_double(rep.certified_range.second) << "],\n";
  os << "  \"gain\": " << fmt_double(rep.gain) << ",\n";
  os << "  \"pseudo_gain\": " << fmt_double(rep.pseudo_gain) << ",\n";

  os << "  \"flags\": {";
  os << "\"pgm_trivial\": " << (rep.pgm_trivial ? "true" : "false");
  os << ", \"two_spm_trivial\": " << (rep.two_spm_trivial ? "true" : "false");
  os << ", \"upper_nontrivial\": " << (rep.upper_nontrivial ? "true" : "false");
  os << ", \"hierarchy_ok\": "
     << (rep.hierarchy_violations.empty() ? "true" : "false");
  os << "},\n";

  os << "  \"hierarchy_violations\": [";
  for (std::size_t i = 0; i < rep.hierarchy_violations.size(); ++i)
    os << (i ? ", " : "") << "\"" << rep.hierarchy_violations[i] << "\"";
  os << "],\n";

  os << "  \"solver\": {";
  os << "\"iterations\": " << rep.sdp_iterations;
  os << ", \"gap\": " << fmt_double(rep.sdp_gap);
  os << ", \"status\": \"" << rep.sdp_status << "\"";
  os << "}\n";
  os << "}\n";
  return os.str();
}

std::string sweep_csv_header(const std::string& var_name) {
  std::ostringstream os;
  os << var_name;
  for (const char* k : kLossKeys) os << "," << k;
  for (const char* k : kIncompatKeys) os << "," << k;
  os << ",I_low,I_high,tomography,I_tom,gain,pseudo_gain"
     << ",pgm_trivial,two_spm_trivial,upper_nontrivial,hierarchy_ok";
  return os.str();
}

std::string sweep_csv_row(double var_value, const BoundsReport& rep,
                          std::optional<double> tomography_msl) {
  std::ostringstream os;
  os << fmt_double(var_value);
  for (const char* k : kLossKeys) os << "," << fmt_double(lookup(rep.losses, k));
  for (const char* k : kIncompatKeys)
    os << "," << fmt_double(lookup(rep.incompat, k));
  os << "," << fmt_double(rep.certified_range.first) << ","
     << fmt_double(rep.certified_range.second);
  if (tomography_msl) {
    os << "," << fmt_double(*tomography_msl);
    const double spm = rep.losses.at("SPM");
    os << "," << fmt_double(*tomography_msl / spm - 1.0);
  } else {
    os << ",nan,nan";
  }
  os << "," << fmt_double(rep.gain) << "," << fmt_double(rep.pseudo_gain);
  os << "," << (rep.pgm_trivial ? 1 : 0) << "," << (rep.two_spm_trivial ? 1 : 0)
     << "," << (rep.upper_nontrivial ? 1 : 0) << ","
     << (rep.hierarchy_violations.empty() ? 1 : 0);
  return os.str();
}

std::string certificate_to_json(const Model& model,
                                const OptimalityCertificate& cert) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"model\": \"" << model.name << "\",\n";
  os << "  \"passed\": " << (cert.passed ? "true" : "false") << ",\n";
  os << "  \"trace_upsilon\": " << fmt_double(cert.trace_upsilon) << ",\n";
  os << "  \"hermiticity_residual\": " << fmt_double(cert.hermiticity_residual)
     << ",\n";
  os << "  \"min_eig_over_grid\": " << fmt_double(cert.min_eig_over_grid)
     << ",\n";
  os << "  \"grid_points_checked\": " << cert.grid_points_checked << "\n";
  os << "}\n";
  return os.str();
}

}  // namespace qbb
