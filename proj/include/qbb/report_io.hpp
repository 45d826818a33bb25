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

#ifndef QBB_REPORT_IO_HPP
#define QBB_REPORT_IO_HPP

#include <optional>
#include <string>

#include "qbb/bounds.hpp"
#include "qbb/povm.hpp"

namespace qbb {

// Canonical JSON report: ordered keys, floats with 17 significant digits,
// byte-identical across runs with identical inputs.
std::string report_to_json(const Model& model, const BoundsReport& rep,
                           const ReportOptions& options);

// Stable sweep CSV schema; columns absent from a run (e.g. SDP bounds under
// --skip-sdp) are emitted as nan.
std::string sweep_csv_header(const std::string& var_name);
std::string sweep_csv_row(double var_value, const BoundsReport& rep,
                          std::optional<double> tomography_msl);

std::string certificate_to_json(const Model& model,
                                const OptimalityCertificate& cert);

// %.17g formatting used across all writers.
std::string fmt_double(double v);

}  // namespace qbb

#endif  // QBB_REPORT_IO_HPP
