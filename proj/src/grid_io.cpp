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
#include <sstream>

#include "qbb/errors.hpp"
#include "qbb/linops.hpp"
#include "qbb/model.hpp"

namespace qbb {
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

// next content line (skips blanks and # comments)
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

Model parse_grid_model(std::istream& in, const std::string& origin) {
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

  Model m;
  m.name = "grid";
  m.d = d;
  m.dim = dim;
  m.weight = RMat::zero(d, d);
  for (int r = 0; r < d; ++r) {
    if (!next_line(in, s, line)) fail(origin, line, "missing weight matrix row");
    const auto row = parse_floats(s, origin, line, "weight");
    if (int(row.size()) != d)
      fail(origin, line, "weight row needs " + std::to_string(d) + " entries");
    for (int c = 0; c < d; ++c) m.weight(r, c) = row[c];
  }

  m.symmetry.resize(d);
  for (int i = 0; i < d; ++i) {
    if (!next_line(in, s, line)) fail(origin, line, "missing symmetry tag");
    std::istringstream iss(s);
    std::string tag;
    iss >> tag;
    if (tag == "f=identity")
      m.symmetry[i] = SymmetryMap::Identity;
    else if (tag == "f=log")
      m.symmetry[i] = SymmetryMap::Log;
    else
      fail(origin, line, "symmetry tag must be f=identity or f=log");
  }

  double wsum = 0.0;
  while (next_line(in, s, line)) {
    // theta: <...> | w: <...> | rho: <...>
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t p = s.find('|'); ; p = s.find('|', start)) {
      parts.push_back(s.substr(start, p == std::string::npos ? p : p - start));
      if (p == std::string::npos) break;
      start = p + 1;
    }
    if (parts.size() != 3) fail(origin, line, "record needs theta | w | rho");

    auto strip_key = [&](std::string part, const char* key) {
      const auto kp = part.find(key);
      if (kp == std::string::npos)
        fail(origin, line, std::string("record field missing '") + key + "'");
      return part.substr(kp + std::string(key).size());
    };

    GridRecord rec;
    rec.theta = parse_floats(strip_key(parts[0], "theta:"), origin, line, "theta");
    if (int(rec.theta.size()) != d)
      fail(origin, line, "theta needs " + std::to_string(d) + " values");
    const auto wv = parse_floats(strip_key(parts[1], "w:"), origin, line, "w");
    if (wv.size() != 1) fail(origin, line, "w needs exactly one value");
    rec.w = wv[0];
    if (rec.w < 0.0) fail(origin, line, "record weight must be nonnegative");
    const auto rv = parse_floats(strip_key(parts[2], "rho:"), origin, line, "rho");
    if (int(rv.size()) != 2 * dim * dim)
      fail(origin, line,
           "rho needs " + std::to_string(2 * dim * dim) + " floats (re,im pairs)");
    rec.rho = CMat(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        rec.rho(r, c) = cplx{rv[2 * (r * dim + c)], rv[2 * (r * dim + c) + 1]};

    HermitianOp h(rec.rho);  // throws InvalidOperator on asymmetry
    if (std::abs(trace_real(h) - 1.0) > 1e-6)
      throw ModelError(origin + ":" + std::to_string(line) +
                       ": record state trace != 1");
    if (min_eigval(h) < -1e-9)
      throw ModelError(origin + ":" + std::to_string(line) +
                       ": record state is not PSD");
    for (int i = 0; i < d; ++i)
      if (m.symmetry[i] == SymmetryMap::Log && !(rec.theta[i] > 0.0))
        throw ModelError(origin + ":" + std::to_string(line) +
                         ": log-mapped parameter must be positive");
    wsum += rec.w;
    m.records.push_back(std::move(rec));
  }

  if (m.records.empty()) fail(origin, line, "no records");
  if (std::abs(wsum - 1.0) > 1e-6)
    throw ParseError(origin + ": record weights sum to " + std::to_string(wsum) +
                     ", expected 1");
  return m;
}

Model load_grid_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open grid model file");
  return parse_grid_model(in, path);
}

}  // namespace qbb
