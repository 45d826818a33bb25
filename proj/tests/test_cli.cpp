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

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& out_file) {
  const std::string cmd = std::string(QBB_CLI_PATH) + " " + args +
                          " > " + out_file + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

}  // namespace

TEST_CASE("bounds subcommand emits the closed-form report") {
  const RunResult r = run_cli(
      "bounds --model imaging --d 2 --n 4 --alpha 1.4142135 --skip-sdp",
      "/tmp/qbb_cli_1.json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["losses"]["SPM"].get<double>() == doctest::Approx(0.1639501).epsilon(1e-5));
  CHECK(j["losses"]["PGM_star"].get<double>() ==
        doctest::Approx(0.1899917).epsilon(1e-5));
  CHECK(j["flags"]["hierarchy_ok"].get<bool>());
  CHECK(j["model"]["name"] == "imaging");
}

TEST_CASE("bounds reports are byte-identical across runs") {
  const RunResult a = run_cli(
      "bounds --model planar --w1 0.83 --w2 0.5 --beta 0.07 --skip-sdp",
      "/tmp/qbb_cli_2a.json");
  const RunResult b = run_cli(
      "bounds --model planar --w1 0.83 --w2 0.5 --beta 0.07 --skip-sdp",
      "/tmp/qbb_cli_2b.json");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  // edge-concentrated prior: the 2 L_SPM upper bound is nontrivial here
  CHECK(j["flags"]["upper_nontrivial"].get<bool>());
}

TEST_CASE("bounds with the full SDP stack sets the certified range") {
  const RunResult r = run_cli("bounds --model planar --w1 0.6 --w2 0.5 --beta 1",
                              "/tmp/qbb_cli_3.json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const double ilo = j["certified_range"][0].get<double>();
  const double ihi = j["certified_range"][1].get<double>();
  CHECK(ilo >= 0.0);
  CHECK(ilo <= ihi + 1e-6);
  CHECK(j["losses"].contains("NH"));
  CHECK(j["losses"].contains("Holevo"));
  CHECK(j["solver"]["status"] == "optimal/optimal");
}

TEST_CASE("missing grid file exits 65") {
  const RunResult r =
      run_cli("bounds --model grid:missing.txt", "/tmp/qbb_cli_4.json");
  CHECK(r.exit_code == 65);
}

TEST_CASE("bad flags exit 64") {
  const RunResult r = run_cli("bounds --model imaging --format yaml",
                              "/tmp/qbb_cli_5.json");
  CHECK(r.exit_code == 64);
  const RunResult r2 = run_cli("nonsense", "/tmp/qbb_cli_6.json");
  CHECK(r2.exit_code == 64);
}

TEST_CASE("sweep produces a stable CSV") {
  const RunResult r = run_cli(
      "sweep --model planar --w1 0.6 --w2 0.5 --vary beta=0.2:1.0:3 --skip-sdp",
      "/tmp/qbb_cli_7.csv");
  CHECK(r.exit_code == 0);
  std::istringstream ss(r.out);
  std::string header;
  std::getline(ss, header);
  CHECK(header.rfind("beta,prior,SPM", 0) == 0);
  int rows = 0;
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);

  const RunResult again = run_cli(
      "sweep --model planar --w1 0.6 --w2 0.5 --vary beta=0.2:1.0:3 --skip-sdp",
      "/tmp/qbb_cli_7b.csv");
  CHECK(again.out == r.out);
}

TEST_CASE("empty sweep range exits 64") {
  const RunResult r = run_cli(
      "sweep --model planar --vary beta=1:0 --skip-sdp", "/tmp/qbb_cli_8.csv");
  CHECK(r.exit_code == 64);
}

TEST_CASE("verify accepts the generated SPM measurement and rejects others") {
  const RunResult pass = run_cli(
      "verify --model imaging --d 1 --n 4 --alpha 1 --povm spm:0",
      "/tmp/qbb_cli_9.json");
  CHECK(pass.exit_code == 0);
  const auto j = nlohmann::json::parse(pass.out);
  CHECK(j["passed"].get<bool>());
  // trace(Upsilon) = L_SPM for the attainable single-parameter measurement
  CHECK(j["trace_upsilon"].get<double>() ==
        doctest::Approx((M_PI * M_PI / 3.0 - 1.0) / 16.0).epsilon(1e-7));

  // the trivial identity strategy labelled with the prior mean fails
  {
    std::ofstream f("/tmp/qbb_cli_identity_povm.txt");
    f << "d=2 dim=2\n"
      << "element: 1 0 0 0 0 0 1 0 | estimate: 0 0\n";
  }
  const RunResult fail = run_cli(
      "verify --model planar --w1 0.6 --w2 0.5 --beta 1 "
      "--povm /tmp/qbb_cli_identity_povm.txt",
      "/tmp/qbb_cli_10.json");
  CHECK(fail.exit_code == 3);

  const RunResult bad = run_cli(
      "verify --model planar --w1 0.6 --w2 0.5 --povm /nonexistent/p.txt",
      "/tmp/qbb_cli_11.json");
  CHECK(bad.exit_code == 65);

  // a label-free POVM cannot be verified
  const RunResult nolabels = run_cli(
      "verify --model planar --w1 0.6 --w2 0.5 --beta 1 --povm pauli:1",
      "/tmp/qbb_cli_12.json");
  CHECK(nolabels.exit_code == 65);
}
