// Copyright 2026 The cphase-workbench Authors
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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cphase/cli.hpp"

using namespace cphase;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cphase");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cphase_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("simulate |11> at phi = pi") {
  const auto r = cli({"simulate", "--phi", "3.141592653589793", "--target", "0,0:1,0", "--control", "0,0:1,0"});
  CHECK(r.status == 0);
  CHECK(r.out.find("herald_probability: 0.0208333333333") != std::string::npos);
  CHECK(r.out.find("relative_phase_rad: 3.14159265359") != std::string::npos);
}

TEST_CASE("simulate |00> at phi = 0 is the identity") {
  const auto path = scratch("sim.csv");
  const auto r = cli({"simulate", "--phi", "0", "--target", "1,0:0,0", "--control", "1,0:0,0", "--out",
                      path.string()});
  CHECK(r.status == 0);
  const auto csv = slurp(path);
  CHECK(csv.rfind("phi_rad,herald_probability,amp_00_re", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  // Only the |00> amplitude survives.
  CHECK(csv.find(",0,0,0,0,0,0,0,1\n") != std::string::npos);
}

TEST_CASE("error statuses") {
  const auto missing = cli({"simulate", "--netlist", "/nonexistent/netlist.json"});
  CHECK(missing.status == 2);
  CHECK(missing.err.find("/nonexistent/netlist.json") != std::string::npos);

  CHECK(cli({"simulate", "--target", "garbage"}).status == 2);
  CHECK(cli({"simulate", "--target", "1,0:1,0"}).status == 2);
  CHECK(cli({"bogus"}).status == 2);
  CHECK(cli({"design"}).status == 2);

  const auto bad = scratch("bad_netlist.json");
  std::ofstream(bad) << R"({"ports": ["a"], "elements": [], "sources": [], "herald": [],
      "encoding": {"target": {"input": "a", "output": "a"}, "control": {"input": "a", "output": "a"},
      "program": "a"}})";
  CHECK(cli({"truth-table", "--netlist", bad.string()}).status == 3);

  const auto sweep = cli({"sweep"});
  CHECK(sweep.status == 2);
  CHECK(sweep.err.find("sensitivit") != std::string::npos);
}

TEST_CASE("truth table rows and flag") {
  const auto r = cli({"truth-table", "--phi", "1.5707963267948966"});
  CHECK(r.status == 0);
  CHECK(r.out.find("(diagonal: pass)") != std::string::npos);
  CHECK(r.out.find("input,herald_probability,out_00_re") != std::string::npos);
  CHECK(r.out.find("\n11,0.0208333333333,") != std::string::npos);
}

TEST_CASE("design reports candidates") {
  const auto pbs = cli({"design", "--element", "pbs", "--count", "3"});
  CHECK(pbs.status == 0);
  CHECK(pbs.out.find("\n1,70.72") != std::string::npos);
  const auto f2 = cli({"design", "--element", "f2"});
  CHECK(f2.out.find("10,83.2,0.275745643") != std::string::npos);
}

TEST_CASE("sweep table is byte-identical across runs; plot only on request") {
  const auto csv1 = scratch("s1.csv"), csv2 = scratch("s2.csv"), svg = scratch("s.svg");
  std::filesystem::remove(svg);
  const std::vector<std::string> base{"sweep", "--dimension", "gap", "--sens-h", "0.01", "--sens-v", "0.02"};
  auto a = base;
  a.insert(a.end(), {"--out", csv1.string()});
  CHECK(cli(a).status == 0);
  CHECK_FALSE(std::filesystem::exists(svg));
  auto b = base;
  b.insert(b.end(), {"--out", csv2.string(), "--plot", svg.string()});
  CHECK(cli(b).status == 0);
  CHECK(std::filesystem::exists(svg));
  const auto t1 = slurp(csv1);
  CHECK(t1 == slurp(csv2));
  CHECK(std::count(t1.begin(), t1.end(), '\n') == 22);
}

TEST_CASE("netlist export round-trips through the CLI") {
  const auto path = scratch("exported.json");
  CHECK(cli({"netlist", "--out", path.string()}).status == 0);
  const auto r = cli({"truth-table", "--netlist", path.string(), "--phi", "0.5"});
  CHECK(r.status == 0);
  CHECK(r.out.find("(diagonal: pass)") != std::string::npos);
}
