// Copyright 2026 The gausscx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace gausscx::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "gausscx");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(GAUSSCX_TEST_DATA) + "/" + name; }

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("gausscx_cli_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(CliComplexityTest, SqueezedTarget) {
  const auto r = invoke({"complexity", data("reference.json"), data("squeezed_r1.5.json")});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = r.parsed();
  EXPECT_NEAR(j["complexity"].get<double>(), 1.5, 1e-12);
  EXPECT_NEAR(j["generator"][0][0].get<double>(), 1.5, 1e-12);
  EXPECT_EQ(j["delta_eigenvalues"].size(), 2u);
  EXPECT_NEAR(j["delta_eigenvalues"][1].get<double>(), std::exp(3.0), 1e-12);
}

TEST(CliComplexityTest, IdenticalStatesPrintExactZero) {
  const auto r = invoke({"complexity", data("reference.json"), data("reference.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"complexity\": 0.0,"), std::string::npos) << r.out;
}

TEST(CliComplexityTest, FermionSpectrumIsComplex) {
  const auto r =
      invoke({"complexity", data("fermion_reference.json"), data("fermion_rotated.json")});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = r.parsed();
  EXPECT_NEAR(j["complexity"].get<double>(), 0.7 / std::numbers::sqrt2, 1e-12);
  for (const auto& e : j["delta_eigenvalues"]) {
    ASSERT_EQ(e.size(), 2u);
    EXPECT_NEAR(std::hypot(e[0].get<double>(), e[1].get<double>()), 1.0, 1e-12);
  }
}

TEST(CliComplexityTest, ThermalInputIsRejected) {
  const auto r = invoke({"complexity", data("reference.json"), data("thermal.json")});
  EXPECT_EQ(r.code, 3);
  const auto j = r.parsed();
  EXPECT_EQ(j["error"], "NotPure");
  EXPECT_NE(j["message"].get<std::string>().find("NotPure"), std::string::npos);
}

TEST(CliComplexityTest, DisplacedTargetNeedsCoherentCommand) {
  const auto r = invoke({"complexity", data("reference.json"), data("coherent_3_4.json")});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.parsed()["error"], "DisplacementPresent");
}

TEST(CliComplexityTest, CsvFormat) {
  const auto r = invoke({"complexity", data("reference.json"), data("squeezed_r1.json"),
                         "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "complexity");
  EXPECT_NEAR(std::stod(r.out.substr(r.out.find('\n') + 1)), 1.0, 1e-12);
}

TEST(CliCoherentTest, DisplacementAnchor) {
  const auto r = invoke({"coherent", data("reference.json"), data("coherent_3_4.json")});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = r.parsed();
  EXPECT_NEAR(j["complexity"].get<double>(), 5.0, 1e-12);
  EXPECT_EQ(j["z_target"], json::parse("[3.0, 4.0]"));
  EXPECT_TRUE(j.contains("N_matrix"));
}

TEST(CliCoherentTest, ZeroDisplacementMatchesComplexity) {
  const auto a = invoke({"coherent", data("reference.json"), data("squeezed_r0.8.json")});
  const auto b = invoke({"complexity", data("reference.json"), data("squeezed_r0.8.json")});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_NEAR(a.parsed()["complexity"].get<double>(), b.parsed()["complexity"].get<double>(),
              1e-14);
}

TEST(CliCoherentTest, FermionWithDisplacementIsRejected) {
  const auto r = invoke({"coherent", data("fermion_reference.json"), data("fermion_displaced.json")});
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(r.parsed().contains("error"));
}

TEST(CliWeylTest, ConstantZeroIsBaseComplexity) {
  const auto r = invoke({"weyl", data("reference.json"), data("squeezed_r1.5.json"), "--omega",
                         "const:0"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = r.parsed();
  EXPECT_EQ(j["complexity"].get<double>(), j["base_complexity"].get<double>());
}

TEST(CliWeylTest, LinearFactors) {
  auto r = invoke({"weyl", data("reference.json"), data("squeezed_r1.json"), "--omega",
                   "linear:1.0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(r.parsed()["complexity"].get<double>(), std::numbers::e - 1.0, 1e-8);
  r = invoke({"weyl", data("reference.json"), data("squeezed_r0.5.json"), "--omega",
              "linear:2.0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(r.parsed()["complexity"].get<double>(), (std::numbers::e - 1.0) / 2.0, 1e-8);
}

TEST(CliWeylTest, TabulatedFactor) {
  ScratchDir dir("weyl_table");
  {
    std::ofstream table(dir.file("omega.csv"));
    table << "r,omega\n";
    for (int k = 0; k <= 10; ++k) table << 0.2 * k << ',' << 0.2 * k << '\n';
  }
  const auto r = invoke({"weyl", data("reference.json"), data("squeezed_r1.json"), "--omega",
                         "table:" + dir.file("omega.csv")});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(r.parsed()["complexity"].get<double>(), std::numbers::e - 1.0, 1e-8);
}

TEST(CliWeylTest, BadSpecs) {
  for (const char* spec : {"cubic:1", "linear:x", "table:/nonexistent.csv", "const"}) {
    const auto r =
        invoke({"weyl", data("reference.json"), data("squeezed_r1.json"), "--omega", spec});
    EXPECT_EQ(r.code, 3) << spec;
    EXPECT_EQ(r.parsed()["error"], "ParseError") << spec;
  }
  const auto r = invoke({"weyl", data("reference.json"), data("squeezed_r1.json"), "--omega",
                         "linear:1", "--quad-steps", "1"});
  EXPECT_EQ(r.code, 3);
}

TEST(CliNonrevTest, GradientPotentialBreaksReversal) {
  const auto r = invoke({"nonrev", "--start", "0,0", "--velocity", "1,0", "--potential",
                         "grad:h=0.5r", "--length", "2"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = r.parsed();
  EXPECT_NEAR(j["forward_cost"].get<double>(), 1.0, 1e-10);
  EXPECT_NEAR(j["reverse_cost"].get<double>(), 3.0, 1e-10);
  EXPECT_NEAR(j["length"].get<double>(), 2.0, 1e-10);
}

TEST(CliNonrevTest, NoPotentialIsReversible) {
  const auto r = invoke({"nonrev", "--start", "0.5,0.3", "--velocity", "0.2,1", "--length",
                         "1.5"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = r.parsed();
  EXPECT_NEAR(j["forward_cost"].get<double>(), j["length"].get<double>(), 1e-12);
  EXPECT_NEAR(j["reverse_cost"].get<double>(), j["length"].get<double>(), 1e-12);
  EXPECT_NEAR(j["length"].get<double>(), 1.5, 1e-5);
}

TEST(CliNonrevTest, ModulatedField) {
  const auto r = invoke({"nonrev", "--start", "0.5,0", "--velocity", "0,1", "--potential",
                         "field:f0=0.2r,eps=0.5", "--length", "1"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_FALSE(r.parsed()["reached_chart_boundary"].get<bool>());
}

TEST(CliNonrevTest, OversizedPotential) {
  const auto r = invoke({"nonrev", "--potential", "const:1.5", "--length", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.parsed()["error"], "PotentialTooLarge");
}

TEST(CliNonrevTest, PathSamples) {
  ScratchDir dir("path_csv");
  const auto r = invoke({"nonrev", "--length", "2", "--rk-steps", "8", "--format", "csv",
                         "--path-csv", dir.file("path.csv")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "tau,r,phi,cost_accumulated");
  EXPECT_NE(r.out.find("\n1,2,0,2\n"), std::string::npos) << r.out;
  std::ifstream in(dir.file("path.csv"));
  std::stringstream file;
  file << in.rdbuf();
  EXPECT_EQ(file.str(), r.out);
}

TEST(CliNonrevTest, BadPotentialSpecs) {
  for (const char* spec : {"grad:0.5r", "grad:h=r^", "field:f0=r", "magnetic:1"}) {
    const auto r = invoke({"nonrev", "--potential", spec, "--length", "1"});
    EXPECT_EQ(r.code, 3) << spec;
    EXPECT_EQ(r.parsed()["error"], "ParseError") << spec;
  }
}

TEST(CliOracleTest, SqueezedTarget) {
  const auto r = invoke({"oracle-verify", data("reference.json"), data("squeezed_r0.8.json")});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = r.parsed();
  EXPECT_NEAR(j["closed_form"].get<double>(), 0.8, 1e-12);
  EXPECT_LT(std::abs(j["relative_gap"].get<double>()), 0.01);
}

TEST(CliOracleTest, TrivialTarget) {
  const auto r = invoke({"oracle-verify", data("reference.json"), data("reference.json")});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = r.parsed();
  EXPECT_EQ(j["closed_form"].get<double>(), 0.0);
  EXPECT_EQ(j["oracle_length"].get<double>(), 0.0);
}

TEST(CliOracleTest, NonConvergenceReportsBestFound) {
  const auto r = invoke({"oracle-verify", data("reference.json"), data("squeezed_r1.json"),
                         "--cold-start", "--restarts", "1", "--max-iterations", "1",
                         "--restoration-steps", "0"});
  EXPECT_EQ(r.code, 4);
  const auto j = r.parsed();
  EXPECT_EQ(j["error"], "NoConvergence");
  EXPECT_TRUE(std::isfinite(j["oracle_length"].get<double>()));
  EXPECT_GT(j["constraint_residual"].get<double>(), 1e-6);
}

TEST(CliOracleTest, OutputIsDeterministic) {
  const std::vector<std::string> args{"--seed", "42", "oracle-verify", data("reference.json"),
                                      data("squeezed_r0.8.json"), "--cold-start", "--restarts",
                                      "2"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
}

TEST(CliBatchTest, ProcessesDirectoryInOrder) {
  ScratchDir dir("batch");
  for (const char* f : {"squeezed_r1.json", "thermal.json", "squeezed_r0.5.json"}) {
    fs::copy_file(data(f), dir.path() / f);
  }
  const auto r = invoke({"--batch", dir.path().string(), "complexity", data("reference.json")});
  EXPECT_EQ(r.code, 3);
  const auto results = r.parsed()["results"];
  ASSERT_EQ(results.size(), 3u);
  EXPECT_EQ(results[0]["target"], "squeezed_r0.5.json");
  EXPECT_NEAR(results[0]["complexity"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(results[1]["target"], "squeezed_r1.json");
  EXPECT_EQ(results[2]["error"], "NotPure");

  const auto csv = invoke({"--batch", dir.path().string(), "--format", "csv", "complexity",
                           data("reference.json")});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "target,complexity,error,message");
  EXPECT_EQ(invoke({"--batch", dir.path().string(), "complexity", data("reference.json")}).out,
            r.out);
}

TEST(CliUsageTest, Errors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"complexity", data("reference.json"), "/nonexistent.json"},
           {"--tol", "-1", "complexity", data("reference.json"), data("reference.json")},
           {"--format", "xml", "complexity", data("reference.json"), data("reference.json")},
           {"complexity", data("reference.json")},
           {"nonrev"}}) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(r.parsed().contains("error")) << r.out;
  }
}

TEST(CliUsageTest, Help) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("oracle-verify"), std::string::npos);
}

}  // namespace
}  // namespace gausscx::cli
