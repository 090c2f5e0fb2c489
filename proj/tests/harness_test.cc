// Copyright 2026 The smoothpd Authors
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
#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "experiment.h"
#include "generators.h"
#include "smoothpd/apps/facility.h"
#include "smoothpd/errors.h"
#include "smoothpd/json_io.h"

namespace smoothpd::tools {
namespace {

TEST(Generators, SameSeedSameInstance) {
  for (const char* kind : {"general", "covering", "routing", "vecsched", "energy",
                           "prize", "facility"}) {
    EXPECT_EQ(GenerateInstanceJson(kind, "{}", 7), GenerateInstanceJson(kind, "{}", 7))
        << kind;
    EXPECT_NE(GenerateInstanceJson(kind, "{}", 7), GenerateInstanceJson(kind, "{}", 8))
        << kind;
  }
}

TEST(Generators, SizeZeroIsEmpty) {
  GeneralGenSpec g;
  g.requests = 0;
  EXPECT_EQ(GenerateGeneral(g).num_requests(), 0u);
  CoveringGenSpec c;
  c.rows = 0;
  EXPECT_TRUE(GenerateCovering(c).rows.empty());
  VecSchedGenSpec v;
  v.jobs = 0;
  EXPECT_TRUE(GenerateVecSched(v).jobs.empty());
  EnergyGenSpec e;
  e.jobs = 0;
  EXPECT_TRUE(GenerateEnergy(e).jobs.empty());
  FacilityGenSpec f;
  f.clients = 0;
  EXPECT_EQ(GenerateFacility(f).clients, 0);
  RoutingGenSpec r;
  r.requests = 0;
  EXPECT_TRUE(GenerateRouting(r).requests.empty());
}

TEST(Generators, FacilityMetricPassesTriangleCheck) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    FacilityGenSpec spec;
    spec.seed = seed;
    spec.facilities = 4;
    spec.clients = 7;
    const auto inst = GenerateFacility(spec);
    EXPECT_FALSE(CheckMetric(inst.dist).has_value()) << seed;
  }
}

TEST(Generators, CoveringRowsAreSatisfiable) {
  for (const char* family : {"polynomial", "norm_sum", "piecewise_power", "submodular"}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      CoveringGenSpec spec;
      spec.family = family;
      spec.seed = seed;
      const auto inst = GenerateCovering(spec);
      inst.Validate();
      for (const auto& row : inst.rows) {
        double sum = 0;
        for (const auto& [e, b] : row.b) sum += b;
        EXPECT_GE(sum, 1.0);
        EXPECT_LE(static_cast<int>(row.b.size()), spec.d);
      }
    }
  }
}

TEST(Generators, BadSizesAreRejected) {
  GeneralGenSpec g;
  g.requests = -1;
  EXPECT_THROW(GenerateGeneral(g), InputError);
}

TEST(Experiment, EmptyListGivesHeaderOnly) {
  const auto report = RunExperiments(R"({"experiments":[]})");
  EXPECT_TRUE(report.rows.empty());
  EXPECT_EQ(report.failures, 0);
  EXPECT_EQ(ToCsv(report.rows), CsvHeader() + "\n");
}

TEST(Experiment, OversizedDualCheckIsMarkedSkipped) {
  const auto report = RunExperiments(R"({"experiments":[{"algorithm":"greedy",
      "requests":14,"resources":1,"strategies":1,"degree":2,"seeds":[1],
      "check_dual":true,"dual_n_max":12}]})");
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_EQ(report.rows[0].dual_feasible, "SKIPPED");
  EXPECT_NE(CsvLine(report.rows[0]).find("SKIPPED"), std::string::npos);
}

TEST(Experiment, KeyValueConfigMatchesJson) {
  const std::string kv =
      "threads = 2\n"
      "[experiment]\n"
      "algorithm = greedy\n"
      "seed_start = 1\n"
      "seed_count = 3\n"
      "requests = 5\n"
      "[experiment]\n"
      "algorithm = vecsched\n"
      "seeds = 4, 5\n";
  const auto a = RunExperiments(kv);
  const auto b = RunExperiments(NormalizeConfig(kv));
  EXPECT_EQ(a.rows.size(), 5u);
  EXPECT_EQ(ToCsv(a.rows), ToCsv(b.rows));
  EXPECT_EQ(a.failures, 0);
}

TEST(Experiment, OutputIsIndependentOfThreadCount) {
  const std::string base = R"("experiments":[{"algorithm":"cover","family":"polynomial",
      "n":3,"rows":3,"d":2,"dtau":0.001,"seed_start":1,"seed_count":4},
      {"algorithm":"energy","seeds":[1,2,3]}])";
  const auto one = RunExperiments("{\"threads\":1," + base + "}");
  const auto four = RunExperiments("{\"threads\":4," + base + "}");
  EXPECT_EQ(ToCsv(one.rows), ToCsv(four.rows));
}

TEST(Experiment, MalformedConfigIsInputError) {
  EXPECT_THROW(RunExperiments(R"({"experiments":[{"algorithm":"nope"}]})"), InputError);
  EXPECT_THROW(RunExperiments("{"), InputError);
}

// The command line tool, run as a subprocess.
struct CliResult {
  int code = 0;
  std::string out;
};

CliResult Cli(const std::string& args) {
  const std::string cmd = std::string(SMOOTHPD_CLI_PATH) + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::array<char, 4096> buf;
  while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WEXITSTATUS(status);
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("smoothpd_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string Write(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    WriteFile(p, text);
    return p;
  }
  std::filesystem::path dir_;
};

TEST_F(CliTest, SmoothnessVerify) {
  const auto lin = Write("lin.json", R"({"kind":"polynomial","coeffs":[0,1],"weights":[1,1,1]})");
  auto r = Cli("smoothness verify --instance " + lin + " --lambda 1 --mu 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "HOLDS\n");
  const auto sq = Write("sq.json", R"({"kind":"polynomial","coeffs":[0,0,1],"weights":[1,1]})");
  r = Cli("smoothness verify --instance " + sq + " --lambda 1 --mu 0");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("counterexample"), std::string::npos);
}

TEST_F(CliTest, GreedyRunAndExitCodes) {
  const auto inst = Write("g.json", GenerateInstanceJson("general", "{}", 3));
  auto r = Cli("greedy run --instance " + inst + " --check-dual --oracle");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"ratio\""), std::string::npos);
  const auto bad = Write("bad.json", "{not json");
  r = Cli("greedy run --instance " + bad);
  EXPECT_EQ(r.code, 2);
  r = Cli("greedy run --instance " + inst + " --lambda 1 --mu 0 --check-dual");
  EXPECT_EQ(r.code, 1);  // (1,0) is too optimistic for quadratics
}

TEST_F(CliTest, GenerateIsDeterministic) {
  const auto a = (dir_ / "a.json").string();
  const auto b = (dir_ / "b.json").string();
  EXPECT_EQ(Cli("generate --kind covering --seed 5 --set n=3 --out " + a).code, 0);
  EXPECT_EQ(Cli("generate --kind covering --seed 5 --set n=3 --out " + b).code, 0);
  EXPECT_EQ(ReadFile(a), ReadFile(b));
}

TEST_F(CliTest, CoverRunOnUntruncatedRows) {
  const auto inst = Write("cover.json", R"({"cost":{"kind":"polynomial","coeffs":[0,1,1]},
    "resources":2,"d":2,"rows":[{"id":0,"b":{"0":1,"1":1}}]})");
  const auto r = Cli("cover run --instance " + inst);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"lemma2_ok\": \"yes\""), std::string::npos) << r.out;
}

TEST_F(CliTest, ExperimentEmptyConfig) {
  const auto cfg = Write("empty.json", R"({"experiments":[]})");
  const auto csv = (dir_ / "out.csv").string();
  EXPECT_EQ(Cli("experiment --config " + cfg + " --csv " + csv).code, 0);
  EXPECT_EQ(ReadFile(csv), CsvHeader() + "\n");
}

}  // namespace
}  // namespace smoothpd::tools
