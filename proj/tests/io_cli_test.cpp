// Copyright 2026 The qfilter Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "qfilter/cli.hpp"
#include "qfilter/errors.hpp"
#include "qfilter/io.hpp"

namespace qfilter {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fixture(const std::string& name) { return std::string(QFILTER_DATA_DIR) + "/" + name; }

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("qfilter_test_" + name);
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

TEST(ParseEnsemble, TrineFixture) {
  const Ensemble e = load_ensemble(fixture("trine.json"));
  EXPECT_EQ(e.size(), 3u);
  EXPECT_EQ(e.subset_size(), 1u);
}

TEST(ParseEnsemble, RawFixtureIsEmbedded) {
  const Ensemble e = load_ensemble(fixture("trine_raw_4d.json"));
  EXPECT_NEAR(solve(e).p_error, 1.0 / 6.0, 1e-12);
}

TEST(ParseEnsemble, PriorsSummingToPointNineNameTheSum) {
  try {
    parse_ensemble(R"({"states": [[[1,0],[0,0]], [[0,0],[1,0]]], "priors": [0.4, 0.5], "subset_size": 1})");
    FAIL() << "expected NormalizationError";
  } catch (const NormalizationError& e) {
    EXPECT_NE(std::string(e.what()).find("0.9"), std::string::npos) << e.what();
  }
}

TEST(ParseEnsemble, IndependentRawStatesRaiseRankError) {
  EXPECT_THROW(parse_ensemble(R"({"raw_states": [[[1,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]],
      [[0,0],[0,0],[1,0]]], "priors": [0.3, 0.3, 0.4], "subset_size": 1})"),
               RankError);
}

TEST(ParseEnsemble, SchemaViolations) {
  EXPECT_THROW(parse_ensemble("not json"), SchemaError);
  EXPECT_THROW(parse_ensemble("[]"), SchemaError);
  EXPECT_THROW(parse_ensemble(R"({"priors": [1], "subset_size": 1})"), SchemaError);
  EXPECT_THROW(parse_ensemble(R"({"states": [], "raw_states": [], "priors": [], "subset_size": 1})"),
               SchemaError);
  EXPECT_THROW(parse_ensemble(R"({"states": [[[1,0]]], "priors": [1], "subset_size": 1})"),
               SchemaError);
  EXPECT_THROW(parse_ensemble(R"({"states": [[[1,0],[0,0]], [[0,0],[1,0]]], "priors": [0.5, 0.5]})"),
               SchemaError);
  EXPECT_THROW(parse_ensemble(R"({"states": [[[1,"x"],[0,0]], [[0,0],[1,0]]], "priors": [0.5, 0.5], "subset_size": 1})"),
               SchemaError);
  EXPECT_THROW(parse_ensemble(R"({"states": [[[1,0],[0,0]], [[0,0],[1,0]]], "priors": [0.5, 0.5], "subset_size": -1})"),
               PartitionError);
}

TEST(ParseEnsemble, MissingFileIsIoError) {
  EXPECT_THROW(load_ensemble("/nonexistent/ensemble.json"), IoError);
}

TEST(ToJson, EnsembleRoundTrips) {
  const Ensemble e = load_ensemble(fixture("random_seed_42.json"));
  const Ensemble back = parse_ensemble(to_json(e));
  ASSERT_EQ(back.size(), e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    EXPECT_EQ(back.states()[k], e.states()[k]);
    EXPECT_EQ(back.priors()[k], e.priors()[k]);
  }
}

TEST(ToJson, SolutionFieldOrder) {
  const std::string text = to_json(solve(load_ensemble(fixture("trine.json"))));
  const json doc = json::parse(text);
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  // nlohmann::json sorts keys, so check the emitted order on the raw text.
  std::size_t last = 0;
  for (const char* key : {"\"p_max\"", "\"p_error\"", "\"R\"", "\"Q\"", "\"phi_e\"", "\"chi_e\"",
                          "\"mu\"", "\"nu\"", "\"degenerate\"", "\"decision\"", "\"p_max_rank_one\""}) {
    const std::size_t pos = text.find(key);
    ASSERT_NE(pos, std::string::npos) << key;
    EXPECT_GE(pos, last) << key;
    last = pos;
  }
  EXPECT_EQ(keys.size(), 11u);
  EXPECT_NEAR(doc["p_error"].get<double>(), 1.0 / 6.0, 1e-12);
}

TEST(FormatNumber, SeventeenSignificantDigits) {
  EXPECT_EQ(format_number(1.0 / 6.0), "0.16666666666666666");
  EXPECT_EQ(format_number(0.1, 15), "0.1");
}

TEST(WriteSweepCsv, HeaderAndRows) {
  std::ostringstream os;
  write_sweep_csv(os, ratio_sweep(0.1, 0.5, 4));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "beta,p_err_filter_formula,p_err_filter_solver,p_err_individual,ratio");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
  }
  EXPECT_EQ(rows, 4);
}

TEST(Cli, SolveTrine) {
  const CliRun r = run_cli({"solve", "--ensemble", fixture("trine.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"p_error\":0.16666666666666"), std::string::npos) << r.out;
}

TEST(Cli, OutputIsByteStable) {
  const auto a = run_cli({"solve", "--ensemble", fixture("random_seed_42.json")});
  const auto b = run_cli({"solve", "--ensemble", fixture("random_seed_42.json")});
  EXPECT_EQ(a.out, b.out);
  const auto c = run_cli({"simulate", "--ensemble", fixture("trine.json"), "--trials", "5000"});
  const auto d = run_cli({"simulate", "--ensemble", fixture("trine.json"), "--trials", "5000"});
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, SweepWritesHeaderPlusRows) {
  const fs::path out = temp_path("sweep.csv");
  const CliRun r = run_cli({"sweep", "--beta-min", "0.01", "--beta-max", "0.7853981633974483",
                            "--points", "100", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out);
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 101);
  fs::remove(out);
}

TEST(Cli, OracleCheckPassesOnShippedRandomEnsemble) {
  const CliRun r =
      run_cli({"oracle-check", "--ensemble", fixture("random_seed_42.json"), "--steps", "400"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_LT(json::parse(r.out)["max_abs_gap"].get<double>(), 1e-6);
}

TEST(Cli, OracleCheckFailsBelowItsTolerance) {
  const CliRun r = run_cli({"oracle-check", "--ensemble", fixture("symmetric_pi12.json"), "--steps", "8",
                            "--tol", "1e-15"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, EmbedOutputSolvesToTheSameOptimum) {
  for (const char* name : {"trine_raw_4d.json", "random_seed_42.json", "symmetric_pi12.json"}) {
    const CliRun embedded = run_cli({"embed", "--ensemble", fixture(name)});
    ASSERT_EQ(embedded.code, 0) << embedded.err;
    const fs::path path = temp_path("embedded.json");
    write_file(path, embedded.out);
    const double direct = solve(load_ensemble(fixture(name))).p_max;
    EXPECT_NEAR(solve(load_ensemble(path.string())).p_max, direct, 1e-12) << name;
    fs::remove(path);
  }
}

TEST(Cli, SimulateHonoursAnglesAndSeedOverride) {
  const auto base = run_cli({"simulate", "--ensemble", fixture("trine.json"), "--trials", "20000",
                             "--seed", "5"});
  ASSERT_EQ(base.code, 0) << base.err;
  const auto with_angles = run_cli({"simulate", "--ensemble", fixture("trine.json"), "--trials",
                                    "20000", "--seed", "5", "--phi", "0", "--chi", "0"});
  EXPECT_EQ(base.out, with_angles.out);

  ::setenv(cli::kSeedEnv, "6", 1);
  const auto overridden = run_cli({"simulate", "--ensemble", fixture("trine.json"), "--trials",
                                   "20000", "--seed", "5"});
  const auto explicit6 = [] {
    ::unsetenv(cli::kSeedEnv);
    return run_cli({"simulate", "--ensemble", fixture("trine.json"), "--trials", "20000",
                    "--seed", "6"});
  }();
  EXPECT_EQ(overridden.out, explicit6.out);
  EXPECT_NE(overridden.out, base.out);

  ::setenv(cli::kSeedEnv, "abc", 1);
  EXPECT_EQ(run_cli({"simulate", "--ensemble", fixture("trine.json"), "--trials", "10"}).code, 2);
  ::unsetenv(cli::kSeedEnv);
}

TEST(Cli, ErrorsExitWithTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"solve"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"solve", "--ensemble", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(run_cli({"sweep", "--beta-min", "0", "--beta-max", "0.5", "--points", "3"}).code, 2);

  const fs::path bad = temp_path("bad.json");
  write_file(bad, R"({"states": [[[1,0],[0,0]], [[0,0],[1,0]]], "priors": [0.4, 0.5], "subset_size": 1})");
  const CliRun r = run_cli({"solve", "--ensemble", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("0.9"), std::string::npos) << r.err;
  fs::remove(bad);
}

TEST(Cli, HelpExitsCleanly) { EXPECT_EQ(run_cli({"--help"}).code, 0); }

TEST(Cli, BinaryRunsEndToEnd) {
  const std::string cmd = std::string(QFILTER_CLI_PATH) + " solve --ensemble " +
                          fixture("helstrom_two_state.json") + " > " +
                          temp_path("bin.json").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  std::ifstream in(temp_path("bin.json"));
  const json doc = json::parse(in);
  EXPECT_NEAR(doc["p_error"].get<double>(), 0.1, 1e-12);
  fs::remove(temp_path("bin.json"));
}

}  // namespace
}  // namespace qfilter
