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

#include "qfilter/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qfilter/errors.hpp"
#include "qfilter/io.hpp"

namespace qfilter::cli {
namespace {

struct Options {
  std::string ensemble;
  std::string out;
  double rank_tol = kDefaultRankTolerance;
  double gap_tol = 1e-6;
  int steps = kDefaultGridSteps;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  std::optional<double> phi;
  std::optional<double> chi;
  unsigned workers = 1;
  double beta_min = 0.0;
  double beta_max = 0.0;
  int points = 0;
};

void emit(const Options& opts, std::ostream& out, const std::string& text) {
  if (opts.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opts.out);
  if (!file) throw IoError("cannot open output file '" + opts.out + "'");
  file << text;
  if (!file) throw IoError("failed writing output file '" + opts.out + "'");
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* value = std::getenv(kSeedEnv);
  if (value == nullptr) return fallback;
  std::istringstream in(value);
  std::uint64_t seed = 0;
  if (!(in >> seed) || !in.eof()) {
    throw SchemaError(std::string(kSeedEnv) + " must be an unsigned 64-bit integer, got '" +
                      value + "'");
  }
  return seed;
}

int execute(const std::string& command, Options opts, std::ostream& out) {
  if (command == "sweep") {
    const auto points = ratio_sweep(opts.beta_min, opts.beta_max, opts.points);
    std::ostringstream csv;
    write_sweep_csv(csv, points);
    emit(opts, out, csv.str());
    return 0;
  }

  const Ensemble ensemble = load_ensemble(opts.ensemble, opts.rank_tol);
  if (command == "solve") {
    emit(opts, out, to_json(solve(ensemble)) + "\n");
    return 0;
  }
  if (command == "embed") {
    emit(opts, out, to_json(embed(ensemble)) + "\n");
    return 0;
  }
  if (command == "oracle-check") {
    const OracleReport report = cross_check(ensemble, opts.steps);
    emit(opts, out, to_json(report) + "\n");
    return report.max_abs_gap < opts.gap_tol ? 0 : 1;
  }
  // simulate
  opts.seed = seed_from_env(opts.seed);
  const FilterSolution best = solve(ensemble);
  const SimConfig config{opts.trials, opts.seed};
  SimResult result;
  if (opts.phi || opts.chi) {
    const DetectionPair detection = make_detection(
        ensemble, opts.phi.value_or(best.detection.phi), opts.chi.value_or(best.detection.chi));
    result = simulate(ensemble, detection, config, opts.workers);
  } else {
    result = simulate(ensemble, best, config, opts.workers);
  }
  emit(opts, out, to_json(result) + "\n");
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-error discrimination between two subsets of pure states in a 2D span",
               "qfilter"};
  app.require_subcommand(1, 1);
  Options opts;

  auto add_ensemble = [&](CLI::App* sub, bool with_rank_tol) {
    sub->add_option("--ensemble", opts.ensemble, "Ensemble JSON file")->required();
    sub->add_option("--out", opts.out, "Write output here instead of stdout");
    if (with_rank_tol) {
      sub->add_option("--tol", opts.rank_tol, "Rank threshold for raw_states inputs")
          ->capture_default_str();
    }
  };

  auto* solve_cmd = app.add_subcommand("solve", "Closed-form optimal measurement");
  add_ensemble(solve_cmd, true);

  auto* embed_cmd = app.add_subcommand("embed", "Express states in the {psi_1, v} frame");
  add_ensemble(embed_cmd, true);

  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare solver with grid and Helstrom");
  add_ensemble(oracle_cmd, false);
  oracle_cmd->add_option("--steps", opts.steps, "Grid steps per angle")
      ->capture_default_str()
      ->check(CLI::Range(8, 1 << 20));
  oracle_cmd->add_option("--tol", opts.gap_tol, "Maximum allowed gap")->capture_default_str();

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo of the measurement");
  add_ensemble(sim_cmd, true);
  sim_cmd->add_option("--trials", opts.trials, "Number of trials")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", opts.seed, "RNG seed (QFILTER_SEED overrides)")->capture_default_str();
  sim_cmd->add_option("--phi", opts.phi, "Detection angle phi (default: optimum)");
  sim_cmd->add_option("--chi", opts.chi, "Detection phase chi (default: optimum)");
  sim_cmd->add_option("--workers", opts.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "Filtering vs. individual error over beta");
  sweep_cmd->add_option("--beta-min", opts.beta_min, "Smallest beta")->required();
  sweep_cmd->add_option("--beta-max", opts.beta_max, "Largest beta (<= pi/4)")->required();
  sweep_cmd->add_option("--points", opts.points, "Number of grid points")->required();
  sweep_cmd->add_option("--out", opts.out, "CSV output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    return execute(app.get_subcommands().front()->get_name(), opts, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qfilter::cli
