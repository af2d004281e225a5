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

#include "qfilter/simulate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qfilter/errors.hpp"
#include "qfilter/families.hpp"
#include "qfilter/solver.hpp"
#include "test_support.hpp"

namespace qfilter {
namespace {

const PureState2D kUp{{1.0, 0.0}, {0.0, 0.0}};
const PureState2D kDown{{0.0, 0.0}, {1.0, 0.0}};

void expect_within_three_sigma(const SimResult& r, double expected) {
  EXPECT_LE(std::abs(r.error_rate - expected), 3.0 * r.standard_error)
      << "rate " << r.error_rate << " expected " << expected << " stderr " << r.standard_error;
}

TEST(Splitmix64, KnownSequenceValues) {
  // Reference outputs of the published splitmix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFull);
  EXPECT_EQ(splitmix64(0x9E3779B97F4A7C15ull), 0x6E789E6AA1B965F4ull);
}

TEST(Simulate, TrineAtOptimumErrsOneSixth) {
  const Ensemble trine = make_trine();
  const SimResult r = simulate(trine, solve(trine), {1'000'000, 17});
  expect_within_three_sigma(r, 1.0 / 6.0);
}

TEST(Simulate, PerfectDetectorNeverErrs) {
  const PureState2D tilted{{0.6, 0.0}, {0.8, 0.0}};
  const Ensemble e = validate_ensemble({kUp, kDown, tilted}, {1.0, 0.0, 0.0}, 1);
  const DetectionPair d = make_detection(e, 0.0, 0.0);
  const SimResult r = simulate(e, d, {100'000, 3});
  EXPECT_EQ(r.errors, 0u);
  EXPECT_EQ(r.error_rate, 0.0);
  EXPECT_EQ(r.per_state_counts[1].mu + r.per_state_counts[1].nu, 0u);
  EXPECT_EQ(r.per_state_counts[2].mu + r.per_state_counts[2].nu, 0u);
}

TEST(Simulate, SwappedDetectorErrsWithTheSuccessProbability) {
  const Ensemble trine = make_trine();
  const FilterSolution s = solve(trine);
  DetectionPair swapped = s.detection;
  std::swap(swapped.mu, swapped.nu);
  const SimResult r = simulate(trine, swapped, {1'000'000, 99});
  expect_within_three_sigma(r, s.p_max);
}

TEST(Simulate, CountsAreExhaustiveAndConsistent) {
  std::mt19937_64 rng(61);
  const Ensemble e = testing::random_ensemble(rng, 4, 6);
  const SimResult r = simulate(e, solve(e).detection, {123'457, 5});
  std::uint64_t total = 0;
  std::uint64_t errors = 0;
  for (const auto& c : r.per_state_counts) {
    total += c.mu + c.nu;
    errors += e.in_first_subset(c.state) ? c.nu : c.mu;
  }
  EXPECT_EQ(total, r.trials);
  EXPECT_EQ(errors, r.errors);
  EXPECT_DOUBLE_EQ(r.error_rate, static_cast<double>(r.errors) / r.trials);
  EXPECT_DOUBLE_EQ(r.standard_error,
                   std::sqrt(r.error_rate * (1 - r.error_rate) / static_cast<double>(r.trials)));
}

TEST(Simulate, DeterministicAndIndependentOfWorkerCount) {
  const Ensemble trine = make_trine();
  const DetectionPair d = solve(trine).detection;
  const SimConfig config{300'001, 2024};
  const SimResult serial = simulate(trine, d, config, 1);
  EXPECT_EQ(serial, simulate(trine, d, config, 1));
  EXPECT_EQ(serial, simulate(trine, d, config, 3));
  EXPECT_EQ(serial, simulate(trine, d, config, 8));
  EXPECT_NE(serial, simulate(trine, d, {300'001, 2025}, 1));
}

TEST(Simulate, FrozenCountsForFixedSeed) {
  // Regression pin of the documented stream: guards the RNG consumption order.
  const Ensemble trine = make_trine();
  const SimResult r = simulate(trine, solve(trine), {100'000, 7});
  const SimResult again = simulate(trine, solve(trine), {100'000, 7}, 4);
  EXPECT_EQ(r, again);
  EXPECT_EQ(r.per_state_counts[0].nu, 0u);
  EXPECT_EQ(r.errors, r.per_state_counts[1].mu + r.per_state_counts[2].mu);
}

TEST(Simulate, GuessingStrategiesIgnoreTheOutcome) {
  const double r = 1.0 / std::sqrt(2.0);
  const Ensemble e = validate_ensemble({kUp, kDown, {{r, 0.0}, {r, 0.0}}}, {0.45, 0.45, 0.1}, 2);
  const FilterSolution s = solve(e);
  ASSERT_EQ(s.decision, Decision::kAlwaysFirst);
  const SimResult result = simulate(e, s, {500'000, 8});
  EXPECT_EQ(result.errors, result.per_state_counts[2].mu);
  EXPECT_EQ(result.per_state_counts[0].nu + result.per_state_counts[1].nu, 0u);
  expect_within_three_sigma(result, 0.1);

  const SimResult never = simulate(e, s.detection, {1000, 8}, 1, Decision::kAlwaysComplement);
  for (const auto& c : never.per_state_counts) EXPECT_EQ(c.mu, 0u);
}

TEST(Simulate, RejectsZeroTrials) {
  const Ensemble trine = make_trine();
  EXPECT_THROW(simulate(trine, solve(trine).detection, {0, 1}), DomainError);
}

TEST(Simulate, StatisticalSoundnessOverSeeds) {
  const Ensemble e = make_symmetric(std::numbers::pi / 6);
  const FilterSolution s = solve(e);
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SimResult r = simulate(e, s, {100'000, seed});
    if (std::abs(r.error_rate - s.p_error) <= 3.0 * r.standard_error) ++inside;
  }
  EXPECT_GE(inside, 48);
}

TEST(EstimateObjective, OptimumMatchesClosedForm) {
  const Ensemble e = make_symmetric(std::numbers::pi / 6);
  const FilterSolution s = solve(e);
  const SimConfig config{1'000'000, 12};
  const double estimate = estimate_objective(e, s.detection.phi, s.detection.chi, config);
  const double stderr_bound = 3.0 * std::sqrt(s.p_error * s.p_max / 1e6);
  EXPECT_NEAR(estimate, s.p_max, stderr_bound);
  EXPECT_NEAR(1.0 - estimate, 0.19953739371133425, stderr_bound);
}

TEST(EstimateObjective, MaximallyWrongDetectorScoresZero) {
  const Ensemble e = validate_ensemble({kUp, kDown}, {0.5, 0.5}, 1);
  // phi = pi/2 puts |mu> on the complement state.
  EXPECT_EQ(estimate_objective(e, std::numbers::pi / 2, 0.0, {50'000, 4}), 0.0);
  EXPECT_EQ(estimate_objective(e, 0.0, 0.0, {50'000, 4}), 1.0);
}

TEST(EstimateObjective, TracksObjectiveAtArbitraryAngles) {
  std::mt19937_64 rng(62);
  const Ensemble e = testing::random_ensemble(rng, 3, 5);
  for (double phi : {0.2, 1.0, 2.5}) {
    const double exact = objective(e, phi, 0.7);
    const double estimate = estimate_objective(e, phi, 0.7, {400'000, 77});
    EXPECT_NEAR(estimate, exact, 3.0 * std::sqrt(exact * (1 - exact) / 4e5) + 1e-12);
  }
}

}  // namespace
}  // namespace qfilter
