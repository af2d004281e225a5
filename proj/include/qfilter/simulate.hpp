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

#pragma once

// Seeded Monte Carlo of the prepare-and-measure experiment.
//
// Reproducibility contract: trials are cut into consecutive chunks of
// kChunkTrials. Chunk j draws from std::mt19937_64 seeded with
// splitmix64(seed + (j + 1) * 0x9E3779B97F4A7C15). Each trial consumes two
// 64-bit outputs, converted to doubles in [0, 1) as (x >> 11) * 2^-53: the
// first selects the prepared state by inverse CDF over the priors, the second
// selects outcome mu when below |<mu|psi_k>|^2. Counts are summed over chunks,
// so results do not depend on how chunks are spread over workers.

#include <cstdint>
#include <vector>

#include "qfilter/ensemble.hpp"
#include "qfilter/solver.hpp"

namespace qfilter {

inline constexpr std::uint64_t kChunkTrials = 1u << 16;

struct SimConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
};

struct StateCounts {
  std::size_t state = 0;
  std::uint64_t mu = 0;
  std::uint64_t nu = 0;

  friend bool operator==(const StateCounts&, const StateCounts&) = default;
};

struct SimResult {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double error_rate = 0.0;
  /// sqrt(p(1 - p) / n) with p the observed error rate.
  double standard_error = 0.0;
  std::vector<StateCounts> per_state_counts;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Throws DomainError when trials == 0. `workers` = 0 uses the hardware
/// concurrency. With Decision::kAlwaysFirst (kAlwaysComplement) every trial
/// yields the first-subset (complement) answer, counted in the mu (nu)
/// column, while consuming the same random draws.
SimResult simulate(const Ensemble& ensemble, const DetectionPair& detection,
                   const SimConfig& config, unsigned workers = 1,
                   Decision decision = Decision::kMeasure);

/// Runs the strategy of a solver result: its detection pair and decision.
SimResult simulate(const Ensemble& ensemble, const FilterSolution& solution,
                   const SimConfig& config, unsigned workers = 1);

/// 1 - error_rate at the detection pair built from (phi, chi).
double estimate_objective(const Ensemble& ensemble, double phi, double chi,
                          const SimConfig& config);

}  // namespace qfilter
