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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "qfilter/errors.hpp"

namespace qfilter {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

double unit_interval(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

struct Tally {
  std::vector<std::uint64_t> mu;
  std::vector<std::uint64_t> nu;

  explicit Tally(std::size_t n) : mu(n, 0), nu(n, 0) {}
  void merge(const Tally& other) {
    for (std::size_t k = 0; k < mu.size(); ++k) {
      mu[k] += other.mu[k];
      nu[k] += other.nu[k];
    }
  }
};

class Experiment {
 public:
  Experiment(const Ensemble& ensemble, const DetectionPair& detection, Decision decision) {
    const std::size_t n = ensemble.size();
    cumulative_.resize(n);
    hit_.resize(n);
    double running = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      running += ensemble.priors()[k];
      cumulative_[k] = running;
      switch (decision) {
        case Decision::kMeasure:
          hit_[k] = std::norm(inner(detection.mu, ensemble.states()[k]));
          break;
        case Decision::kAlwaysFirst:
          hit_[k] = 2.0;  // above every uniform draw
          break;
        case Decision::kAlwaysComplement:
          hit_[k] = -1.0;
          break;
      }
      if (ensemble.priors()[k] > 0.0) last_drawable_ = k;
    }
  }

  void run_chunk(std::uint64_t seed, std::uint64_t chunk, std::uint64_t trials, Tally& tally) const {
    std::mt19937_64 engine(splitmix64(seed + (chunk + 1) * kGolden));
    for (std::uint64_t t = 0; t < trials; ++t) {
      const double pick = unit_interval(engine());
      const double outcome = unit_interval(engine());
      const std::size_t k = draw_state(pick);
      if (outcome < hit_[k]) {
        ++tally.mu[k];
      } else {
        ++tally.nu[k];
      }
    }
  }

 private:
  std::size_t draw_state(double u) const {
    // Rounding can leave the cumulative sum just below 1.
    for (std::size_t k = 0; k < last_drawable_; ++k) {
      if (u < cumulative_[k]) return k;
    }
    return last_drawable_;
  }

  std::vector<double> cumulative_;
  std::vector<double> hit_;
  std::size_t last_drawable_ = 0;
};

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

SimResult simulate(const Ensemble& ensemble, const DetectionPair& detection,
                   const SimConfig& config, unsigned workers, Decision decision) {
  if (config.trials == 0) throw DomainError("simulation needs at least one trial");
  const Experiment experiment(ensemble, detection, decision);
  const std::size_t n = ensemble.size();
  const std::uint64_t chunks = (config.trials + kChunkTrials - 1) / kChunkTrials;
  auto chunk_trials = [&](std::uint64_t j) {
    return std::min(kChunkTrials, config.trials - j * kChunkTrials);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

  Tally total(n);
  if (workers <= 1) {
    for (std::uint64_t j = 0; j < chunks; ++j) {
      experiment.run_chunk(config.seed, j, chunk_trials(j), total);
    }
  } else {
    std::vector<Tally> partial(workers, Tally(n));
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t j = next++; j < chunks; j = next++) {
          experiment.run_chunk(config.seed, j, chunk_trials(j), partial[w]);
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& p : partial) total.merge(p);
  }

  SimResult result;
  result.trials = config.trials;
  result.per_state_counts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    result.per_state_counts.push_back({k, total.mu[k], total.nu[k]});
    result.errors += ensemble.in_first_subset(k) ? total.nu[k] : total.mu[k];
  }
  const double trials = static_cast<double>(result.trials);
  result.error_rate = static_cast<double>(result.errors) / trials;
  result.standard_error = std::sqrt(result.error_rate * (1.0 - result.error_rate) / trials);
  return result;
}

SimResult simulate(const Ensemble& ensemble, const FilterSolution& solution,
                   const SimConfig& config, unsigned workers) {
  return simulate(ensemble, solution.detection, config, workers, solution.decision);
}

double estimate_objective(const Ensemble& ensemble, double phi, double chi,
                          const SimConfig& config) {
  return 1.0 - simulate(ensemble, make_detection(ensemble, phi, chi), config).error_rate;
}

}  // namespace qfilter
