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

#include "qfilter/ensemble.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "qfilter/errors.hpp"

namespace qfilter {
namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <typename... Parts>
std::string concat(const Parts&... parts) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << parts);
  return os.str();
}

std::vector<double> hermitian_eigenvalues(const OverlapMatrix& m, std::size_t leading) {
  Eigen::MatrixXcd dense(leading, leading);
  for (std::size_t k = 0; k < leading; ++k) {
    for (std::size_t l = 0; l < leading; ++l) {
      dense(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = m(k, l);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense, Eigen::EigenvaluesOnly);
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

}  // namespace

PureState2D PureState2D::with_phase(double theta) const {
  const Complex phase = std::polar(1.0, theta);
  return {phase * c1, phase * c2};
}

Complex inner(const PureState2D& a, const PureState2D& b) {
  return std::conj(a.c1) * b.c1 + std::conj(a.c2) * b.c2;
}

double Ensemble::first_subset_weight() const {
  return std::accumulate(priors_.begin(), priors_.begin() + static_cast<std::ptrdiff_t>(subset_size_),
                         0.0);
}

double Ensemble::complement_weight() const {
  return std::accumulate(priors_.begin() + static_cast<std::ptrdiff_t>(subset_size_), priors_.end(),
                         0.0);
}

Ensemble validate_ensemble(std::vector<PureState2D> states, std::vector<double> priors,
                           std::size_t subset_size) {
  if (states.size() != priors.size()) {
    throw LengthMismatch(concat("got ", states.size(), " states but ", priors.size(), " priors"));
  }
  const std::size_t n = states.size();
  if (n < 2) {
    throw PartitionError(concat("an ensemble needs at least two states, got ", n));
  }
  if (subset_size < 1 || subset_size >= n) {
    throw PartitionError(
        concat("subset_size must satisfy 1 <= M < N = ", n, ", got M = ", subset_size));
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto& s = states[k];
    if (!finite(s.c1) || !finite(s.c2)) {
      throw NormalizationError(concat("state ", k, " has a non-finite amplitude"));
    }
    const double norm2 = s.norm_squared();
    if (std::abs(norm2 - 1.0) > kStoredTolerance) {
      throw NormalizationError(concat("state ", k, " has squared norm ", norm2, ", expected 1"));
    }
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(priors[k]) || priors[k] < 0.0) {
      throw NormalizationError(concat("prior ", k, " is ", priors[k], ", expected a finite value >= 0"));
    }
    sum += priors[k];
  }
  if (std::abs(sum - 1.0) > kStoredTolerance) {
    throw NormalizationError(concat("priors sum to ", sum, ", expected 1"));
  }
  return Ensemble(std::move(states), std::move(priors), subset_size);
}

std::vector<double> OverlapMatrix::eigenvalues() const { return hermitian_eigenvalues(*this, n_); }

OverlapMatrix gram(const Ensemble& ensemble) {
  const auto states = ensemble.states();
  OverlapMatrix a(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    for (std::size_t l = 0; l < states.size(); ++l) {
      a(k, l) = inner(states[k], states[l]);
    }
  }
  return a;
}

OverlapMatrix gram(std::span<const RawState> states) {
  const std::size_t n = states.size();
  OverlapMatrix a(n);
  if (n == 0) return a;
  const std::size_t d = states.front().amplitudes.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (states[k].amplitudes.size() != d) {
      throw LengthMismatch(concat("raw state ", k, " has dimension ", states[k].amplitudes.size(),
                                  " but state 0 has dimension ", d));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      Complex sum{};
      for (std::size_t i = 0; i < d; ++i) {
        sum += std::conj(states[k].amplitudes[i]) * states[l].amplitudes[i];
      }
      a(k, l) = sum;
    }
  }
  return a;
}

EmbeddingFrame embedding_frame(const OverlapMatrix& a) {
  const std::size_t n = a.size();
  std::size_t partner = n;
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(a(0, k)) < 1.0 - kParallelThreshold) {
      partner = k;
      break;
    }
  }
  if (partner == n) {
    throw DegenerateBasisError(
        "all states are parallel to the first one; the optimal strategy is to guess the subset "
        "with the larger prior weight");
  }

  const double scale = std::sqrt(1.0 - std::norm(a(0, partner)));
  EmbeddingFrame frame;
  frame.partner = partner;
  frame.along_first.resize(n);
  frame.along_aux.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    frame.along_first[k] = a(0, k);
    frame.along_aux[k] = (a(partner, k) - a(partner, 0) * a(0, k)) / scale;
  }
  frame.along_aux[0] = 0.0;
  return frame;
}

PureState2D auxiliary_state(const Ensemble& ensemble, const EmbeddingFrame& frame) {
  const auto& first = ensemble.states()[0];
  const auto& partner = ensemble.states()[frame.partner];
  const Complex overlap = frame.along_first[frame.partner];
  const double scale = std::sqrt(1.0 - std::norm(overlap));
  return {(partner.c1 - overlap * first.c1) / scale, (partner.c2 - overlap * first.c2) / scale};
}

namespace {

std::vector<PureState2D> frame_coordinates(const EmbeddingFrame& frame) {
  std::vector<PureState2D> out(frame.size());
  for (std::size_t k = 0; k < frame.size(); ++k) {
    auto c = frame.coordinates(k);
    const double norm = std::sqrt(c.norm_squared());
    out[k] = {c.c1 / norm, c.c2 / norm};
  }
  return out;
}

}  // namespace

std::vector<PureState2D> embed_raw(std::span<const RawState> raw_states, double tol) {
  if (raw_states.size() < 2) {
    throw LengthMismatch(concat("embedding needs at least two states, got ", raw_states.size()));
  }
  for (std::size_t k = 0; k < raw_states.size(); ++k) {
    const auto& amps = raw_states[k].amplitudes;
    if (amps.empty()) throw LengthMismatch(concat("raw state ", k, " is empty"));
    double norm2 = 0.0;
    for (const auto& z : amps) {
      if (!finite(z)) throw NormalizationError(concat("raw state ", k, " has a non-finite amplitude"));
      norm2 += std::norm(z);
    }
    if (std::abs(norm2 - 1.0) > kStoredTolerance) {
      throw NormalizationError(concat("raw state ", k, " has squared norm ", norm2, ", expected 1"));
    }
  }

  const OverlapMatrix a = gram(raw_states);
  const std::size_t n = a.size();
  if (n >= 3) {
    const auto values = a.eigenvalues();
    if (values[n - 3] > tol) {
      // Report the first state whose inclusion lifts the span above two dimensions.
      std::size_t offending = n - 1;
      for (std::size_t leading = 3; leading <= n; ++leading) {
        const auto partial = hermitian_eigenvalues(a, leading);
        if (partial[leading - 3] > tol) {
          offending = leading - 1;
          break;
        }
      }
      throw RankError(concat("states span more than two dimensions (third Gram eigenvalue ",
                             values[n - 3], " > tol ", tol, "); first offending state index ",
                             offending));
    }
  }
  return frame_coordinates(embedding_frame(a));
}

Ensemble embed(const Ensemble& ensemble) {
  const auto priors = ensemble.priors();
  return validate_ensemble(frame_coordinates(embedding_frame(gram(ensemble))),
                           {priors.begin(), priors.end()}, ensemble.subset_size());
}

}  // namespace qfilter
