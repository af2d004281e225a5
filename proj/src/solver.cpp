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

#include "qfilter/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qfilter/errors.hpp"

namespace qfilter {
namespace {

constexpr double kZeroTolerance = 1e-14;
constexpr double kRealTolerance = 1e-12;

double subset_sign(const Ensemble& ensemble, std::size_t k) {
  return ensemble.in_first_subset(k) ? 1.0 : -1.0;
}

double wrap_two_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  if (wrapped >= two_pi) wrapped = 0.0;
  return wrapped;
}

FilterSolution finish(const Ensemble& ensemble, const EmbeddingFrame& frame, double r, Complex q,
                      double p_rank_one) {
  FilterSolution out;
  out.R = r;
  out.Q = q;
  out.p_max_rank_one = p_rank_one;

  const double radius = std::hypot(r, std::abs(q));
  out.degenerate = radius <= kZeroTolerance;

  // Guessing wins when |w1 - w2| / 2 exceeds the eigenvalue spread of
  // w1 rho1 - w2 rho2, which is sqrt(R^2 + |Q|^2).
  const double first = ensemble.first_subset_weight();
  const double complement = ensemble.complement_weight();
  out.p_max = p_rank_one;
  if (0.5 * std::abs(first - complement) > radius) {
    out.decision = first > complement ? Decision::kAlwaysFirst : Decision::kAlwaysComplement;
    out.p_max = std::max(first, complement);
  }
  out.p_error = 1.0 - out.p_max;

  double phi = 0.0;
  double chi = 0.0;
  if (out.degenerate) {
    // any measurement is optimal; keep |mu> = |psi_1>
  } else if (std::abs(q) <= kZeroTolerance) {
    phi = r > 0.0 ? 0.0 : std::numbers::pi / 2.0;
  } else {
    phi = 0.5 * std::atan2(std::abs(q), r);
    chi = wrap_two_pi(std::arg(q));
  }
  out.detection = make_detection(ensemble, frame, phi, chi);
  return out;
}

}  // namespace

const char* to_string(Decision decision) {
  switch (decision) {
    case Decision::kMeasure:
      return "measure";
    case Decision::kAlwaysFirst:
      return "always_first";
    case Decision::kAlwaysComplement:
      return "always_complement";
  }
  return "unknown";
}

DetectionPair make_detection(const Ensemble& ensemble, const EmbeddingFrame& frame, double phi,
                             double chi) {
  const PureState2D& first = ensemble.states()[0];
  const PureState2D aux = auxiliary_state(ensemble, frame);
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const Complex phase = std::polar(1.0, chi);
  // |nu> = -e^{-i chi} sin(phi)|psi_1> + cos(phi)|v>
  const Complex nu_first = -std::conj(phase) * s;

  DetectionPair out;
  out.phi = phi;
  out.chi = chi;
  out.mu = {c * first.c1 + phase * s * aux.c1, c * first.c2 + phase * s * aux.c2};
  out.nu = {nu_first * first.c1 + c * aux.c1, nu_first * first.c2 + c * aux.c2};
  return out;
}

DetectionPair make_detection(const Ensemble& ensemble, double phi, double chi) {
  return make_detection(ensemble, embedding_frame(gram(ensemble)), phi, chi);
}

ObjectiveEvaluator::ObjectiveEvaluator(const Ensemble& ensemble)
    : ObjectiveEvaluator(ensemble, embedding_frame(gram(ensemble))) {}

ObjectiveEvaluator::ObjectiveEvaluator(const Ensemble& ensemble, const EmbeddingFrame& frame) {
  terms_.reserve(ensemble.size());
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    terms_.push_back({ensemble.priors()[k], ensemble.in_first_subset(k), frame.along_first[k],
                      frame.along_aux[k]});
  }
}

double ObjectiveEvaluator::operator()(double phi, double chi) const {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const Complex rotate = std::polar(s, -chi);
  double p = 0.0;
  for (const auto& t : terms_) {
    // <mu|psi_k> = A_1k cos(phi) + e^{i(gamma_k - chi)} sqrt(1 - |A_1k|^2) sin(phi)
    const double hit = std::norm(t.along_first * c + rotate * t.along_aux);
    p += t.prior * (t.first_subset ? hit : 1.0 - hit);
  }
  return p;
}

double objective(const Ensemble& ensemble, double phi, double chi) {
  return ObjectiveEvaluator(ensemble)(phi, chi);
}

FilterSolution solve(const Ensemble& ensemble) {
  const OverlapMatrix a = gram(ensemble);
  const EmbeddingFrame frame = embedding_frame(a);
  const std::size_t p = frame.partner;
  const double scale = std::sqrt(1.0 - std::norm(a(0, p)));

  double r = 0.0;
  Complex q{};
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    const double weight = subset_sign(ensemble, k) * ensemble.priors()[k];
    const double first2 = std::norm(a(0, k));
    r += weight * (first2 - 0.5);
    q += weight * (a(p, k) * a(k, 0) - a(p, 0) * first2) / scale;
  }
  return finish(ensemble, frame, r, q, 0.5 + std::hypot(r, std::abs(q)));
}

FilterSolution solve_real(const Ensemble& ensemble) {
  const OverlapMatrix a = gram(ensemble);
  const EmbeddingFrame frame = embedding_frame(a);
  for (std::size_t k = 0; k < frame.size(); ++k) {
    if (std::abs(frame.along_first[k].imag()) > kRealTolerance ||
        std::abs(frame.along_aux[k].imag()) > kRealTolerance) {
      throw NotRealError("state " + std::to_string(k) +
                         " has complex coordinates in the embedding frame");
    }
  }

  double r = 0.0;
  double q = 0.0;
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    const double weight = subset_sign(ensemble, k) * ensemble.priors()[k];
    const double along = frame.along_first[k].real();
    // 1 - A_1k^2, written so stored normalization residue cancels
    const double perp = a(0, 0).real() * a(k, k).real() - along * along;
    // e^{i gamma_k} is +1 or -1 for real states
    const double side = frame.along_aux[k].real() < 0.0 ? -1.0 : 1.0;
    r += weight * (along * along - 0.5);
    q += weight * along * side * std::sqrt(std::max(0.0, perp));
  }
  return finish(ensemble, frame, r, Complex{q, 0.0}, 0.5 + std::hypot(r, q));
}

FilterSolution solve_three(const Ensemble& ensemble) {
  if (ensemble.size() != 3 || ensemble.subset_size() != 1) {
    throw ShapeError("three-state filtering needs N = 3 and M = 1, got N = " +
                     std::to_string(ensemble.size()) +
                     ", M = " + std::to_string(ensemble.subset_size()));
  }
  const OverlapMatrix a = gram(ensemble);
  const EmbeddingFrame frame = embedding_frame(a);
  const double eta2 = ensemble.priors()[1];
  const double eta3 = ensemble.priors()[2];
  const double a12 = std::norm(a(0, 1));
  const double a13 = std::norm(a(0, 2));
  const double cyclic = (a(0, 1) * a(1, 2) * a(2, 0)).real();

  const double r = 0.5 - eta2 * a12 - eta3 * a13;
  const double q2 = eta2 * eta2 * a12 * (1.0 - a12) + eta3 * eta3 * a13 * (1.0 - a13) +
                    2.0 * eta2 * eta3 * (cyclic - a12 * a13);
  const double q_abs = std::sqrt(std::max(0.0, q2));
  const double p_max =
      0.5 + 0.5 * std::sqrt(std::max(0.0, 1.0 - 4.0 * (eta2 * (1.0 - eta2) * a12 +
                                                       eta3 * (1.0 - eta3) * a13) +
                                              8.0 * eta2 * eta3 * cyclic));

  // Only the phase of Q is taken from the two complement terms of the general sum.
  const std::size_t p = frame.partner;
  const double scale = std::sqrt(1.0 - std::norm(a(0, p)));
  Complex phase_sum{};
  for (std::size_t k = 1; k < 3; ++k) {
    phase_sum -= ensemble.priors()[k] * (a(p, k) * a(k, 0) - a(p, 0) * std::norm(a(0, k))) / scale;
  }
  const double chi_q = std::abs(phase_sum) > 0.0 ? std::arg(phase_sum) : 0.0;
  return finish(ensemble, frame, r, std::polar(q_abs, chi_q), p_max);
}

}  // namespace qfilter
