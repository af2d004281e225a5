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

// Closed-form optimal projective measurement for deciding whether a state
// belongs to the first M members of an ensemble or to the remaining N - M.

#include <vector>

#include "qfilter/ensemble.hpp"

namespace qfilter {

/// Orthonormal detection states. Outcome |mu> assigns the first subset,
/// outcome |nu> the complement.
///
/// phi and chi parametrize |mu> = cos(phi)|psi_1> + e^{i chi} sin(phi)|v> in
/// the ensemble's embedding frame; mu and nu hold the resulting vectors in
/// the ensemble's own coordinates.
struct DetectionPair {
  double phi = 0.0;
  double chi = 0.0;
  PureState2D mu;
  PureState2D nu{{0.0, 0.0}, {1.0, 0.0}};
};

/// Builds the detection pair for arbitrary angles.
DetectionPair make_detection(const Ensemble& ensemble, double phi, double chi);
DetectionPair make_detection(const Ensemble& ensemble, const EmbeddingFrame& frame, double phi,
                             double chi);

/// How the optimal strategy turns a measurement into a subset assignment.
///
/// Rank-1 projectors |mu><mu| cannot beat blind guessing when
/// w1 rho1 - w2 rho2 has no negative (or no positive) eigenvalue; the
/// optimal detection operator is then the identity (or zero) and the
/// outcome is ignored.
enum class Decision {
  kMeasure,           ///< outcome mu -> first subset, nu -> complement
  kAlwaysFirst,       ///< Pi_1 = 1
  kAlwaysComplement,  ///< Pi_1 = 0
};

const char* to_string(Decision decision);

struct FilterSolution {
  double R = 0.0;
  Complex Q{};
  /// Best success probability over all two-outcome measurements:
  /// 1/2 + max(sqrt(R^2 + |Q|^2), |w1 - w2| / 2).
  double p_max = 0.5;
  double p_error = 0.5;
  /// 1/2 + sqrt(R^2 + |Q|^2), the optimum over rank-1 projectors, attained
  /// by `detection`.
  double p_max_rank_one = 0.5;
  DetectionPair detection;
  Decision decision = Decision::kMeasure;
  /// R = Q = 0: every rank-1 measurement succeeds with probability 1/2.
  bool degenerate = false;
};

/// Success probability of the measurement {|mu><mu|, 1 - |mu><mu|} as a
/// function of the detection angles, with the overlaps <mu|psi_k> evaluated
/// from the embedding frame. Reused across many angle pairs by the grid oracle.
class ObjectiveEvaluator {
 public:
  explicit ObjectiveEvaluator(const Ensemble& ensemble);
  ObjectiveEvaluator(const Ensemble& ensemble, const EmbeddingFrame& frame);

  double operator()(double phi, double chi) const;

 private:
  struct Term {
    double prior;
    bool first_subset;
    Complex along_first;
    Complex along_aux;
  };
  std::vector<Term> terms_;
};

double objective(const Ensemble& ensemble, double phi, double chi);

/// General complex-state solution. Throws DegenerateBasisError.
FilterSolution solve(const Ensemble& ensemble);

/// Real-state special case. Throws NotRealError when any embedded amplitude
/// has an imaginary part above 1e-12.
FilterSolution solve_real(const Ensemble& ensemble);

/// Three-state filtering of |psi_1> against {|psi_2>, |psi_3>}. Throws
/// ShapeError unless N = 3 and M = 1.
FilterSolution solve_three(const Ensemble& ensemble);

}  // namespace qfilter
