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

// Equiprobable symmetric three-state families
//   |psi_k> = cos(beta)|u1> + e^{2 pi i (k - 1) / 3} sin(beta)|u2>,
// 0 < beta <= pi/4, and the trine states. Filtering |psi_1> against the
// other two is compared with discriminating all three individually.

#include <vector>

#include "qfilter/ensemble.hpp"

namespace qfilter {

/// Throws DomainError outside (0, pi/4].
Ensemble make_symmetric(double beta);

/// |u1>, -(|u1> + sqrt(3)|u2>)/2, -(|u1> - sqrt(3)|u2>)/2 with priors 1/3, M = 1.
Ensemble make_trine();

/// Minimum error of filtering one state from the other two:
/// (3 - sqrt(1 + 3 sin^2(2 beta))) / 6.
double filter_error(double beta);

/// Minimum error of identifying each state individually: (2 - sin(2 beta)) / 3.
double individual_error(double beta);

struct SymmetricFamilyPoint {
  double beta = 0.0;
  double p_err_filter = 0.0;
  /// Same quantity from solve(make_symmetric(beta)).
  double p_err_filter_solver = 0.0;
  double p_err_individual = 0.0;
  double ratio = 0.0;
};

/// Tolerance for the per-point closed-form vs. solver agreement check.
inline constexpr double kSweepAgreement = 1e-10;

/// Uniform grid of `points` values from beta_min to beta_max inclusive.
/// Throws DomainError on a bad range or points < 2, and std::logic_error if
/// the solver and the closed form disagree by more than kSweepAgreement.
std::vector<SymmetricFamilyPoint> ratio_sweep(double beta_min, double beta_max, int points);

}  // namespace qfilter
