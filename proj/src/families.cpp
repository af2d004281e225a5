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

#include "qfilter/families.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qfilter/errors.hpp"
#include "qfilter/solver.hpp"

namespace qfilter {
namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

void check_beta(double beta) {
  if (!(beta > 0.0 && beta <= kQuarterPi)) {
    std::ostringstream os;
    os.precision(17);
    os << "beta must lie in (0, pi/4], got " << beta;
    throw DomainError(os.str());
  }
}

}  // namespace

Ensemble make_symmetric(double beta) {
  check_beta(beta);
  std::vector<PureState2D> states;
  for (int k = 0; k < 3; ++k) {
    states.push_back({Complex{std::cos(beta), 0.0},
                      std::polar(std::sin(beta), 2.0 * std::numbers::pi * k / 3.0)});
  }
  return validate_ensemble(std::move(states), {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1);
}

Ensemble make_trine() {
  const double half_root3 = std::sqrt(3.0) / 2.0;
  return validate_ensemble({{{1.0, 0.0}, {0.0, 0.0}},
                            {{-0.5, 0.0}, {-half_root3, 0.0}},
                            {{-0.5, 0.0}, {half_root3, 0.0}}},
                           {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1);
}

double filter_error(double beta) {
  check_beta(beta);
  const double s = std::sin(2.0 * beta);
  return (3.0 - std::sqrt(1.0 + 3.0 * s * s)) / 6.0;
}

double individual_error(double beta) {
  check_beta(beta);
  return (2.0 - std::sin(2.0 * beta)) / 3.0;
}

std::vector<SymmetricFamilyPoint> ratio_sweep(double beta_min, double beta_max, int points) {
  if (points < 2) throw DomainError("ratio_sweep needs at least two points");
  if (!(beta_min > 0.0 && beta_min < beta_max && beta_max <= kQuarterPi)) {
    throw DomainError("ratio_sweep needs 0 < beta_min < beta_max <= pi/4");
  }
  std::vector<SymmetricFamilyPoint> out;
  out.reserve(static_cast<std::size_t>(points));
  const double step = (beta_max - beta_min) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double beta = i + 1 == points ? beta_max : beta_min + i * step;
    SymmetricFamilyPoint point;
    point.beta = beta;
    point.p_err_filter = filter_error(beta);
    point.p_err_filter_solver = solve(make_symmetric(beta)).p_error;
    point.p_err_individual = individual_error(beta);
    point.ratio = point.p_err_filter / point.p_err_individual;
    if (std::abs(point.p_err_filter - point.p_err_filter_solver) > kSweepAgreement) {
      std::ostringstream os;
      os.precision(17);
      os << "solver and closed form disagree at beta = " << beta << ": "
         << point.p_err_filter_solver << " vs " << point.p_err_filter;
      throw std::logic_error(os.str());
    }
    out.push_back(point);
  }
  return out;
}

}  // namespace qfilter
