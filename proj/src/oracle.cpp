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

#include "qfilter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qfilter/errors.hpp"

namespace qfilter {

HermitianMatrix2 HermitianMatrix2::projector(const PureState2D& psi, double weight) {
  return {weight * psi.c1 * std::conj(psi.c1), weight * psi.c1 * std::conj(psi.c2),
          weight * psi.c2 * std::conj(psi.c1), weight * psi.c2 * std::conj(psi.c2)};
}

bool HermitianMatrix2::is_hermitian(double tol) const {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    }
  }
  return true;
}

std::array<double, 2> HermitianMatrix2::eigenvalues() const {
  const double a = (*this)(0, 0).real();
  const double d = (*this)(1, 1).real();
  const double half_trace = 0.5 * (a + d);
  // sqrt(tr^2/4 - det) written to avoid cancellation
  const double spread = std::hypot(0.5 * (a - d), std::abs((*this)(0, 1)));
  return {half_trace - spread, half_trace + spread};
}

double HermitianMatrix2::trace_norm() const {
  const auto [lo, hi] = eigenvalues();
  return std::abs(lo) + std::abs(hi);
}

HermitianMatrix2& HermitianMatrix2::operator+=(const HermitianMatrix2& other) {
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

HermitianMatrix2& HermitianMatrix2::operator-=(const HermitianMatrix2& other) {
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

GridResult grid_maximize(const Ensemble& ensemble, int steps, int refinements) {
  if (steps < 8) throw DomainError("grid_maximize needs steps >= 8, got " + std::to_string(steps));
  const ObjectiveEvaluator objective(ensemble);

  struct Point {
    double p_max;
    double phi;
    double chi;
  };
  Point best{-1.0, 0.0, 0.0};
  const double h = std::numbers::pi / steps;
  for (int i = 0; i < steps; ++i) {
    const double phi = i * h;
    for (int j = 0; j < steps; ++j) {
      const double chi = j * h;
      const double p = objective(phi, chi);
      if (p > best.p_max) best = {p, phi, chi};
    }
  }

  // The objective is defined for all real angles, so refinement windows may
  // cross the [0, pi) boundary without wrapping.
  double cell = h;
  for (int round = 0; round < refinements; ++round) {
    constexpr int kSubdivision = 10;
    const double fine = cell / kSubdivision;
    const Point center = best;
    for (int i = -kSubdivision; i <= kSubdivision; ++i) {
      for (int j = -kSubdivision; j <= kSubdivision; ++j) {
        const double phi = center.phi + i * fine;
        const double chi = center.chi + j * fine;
        const double p = objective(phi, chi);
        if (p > best.p_max) best = {p, phi, chi};
      }
    }
    cell = fine;
  }

  GridResult out;
  out.phi = best.phi;
  out.chi = best.chi;
  out.p_rank_one = best.p_max;
  out.p_max = best.p_max;
  // Pi_1 = 1 scores every first-subset state, Pi_1 = 0 every complement state.
  const double first = ensemble.first_subset_weight();
  const double complement = ensemble.complement_weight();
  if (first > out.p_max) {
    out.p_max = first;
    out.decision = Decision::kAlwaysFirst;
  }
  if (complement > out.p_max) {
    out.p_max = complement;
    out.decision = Decision::kAlwaysComplement;
  }
  return out;
}

double helstrom_bound(const Ensemble& ensemble) {
  HermitianMatrix2 first;
  HermitianMatrix2 second;
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    const auto term = HermitianMatrix2::projector(ensemble.states()[k], ensemble.priors()[k]);
    (ensemble.in_first_subset(k) ? first : second) += term;
  }
  const double error = 0.5 * (1.0 - (first - second).trace_norm());
  return 1.0 - error;
}

OracleReport cross_check(const Ensemble& ensemble, int steps) {
  const FilterSolution closed = solve(ensemble);
  const GridResult grid = grid_maximize(ensemble, steps);
  OracleReport report;
  report.p_max_grid = grid.p_max;
  report.phi_grid = grid.phi;
  report.chi_grid = grid.chi;
  report.p_max_helstrom = helstrom_bound(ensemble);
  report.p_max_closed = closed.p_max;
  report.max_abs_gap = std::max(std::abs(report.p_max_grid - report.p_max_closed),
                                std::abs(report.p_max_helstrom - report.p_max_closed));
  return report;
}

}  // namespace qfilter
