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

// Independent checks of the closed-form solver: brute-force angle search and
// the two-density-operator trace-norm bound.

#include <array>

#include "qfilter/ensemble.hpp"
#include "qfilter/solver.hpp"

namespace qfilter {

/// Row-major 2x2 complex matrix expected to be Hermitian.
class HermitianMatrix2 {
 public:
  HermitianMatrix2() = default;
  HermitianMatrix2(Complex m00, Complex m01, Complex m10, Complex m11)
      : entries_{m00, m01, m10, m11} {}

  /// weight * |psi><psi|
  static HermitianMatrix2 projector(const PureState2D& psi, double weight = 1.0);

  const Complex& operator()(int row, int col) const { return entries_[2 * row + col]; }

  bool is_hermitian(double tol = kStoredTolerance) const;

  /// Eigenvalues (smaller first) from trace and determinant.
  std::array<double, 2> eigenvalues() const;
  /// Sum of absolute eigenvalues.
  double trace_norm() const;

  HermitianMatrix2& operator+=(const HermitianMatrix2& other);
  HermitianMatrix2& operator-=(const HermitianMatrix2& other);
  friend HermitianMatrix2 operator-(HermitianMatrix2 lhs, const HermitianMatrix2& rhs) {
    return lhs -= rhs;
  }

 private:
  std::array<Complex, 4> entries_{};
};

struct GridResult {
  /// Best over every two-outcome projective measurement in 2D.
  double p_max = 0.0;
  /// Best grid point among rank-1 projectors |mu><mu|.
  double phi = 0.0;
  double chi = 0.0;
  double p_rank_one = 0.0;
  Decision decision = Decision::kMeasure;
};

inline constexpr int kDefaultGridSteps = 400;
inline constexpr int kDefaultRefinements = 2;

/// Brute-force maximum of the success probability. Rank-1 detection states
/// are searched on a steps x steps grid of (phi, chi) in [0, pi)^2, then
/// `refinements` times on a 10x finer local grid around the best cell. The
/// two remaining projective measurements (Pi_1 = 1 and Pi_1 = 0) are
/// evaluated directly. Throws DomainError if steps < 8.
GridResult grid_maximize(const Ensemble& ensemble, int steps = kDefaultGridSteps,
                         int refinements = kDefaultRefinements);

/// 1 - P_E with P_E = (1 - ||w1 rho1 - w2 rho2||) / 2.
double helstrom_bound(const Ensemble& ensemble);

struct OracleReport {
  double p_max_grid = 0.0;
  double phi_grid = 0.0;
  double chi_grid = 0.0;
  double p_max_helstrom = 0.0;
  double p_max_closed = 0.0;
  double max_abs_gap = 0.0;
};

OracleReport cross_check(const Ensemble& ensemble, int steps = kDefaultGridSteps);

}  // namespace qfilter
