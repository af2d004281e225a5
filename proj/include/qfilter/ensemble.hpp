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

// Pure-state ensembles restricted to a two-dimensional span: validation,
// overlap (Gram) matrices and the canonical {|psi_1>, |v>} embedding.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qfilter {

using Complex = std::complex<double>;

/// Tolerance on stored invariants (state norms, prior sum, hermiticity).
inline constexpr double kStoredTolerance = 1e-12;
/// Default threshold on the third Gram eigenvalue for the 2D span check.
inline constexpr double kDefaultRankTolerance = 1e-9;
/// |A_1k| must stay below 1 - kParallelThreshold for |psi_k> to serve as the
/// basis partner of |psi_1>.
inline constexpr double kParallelThreshold = 1e-9;

/// Amplitude pair of a pure state in a fixed orthonormal 2D basis.
struct PureState2D {
  Complex c1{1.0, 0.0};
  Complex c2{0.0, 0.0};

  double norm_squared() const { return std::norm(c1) + std::norm(c2); }
  /// e^{i theta} |this>
  PureState2D with_phase(double theta) const;

  friend bool operator==(const PureState2D&, const PureState2D&) = default;
};

/// <a|b>
Complex inner(const PureState2D& a, const PureState2D& b);

/// State components in an arbitrary d-dimensional orthonormal basis, before
/// the two-dimensional span has been established.
struct RawState {
  std::vector<Complex> amplitudes;
};

/// N >= 2 pure states with priors summing to one and a subset boundary M.
/// States 0..M-1 form the first subset, M..N-1 the complement.
///
/// Only validate_ensemble() constructs one, so every instance satisfies the
/// invariants.
class Ensemble {
 public:
  std::span<const PureState2D> states() const { return states_; }
  std::span<const double> priors() const { return priors_; }
  std::size_t size() const { return states_.size(); }
  std::size_t subset_size() const { return subset_size_; }
  bool in_first_subset(std::size_t k) const { return k < subset_size_; }

  /// Total prior weight of the first subset and of its complement.
  double first_subset_weight() const;
  double complement_weight() const;

 private:
  friend Ensemble validate_ensemble(std::vector<PureState2D>, std::vector<double>,
                                    std::size_t);
  Ensemble(std::vector<PureState2D> states, std::vector<double> priors, std::size_t m)
      : states_(std::move(states)), priors_(std::move(priors)), subset_size_(m) {}

  std::vector<PureState2D> states_;
  std::vector<double> priors_;
  std::size_t subset_size_;
};

/// Throws LengthMismatch, PartitionError or NormalizationError.
Ensemble validate_ensemble(std::vector<PureState2D> states, std::vector<double> priors,
                           std::size_t subset_size);

/// Hermitian N x N matrix of overlaps A_kl = <psi_k|psi_l>.
class OverlapMatrix {
 public:
  explicit OverlapMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  std::size_t size() const { return n_; }
  const Complex& operator()(std::size_t k, std::size_t l) const { return entries_[k * n_ + l]; }
  Complex& operator()(std::size_t k, std::size_t l) { return entries_[k * n_ + l]; }

  /// Eigenvalues in ascending order.
  std::vector<double> eigenvalues() const;

 private:
  std::size_t n_;
  std::vector<Complex> entries_;
};

OverlapMatrix gram(const Ensemble& ensemble);
/// Throws LengthMismatch if the states have different dimensions.
OverlapMatrix gram(std::span<const RawState> states);

/// Coordinates of every state in the orthonormal basis {|psi_1>, |v>}, where
///   |v> = (|psi_p> - A_1p |psi_1>) / sqrt(1 - |A_1p|^2)
/// and p is the basis partner: the first k >= 2 (1-based) with
/// |A_1k| < 1 - kParallelThreshold. Usually p = 2.
struct EmbeddingFrame {
  /// 0-based index of the basis partner.
  std::size_t partner = 1;
  /// A_1k = <psi_1|psi_k>.
  std::vector<Complex> along_first;
  /// <v|psi_k> = e^{i gamma_k} sqrt(1 - |A_1k|^2); real and non-negative for
  /// the partner.
  std::vector<Complex> along_aux;

  std::size_t size() const { return along_first.size(); }
  PureState2D coordinates(std::size_t k) const { return {along_first[k], along_aux[k]}; }
};

/// Throws DegenerateBasisError when every state is parallel to the first.
EmbeddingFrame embedding_frame(const OverlapMatrix& overlaps);

/// |v> written in the ensemble's own coordinates.
PureState2D auxiliary_state(const Ensemble& ensemble, const EmbeddingFrame& frame);

/// Maps raw d-dimensional states onto 2D frame coordinates, preserving all
/// pairwise overlaps. Throws NormalizationError, LengthMismatch, RankError
/// (third-largest Gram eigenvalue above tol) or DegenerateBasisError.
std::vector<PureState2D> embed_raw(std::span<const RawState> raw_states,
                                   double tol = kDefaultRankTolerance);

/// Re-expresses an ensemble in its own embedding frame.
Ensemble embed(const Ensemble& ensemble);

}  // namespace qfilter
