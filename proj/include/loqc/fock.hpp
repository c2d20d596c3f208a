// Copyright 2026 The loqc-frontier Authors
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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "loqc/errors.hpp"

namespace loqc {

using Complex = std::complex<double>;

/// Photon occupation numbers over a set of optical modes.
///
/// Immutable after construction; all entries are >= 0 and the photon count
/// is the sum of the entries.
class FockState {
 public:
  FockState() = default;
  explicit FockState(std::vector<int> occupations);

  /// States over the concatenation of two mode registers.
  static FockState concat(const FockState& a, const FockState& b);

  const std::vector<int>& occupations() const { return occ_; }
  int n_modes() const { return static_cast<int>(occ_.size()); }
  int n_photons() const { return photons_; }
  int operator[](int mode) const { return occ_[static_cast<size_t>(mode)]; }

  /// Leading n_modes-length prefix / suffix views, as new states.
  FockState prefix(int n_modes) const;
  FockState suffix(int from_mode) const;

  bool operator==(const FockState& o) const { return occ_ == o.occ_; }
  bool operator!=(const FockState& o) const { return occ_ != o.occ_; }

  std::string to_string() const;

 private:
  std::vector<int> occ_;
  int photons_ = 0;
};

/// The full basis of `n_photons` photons in `n_modes` modes, enumerated in
/// lexicographically descending occupation order. The ordering is the
/// canonical one used for every amplitude vector and contraction map in this
/// library, so indices are stable across runs.
class FockBasis {
 public:
  static constexpr std::uint64_t kDefaultDimensionCap = 1'000'000;

  static FockBasis enumerate(int n_modes, int n_photons,
                             std::uint64_t dimension_cap = kDefaultDimensionCap);

  /// C(n_modes + n_photons - 1, n_photons), guarded by `cap`.
  static std::uint64_t dimension(int n_modes, int n_photons,
                                 std::uint64_t cap = kDefaultDimensionCap);

  int n_modes() const { return n_modes_; }
  int n_photons() const { return n_photons_; }
  std::size_t size() const { return states_.size(); }
  const FockState& state(std::size_t i) const { return states_[i]; }
  const std::vector<FockState>& states() const { return states_; }

  /// Position of `s` in the enumeration; throws ShapeError if absent.
  std::size_t index_of(const FockState& s) const;
  std::size_t index_of(const std::vector<int>& occupations) const;

 private:
  FockBasis() = default;
  int n_modes_ = 0;
  int n_photons_ = 0;
  std::vector<FockState> states_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// Amplitudes over a shared Fock basis.
struct AmplitudeVector {
  std::shared_ptr<const FockBasis> basis;
  Eigen::VectorXcd amplitudes;

  double squared_norm() const { return amplitudes.squaredNorm(); }
};

/// Matrix permanent via Ryser's formula with Gray-code subset updates,
/// O(2^n n). Throws ShapeError for non-square input and CapacityError for
/// n beyond `size_cap`.
Complex permanent(const Eigen::MatrixXcd& m, int size_cap = 16);

/// Scratch-reusing kernel for single-transition amplitudes
///     <out| Omega(u) |in> = perm(u[in, out]) / sqrt(prod n_i! prod k_j!)
/// where u[in, out] repeats row i of u in_i times and column j out_j times.
/// The gradient pass accumulates d(amplitude)/dU_{pq}, folded over repeated
/// rows/columns, weighted by up to two complex weights at once.
class TransitionKernel {
 public:
  TransitionKernel() = default;

  Complex amplitude(const Eigen::MatrixXcd& u, const FockState& in,
                    const FockState& out);

  /// On return: g1 += w1 * dAmp/dU, g2 += w2 * dAmp/dU (entrywise over the
  /// n_modes x n_modes parameter matrix). Returns the amplitude itself.
  Complex amplitude_with_gradient(const Eigen::MatrixXcd& u, const FockState& in,
                                  const FockState& out, Complex w1,
                                  Eigen::MatrixXcd& g1, Complex w2,
                                  Eigen::MatrixXcd& g2);

  static constexpr int kMaxPhotons = 16;

 private:
  void expand(const Eigen::MatrixXcd& u, const FockState& in, const FockState& out);

  int m_ = 0;                       // photon number = expanded matrix order
  double inv_norm_ = 1.0;           // 1/sqrt(prod n! prod k!)
  std::vector<Complex> sub_;        // m x m expanded matrix, row-major
  std::vector<Complex> dperm_;      // m x m entry derivatives of the permanent
  std::vector<int> row_modes_;      // expanded row -> mode index
  std::vector<int> col_modes_;      // expanded col -> mode index
};

/// Applies the linear mode transformation `u` to a Fock input state and
/// returns the amplitude vector over the full output basis. `u` must be
/// square with input.n_modes() rows.
AmplitudeVector apply_mode_transform(const Eigen::MatrixXcd& u, const FockState& input);
AmplitudeVector apply_mode_transform(const Eigen::MatrixXcd& u, const FockState& input,
                                     std::shared_ptr<const FockBasis> out_basis);

/// Factorial as double (exact through 18!).
double factorial(int n);

}  // namespace loqc
