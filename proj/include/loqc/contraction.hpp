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
#include <vector>

#include "loqc/fock.hpp"
#include "loqc/gates.hpp"

namespace loqc {

/// The linear mode transformation under optimization. General complex; call
/// normalized() to rescale to unit spectral norm.
class ModeMatrix {
 public:
  ModeMatrix() = default;
  explicit ModeMatrix(Eigen::MatrixXcd entries);

  const Eigen::MatrixXcd& entries() const { return m_; }
  int n_modes() const { return static_cast<int>(m_.rows()); }

  double spectral_norm() const;
  ModeMatrix normalized() const;

  /// max |U^dag U - I|, for unitarity checks.
  double unitarity_defect() const;

 private:
  Eigen::MatrixXcd m_;
};

/// The post-measurement linear action on the computational space: a
/// D_out x D_c matrix over the M_c-photon Fock basis of the computational
/// modes, with D_out = C(3 M_c - 1, M_c).
struct ContractionMap {
  Eigen::MatrixXcd entries;
  int m_c = 0;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
  static Eigen::Index expected_rows(int m_c);
  void validate() const;
};

/// Snapshot of gate quality for one mode matrix.
struct QualityMetrics {
  double fidelity = 0.0;
  double success = 0.0;
  double s_min = 0.0;   // smallest eigenvalue of A^dag A
  double s_max = 0.0;   // largest eigenvalue of A^dag A
  std::vector<double> nsv;         // descending, nsv[0] == 1 after normalization
  int implied_vacuum_modes = 0;    // entries with 1 - nsv > coalescence tol
};

/// Scatters a qubit-space target into the computational Fock space: rows
/// indexed by FockBasis(2n, n), dual-rail rows carry the target matrix,
/// all other rows are zero.
ContractionMap embed_target(const TargetGate& t);

/// Builds A(U) by transforming each dual-rail input (tensored with the
/// ancilla state) and keeping the outputs whose ancilla/vacuum occupations
/// equal the measured pattern. `u` may carry between 0 and max_vacuum_modes
/// trailing vacuum modes beyond the N_c + N_a search modes.
ContractionMap build_contraction(const ModeMatrix& u, const GateSpec& spec);

/// Hilbert-Schmidt inner product Tr(a^dag b) / D_c.
Complex hs_inner(const ContractionMap& a, const ContractionMap& b);

/// Projective overlap |<a|t>|^2 / (<a|a><t|t>). Throws FidelityUndefinedError
/// when <a|a> vanishes.
double fidelity(const ContractionMap& a, const ContractionMap& target);

/// <A|A> / ||u||^(2M): the input-averaged probability of the accepting
/// measurement outcome, rescaled for non-unit-norm u.
double success(const ContractionMap& a, const ModeMatrix& u, int total_photons);

/// Smallest and largest eigenvalues of A^dag A; these bracket the
/// input-state-resolved success probability.
std::pair<double, double> success_bounds(const ContractionMap& a);

struct SvdProfile {
  std::vector<double> nsv;       // singular values / largest, descending
  int implied_vacuum_modes = 0;  // entries with 1 - nsv > tol
};

SvdProfile svd_profile(const ModeMatrix& u, double coalescence_tol);

/// Embeds a spectral-norm <= 1 matrix as the leading block of a unitary,
/// adding one row/column per singular value below 1 - tol. A matrix already
/// unitary at `tol` is returned unchanged.
ModeMatrix dilate(const ModeMatrix& u, double tol);

/// Normalizes u, builds A, and evaluates all quality numbers against the
/// spec's target in one go.
QualityMetrics evaluate_metrics(const ModeMatrix& u, const GateSpec& spec,
                                double coalescence_tol);

}  // namespace loqc
