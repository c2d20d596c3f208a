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

#include "loqc/contraction.hpp"

#include <cmath>

namespace loqc {

ModeMatrix::ModeMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw ShapeError("ModeMatrix: matrix must be square");
  if (m_.rows() < 1) throw ShapeError("ModeMatrix: empty matrix");
  if (!m_.allFinite()) throw ShapeError("ModeMatrix: entries must be finite");
}

double ModeMatrix::spectral_norm() const {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m_);
  return svd.singularValues()(0);
}

ModeMatrix ModeMatrix::normalized() const {
  const double norm = spectral_norm();
  if (norm <= 0.0) throw NormError("ModeMatrix::normalized: zero matrix");
  return ModeMatrix(m_ / norm);
}

double ModeMatrix::unitarity_defect() const {
  const Eigen::Index n = m_.rows();
  return (m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

Eigen::Index ContractionMap::expected_rows(int m_c) {
  return static_cast<Eigen::Index>(FockBasis::dimension(2 * m_c, m_c));
}

void ContractionMap::validate() const {
  if (m_c < 1) throw ShapeError("ContractionMap: need at least one photon");
  if (entries.rows() != expected_rows(m_c))
    throw ShapeError("ContractionMap: row count does not match photon sector");
}

ContractionMap embed_target(const TargetGate& t) {
  const FockBasis basis = FockBasis::enumerate(2 * t.n_qubits, t.n_qubits);
  const std::vector<FockState> rail = dual_rail_basis(t.n_qubits);
  const Eigen::Index d_c = t.matrix.cols();

  ContractionMap out;
  out.m_c = t.n_qubits;
  out.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis.size()), d_c);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(rail.size()); ++i) {
    const auto row = static_cast<Eigen::Index>(basis.index_of(rail[static_cast<size_t>(i)]));
    out.entries.row(row) = t.matrix.row(i);
  }
  return out;
}

namespace {

// Resolves how a given U maps onto the spec: how many trailing vacuum modes
// it carries and the corresponding detector pattern slice.
std::vector<int> resolve_pattern(const ModeMatrix& u, const GateSpec& spec) {
  const int extra = u.n_modes() - spec.search_modes();
  if (extra < 0 || extra > spec.max_vacuum_modes)
    throw ShapeError("build_contraction: matrix size does not fit the gate spec");
  std::vector<int> pattern(spec.measured_pattern.begin(),
                           spec.measured_pattern.begin() + spec.n_ancilla_modes + extra);
  for (size_t i = pattern.size(); i < spec.measured_pattern.size(); ++i) {
    if (spec.measured_pattern[i] != 0)
      throw ShapeError("build_contraction: measured pattern expects photons in absent vacuum modes");
  }
  return pattern;
}

}  // namespace

ContractionMap build_contraction(const ModeMatrix& u, const GateSpec& spec) {
  spec.validate();
  const std::vector<int> pattern = resolve_pattern(u, spec);
  const int n_vacuum_present = u.n_modes() - spec.search_modes();
  const int m_c = spec.comp_photons();

  const FockBasis comp_basis = FockBasis::enumerate(spec.n_comp_modes, m_c);
  const std::vector<FockState> rail = dual_rail_basis(spec.target.n_qubits);

  FockState vacuum(std::vector<int>(static_cast<size_t>(n_vacuum_present), 0));
  FockState measured_tail{pattern};  // detector pattern over the present tail modes

  // Precompute the full output occupation per contraction row.
  std::vector<FockState> out_states;
  out_states.reserve(comp_basis.size());
  for (std::size_t k = 0; k < comp_basis.size(); ++k)
    out_states.push_back(FockState::concat(comp_basis.state(k), measured_tail));

  ContractionMap out;
  out.m_c = m_c;
  out.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(comp_basis.size()),
                                       static_cast<Eigen::Index>(rail.size()));
  TransitionKernel kernel;
  for (std::size_t j = 0; j < rail.size(); ++j) {
    const FockState input = FockState::concat(
        FockState::concat(rail[j], spec.ancilla_occupations), vacuum);
    for (std::size_t k = 0; k < comp_basis.size(); ++k) {
      out.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
          kernel.amplitude(u.entries(), input, out_states[k]);
    }
  }
  return out;
}

Complex hs_inner(const ContractionMap& a, const ContractionMap& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("hs_inner: contraction map shapes differ");
  const double d_c = static_cast<double>(a.cols());
  return (a.entries.adjoint() * b.entries).trace() / d_c;
}

double fidelity(const ContractionMap& a, const ContractionMap& target) {
  const double aa = std::real(hs_inner(a, a));
  const double tt = std::real(hs_inner(target, target));
  if (aa <= 0.0) throw FidelityUndefinedError("fidelity: zero contraction map");
  if (tt <= 0.0) throw FidelityUndefinedError("fidelity: zero target map");
  const Complex at = hs_inner(a, target);
  return std::norm(at) / (aa * tt);
}

double success(const ContractionMap& a, const ModeMatrix& u, int total_photons) {
  const double norm = u.spectral_norm();
  if (norm <= 0.0) throw NormError("success: zero mode matrix");
  const double aa = std::real(hs_inner(a, a));
  return aa / std::pow(norm, 2.0 * total_photons);
}

std::pair<double, double> success_bounds(const ContractionMap& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.entries.adjoint() * a.entries);
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

SvdProfile svd_profile(const ModeMatrix& u, double coalescence_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u.entries());
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0) throw NormError("svd_profile: zero matrix");
  SvdProfile profile;
  profile.nsv.resize(static_cast<size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    profile.nsv[static_cast<size_t>(i)] = sv(i) / sv(0);
  for (double v : profile.nsv)
    if (1.0 - v > coalescence_tol) ++profile.implied_vacuum_modes;
  return profile;
}

ModeMatrix dilate(const ModeMatrix& u, double tol) {
  const Eigen::Index n = u.entries().rows();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u.entries(),
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(0) > 1.0 + 1e-12)
    throw ContractionViolationError("dilate: spectral norm exceeds 1");

  // Defect directions: singular values below 1 - tol need a vacuum mode each.
  std::vector<Eigen::Index> defect;
  for (Eigen::Index i = 0; i < n; ++i)
    if (1.0 - sv(i) > tol) defect.push_back(i);
  const auto r = static_cast<Eigen::Index>(defect.size());
  if (r == 0) return u;

  // [[ W S V^dag, W D ], [ D V^dag, -S_r ]] with D carrying sqrt(1 - s^2) on
  // the defect directions; each (s, d) pair forms a 2x2 rotation, so the
  // result is exactly unitary up to SVD roundoff.
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(n + r, n + r);
  Eigen::MatrixXcd mid = Eigen::MatrixXcd::Zero(n + r, n + r);
  for (Eigen::Index i = 0; i < n; ++i) mid(i, i) = std::min(sv(i), 1.0);
  for (Eigen::Index k = 0; k < r; ++k) {
    const Eigen::Index i = defect[static_cast<size_t>(k)];
    const double d = std::sqrt(std::max(0.0, 1.0 - sv(i) * sv(i)));
    mid(i, n + k) = d;
    mid(n + k, i) = d;
    mid(n + k, n + k) = -sv(i);
  }
  Eigen::MatrixXcd left = Eigen::MatrixXcd::Identity(n + r, n + r);
  left.topLeftCorner(n, n) = svd.matrixU();
  Eigen::MatrixXcd right = Eigen::MatrixXcd::Identity(n + r, n + r);
  right.topLeftCorner(n, n) = svd.matrixV().adjoint();
  full = left * mid * right;
  // Pin the original block exactly; the border stays unitary to SVD accuracy.
  full.topLeftCorner(n, n) = u.entries();
  return ModeMatrix(std::move(full));
}

QualityMetrics evaluate_metrics(const ModeMatrix& u, const GateSpec& spec,
                                double coalescence_tol) {
  const ModeMatrix un = u.normalized();
  const ContractionMap a = build_contraction(un, spec);
  const ContractionMap t = embed_target(spec.target);

  QualityMetrics q;
  q.fidelity = fidelity(a, t);
  q.success = std::real(hs_inner(a, a));  // ||U|| = 1 after normalization
  std::tie(q.s_min, q.s_max) = success_bounds(a);
  SvdProfile profile = svd_profile(un, coalescence_tol);
  q.nsv = std::move(profile.nsv);
  q.implied_vacuum_modes = profile.implied_vacuum_modes;
  return q;
}

}  // namespace loqc
