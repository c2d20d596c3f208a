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

#include "loqc/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace loqc {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix4cd pauli_product(int which) {
  // which: 0 -> X(x)X, 1 -> Y(x)Y, 2 -> Z(x)Z
  Eigen::Matrix2cd x, y, z;
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  const Eigen::Matrix2cd& s = (which == 0) ? x : (which == 1) ? y : z;
  Eigen::Matrix4cd out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + c, 2 * b + d) = s(a, b) * s(c, d);
  return out;
}

}  // namespace

CartanCoords CartanCoords::normalized() const {
  auto fold = [](double c) {
    c = std::fmod(c, kPi);
    if (c < 0) c += kPi;
    if (c > kPi / 2) c = kPi - c;
    return c;
  };
  std::array<double, 3> v{fold(c1), fold(c2), fold(c3)};
  std::sort(v.begin(), v.end(), std::greater<>());
  return CartanCoords{v[0], v[1], v[2]};
}

void TargetGate::validate(double unitarity_tol) const {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  if (n_qubits < 1) throw ShapeError("TargetGate: need at least one qubit");
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw ShapeError("TargetGate: matrix must be 2^n x 2^n");
  const double defect =
      (matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (defect > unitarity_tol)
    throw ShapeError("TargetGate: matrix is not unitary (defect " + std::to_string(defect) + ")");
}

void GateSpec::validate() const {
  target.validate();
  if (n_comp_modes != 2 * target.n_qubits)
    throw ShapeError("GateSpec: n_comp_modes must equal 2 * n_qubits (dual rail)");
  if (ancilla_occupations.n_modes() != n_ancilla_modes)
    throw ShapeError("GateSpec: ancilla occupation length must equal n_ancilla_modes");
  if (static_cast<int>(measured_pattern.size()) != n_ancilla_modes + max_vacuum_modes)
    throw ShapeError("GateSpec: measured pattern must cover ancilla and vacuum modes");
  int measured = 0;
  for (int k : measured_pattern) {
    if (k < 0) throw ShapeError("GateSpec: negative measured photon count");
    measured += k;
  }
  if (measured != ancilla_photons())
    throw ShapeError("GateSpec: measured pattern must consume all ancilla photons");
}

TargetGate cartan_two_qubit(const CartanCoords& c) {
  // The three Pauli products commute, so the exponential factors exactly:
  // exp(i c/2 P) = cos(c/2) I + i sin(c/2) P for each involution P.
  const double half[3] = {c.c1 / 2, c.c2 / 2, c.c3 / 2};
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix4cd f = std::cos(half[k]) * Eigen::Matrix4cd::Identity() +
                         Complex(0, 1) * std::sin(half[k]) * pauli_product(k);
    u = f * u;
  }
  TargetGate gate;
  gate.n_qubits = 2;
  gate.matrix = u;
  gate.label = "cartan";
  return gate;
}

std::vector<FockState> dual_rail_basis(int n_qubits) {
  if (n_qubits < 1) throw ShapeError("dual_rail_basis: need at least one qubit");
  std::vector<FockState> states;
  states.reserve(static_cast<size_t>(1) << n_qubits);
  for (int value = 0; value < (1 << n_qubits); ++value) {
    std::vector<int> occ(static_cast<size_t>(2 * n_qubits), 0);
    for (int q = 0; q < n_qubits; ++q) {
      const int bit = (value >> (n_qubits - 1 - q)) & 1;
      occ[static_cast<size_t>(2 * q + bit)] = 1;
    }
    states.emplace_back(FockState(std::move(occ)));
  }
  return states;
}

GateSpec make_gate_spec(TargetGate target, FockState ancilla_occupations,
                        int max_vacuum_modes, std::vector<int> measured_pattern) {
  GateSpec spec;
  spec.n_comp_modes = 2 * target.n_qubits;
  spec.n_ancilla_modes = ancilla_occupations.n_modes();
  spec.max_vacuum_modes = max_vacuum_modes;
  spec.target = std::move(target);
  if (measured_pattern.empty()) {
    measured_pattern = ancilla_occupations.occupations();
    measured_pattern.resize(static_cast<size_t>(spec.n_ancilla_modes + max_vacuum_modes), 0);
  }
  spec.measured_pattern = std::move(measured_pattern);
  spec.ancilla_occupations = std::move(ancilla_occupations);
  spec.validate();
  return spec;
}

GateSpec gate_catalog(GateName name) {
  switch (name) {
    case GateName::kCnot: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(1, 1) = 1;
      m(2, 3) = 1;
      m(3, 2) = 1;
      return make_gate_spec(TargetGate{2, m, "cnot"}, FockState({1, 1}), 0);
    }
    case GateName::kCs90: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
      m(3, 3) = Complex(0, 1);
      return make_gate_spec(TargetGate{2, m, "cs90"}, FockState({1, 1}), 2);
    }
    case GateName::kB: {
      TargetGate gate = cartan_two_qubit(CartanCoords{kPi / 2, kPi / 4, 0});
      gate.label = "b";
      return make_gate_spec(std::move(gate), FockState({1, 1, 1}), 3);
    }
    case GateName::kToffoli: {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
      for (int i = 0; i < 6; ++i) m(i, i) = 1;
      m(6, 7) = 1;
      m(7, 6) = 1;
      return make_gate_spec(TargetGate{3, m, "toffoli"}, FockState({1, 1, 1}), 3);
    }
  }
  throw CatalogError("gate_catalog: unknown gate");
}

GateName parse_gate_name(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "cnot") return GateName::kCnot;
  if (s == "cs90") return GateName::kCs90;
  if (s == "b") return GateName::kB;
  if (s == "toffoli") return GateName::kToffoli;
  throw CatalogError("unknown gate name: " + name + " (expected cnot|cs90|b|toffoli)");
}

std::string gate_name_string(GateName name) {
  switch (name) {
    case GateName::kCnot: return "cnot";
    case GateName::kCs90: return "cs90";
    case GateName::kB: return "b";
    case GateName::kToffoli: return "toffoli";
  }
  return "?";
}

}  // namespace loqc
