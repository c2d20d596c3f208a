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
#include <string>
#include <vector>

#include "loqc/fock.hpp"

namespace loqc {

/// Canonical two-qubit interaction coordinates (radians).
struct CartanCoords {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  /// Folds into the canonical chamber pi/2 >= c1 >= c2 >= c3 >= 0.
  CartanCoords normalized() const;
};

/// A unitary gate on n qubits, together with a display label.
struct TargetGate {
  int n_qubits = 0;
  Eigen::MatrixXcd matrix;  // 2^n x 2^n
  std::string label;

  void validate(double unitarity_tol = 1e-12) const;
};

/// Everything needed to pose one gate-design problem: the target, the mode
/// bookkeeping, the ancilla input state, and the post-selected detector
/// pattern over ancilla + vacuum modes.
struct GateSpec {
  TargetGate target;
  int n_comp_modes = 0;     // N_c = 2 * n_qubits (dual rail)
  int n_ancilla_modes = 0;  // N_a
  int max_vacuum_modes = 0; // N_v available for dilation
  FockState ancilla_occupations;       // over N_a modes, M_a photons
  std::vector<int> measured_pattern;   // over N_a + N_v modes, sums to M_a

  int comp_photons() const { return target.n_qubits; }   // M_c
  int ancilla_photons() const { return ancilla_occupations.n_photons(); }
  int total_photons() const { return comp_photons() + ancilla_photons(); }
  int search_modes() const { return n_comp_modes + n_ancilla_modes; }

  void validate() const;
};

enum class GateName { kCnot, kCs90, kB, kToffoli };

/// exp(i/2 (c1 X(x)X + c2 Y(x)Y + c3 Z(x)Z)) as an explicit 4x4 unitary.
TargetGate cartan_two_qubit(const CartanCoords& c);

/// The 2^n computational Fock states over 2n modes, ordered by binary qubit
/// value with qubit 0 most significant; |0> on a qubit is one photon in the
/// first rail of its pair.
std::vector<FockState> dual_rail_basis(int n_qubits);

/// The four stock gates with their ancilla resources and detector patterns.
GateSpec gate_catalog(GateName name);

/// Parses "cnot" | "cs90" | "b" | "toffoli" (case-insensitive).
GateName parse_gate_name(const std::string& name);
std::string gate_name_string(GateName name);

/// Builds a spec for a caller-supplied target with explicit resources.
/// `measured_pattern` defaults to the ancilla occupations padded with zeros.
GateSpec make_gate_spec(TargetGate target, FockState ancilla_occupations,
                        int max_vacuum_modes, std::vector<int> measured_pattern = {});

}  // namespace loqc
