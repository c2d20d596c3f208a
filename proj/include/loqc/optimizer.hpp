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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "loqc/contraction.hpp"

namespace loqc {

struct OptimizerConfig {
  double epsilon = 1e-6;            // 1/epsilon multiplies fidelity in the objective
  int max_iterations = 6000;
  double gradient_tolerance = 1e-6;
  double step_tolerance = 1e-9;
  std::uint64_t rng_seed = 0;
  double perturbation_sigma = 1e-3; // relative Frobenius scale of trace perturbations
  double coalescence_tol = 1e-4;    // 1 - nsv below this counts as unit
  int lbfgs_memory = 12;
  int polish_max_sweeps = 200;      // derivative-free stage at ridge cusps
  double cusp_gap = 1e-6;           // top-2 NSV gap that flags a cusp
  int max_rounds = 4;               // quasi-Newton <-> polish alternations
};

struct ObjectiveValue {
  double value = 0.0;     // S + F / epsilon
  double success = 0.0;
  double fidelity = 0.0;
};

/// Prepared evaluation context for one gate spec: caches the Fock states,
/// the embedded target, and scratch buffers, so repeated objective
/// evaluations allocate nothing.
class GateProblem {
 public:
  explicit GateProblem(GateSpec spec);

  const GateSpec& spec() const { return spec_; }
  int n_modes() const { return spec_.search_modes(); }
  int n_parameters() const { return 2 * n_modes() * n_modes(); }

  /// S + F/epsilon, with the analytic gradient over (Re, Im) of every U
  /// entry when `gradient` is non-null. The spectral-norm factor is
  /// differentiated through the leading singular pair, which yields a
  /// subgradient at degenerate leading singular values.
  ObjectiveValue evaluate(const Eigen::MatrixXcd& u, double epsilon,
                          Eigen::VectorXd* gradient = nullptr);

  /// The embedded target map (shared with fidelity evaluation).
  const Eigen::MatrixXcd& target_map() const { return target_; }

 private:
  GateSpec spec_;
  std::vector<FockState> inputs_;    // per contraction column
  std::vector<FockState> outputs_;   // per contraction row
  Eigen::MatrixXcd target_;          // D_out x D_c
  double target_raw_norm2_ = 0.0;    // ||T||_F^2
  TransitionKernel kernel_;
  Eigen::MatrixXcd a_;               // scratch contraction map
  Eigen::MatrixXcd grad_g_, grad_h_; // scratch holomorphic gradient accumulators
};

/// One-shot form of GateProblem::evaluate.
ObjectiveValue objective(const ModeMatrix& u, const GateSpec& spec, double epsilon,
                         Eigen::VectorXd* gradient = nullptr);

struct OptimizedPoint {
  ModeMatrix u;
  QualityMetrics metrics;
  double epsilon = 0.0;
  double objective_value = 0.0;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;  // at exit
};

/// Quasi-Newton ascent (L-BFGS direction, Armijo backtracking) on
/// S + F/epsilon, alternating with a coordinate-wise quadratic-fit polish
/// stage when the iteration stalls on a singular-value ridge cusp.
/// Deterministic given the start point and config.
OptimizedPoint maximize(const ModeMatrix& u0, const GateSpec& spec,
                        const OptimizerConfig& cfg);

struct CoalescenceEvent {
  double delta = 0.0;  // 1 - F at the point where the value reaches unity
  int nsv_index = 0;   // index into the descending NSV list
};

struct FamilyTrace {
  std::vector<OptimizedPoint> points;  // one per epsilon, increasing
  std::vector<double> deltas;          // 1 - F per point
  std::string family_label;
  std::vector<CoalescenceEvent> coalescence_events;
  bool completed = true;  // false when a step failed to converge
};

/// Follows one family of optima across an increasing epsilon schedule,
/// perturbing U before each re-optimization so the ridge can be tracked
/// through cusps. A non-converged step aborts, keeping partial results.
FamilyTrace trace_family(const OptimizedPoint& start, const GateSpec& spec,
                         const std::vector<double>& epsilon_schedule,
                         const OptimizerConfig& cfg);

struct SolutionFamily {
  std::string signature;
  OptimizedPoint representative;        // highest-success member
  std::vector<OptimizedPoint> members;
};

/// Optimizes from i.i.d. complex-Gaussian starts and groups the results by
/// (rounded success, NSV degeneracy pattern, Knill-form flag). Families are
/// returned sorted by representative success, descending.
std::vector<SolutionFamily> random_restart_search(const GateSpec& spec, double epsilon,
                                                  int n_restarts, std::uint64_t seed,
                                                  const OptimizerConfig& base_cfg = {});

/// Degree to which one mode per qubit decouples from the rest of the device,
/// minimized over per-qubit local rotations. 0 means exact Knill form, 1 is
/// maximal coupling.
double knill_form_score(const ModeMatrix& u, const GateSpec& spec);

/// Signature string used for family grouping.
std::string family_signature(const OptimizedPoint& point, const ModeMatrix& u,
                             const GateSpec& spec);

/// Geometric schedule between eps_min and eps_max, inclusive.
std::vector<double> geometric_schedule(double eps_min, double eps_max, int steps);

struct EpsilonRange {
  double eps_min = 0.3;
  double eps_max = 15.0;
  int steps = 80;
};

/// Schedule endpoints tuned per stock gate so traces span delta from roughly
/// 1e-4 up to ~0.3.
EpsilonRange default_epsilon_range(const std::string& gate_label);

/// i.i.d. complex Gaussian entries, then rescaled to unit spectral norm.
ModeMatrix random_mode_matrix(int n_modes, std::mt19937_64& rng);

/// Adds complex Gaussian noise with relative Frobenius scale sigma.
ModeMatrix perturbed(const ModeMatrix& u, double sigma, std::mt19937_64& rng);

/// Deterministic per-restart stream derived from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace loqc
