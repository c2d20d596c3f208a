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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "loqc/curvefit.hpp"
#include "loqc/optimizer.hpp"

namespace loqc {

/// Matrices are stored as plain text: a format tag, the dimensions, then
/// row-major entries as (real,imaginary) pairs with 17 significant digits,
/// so a save/load round trip is byte-identical.
void save_matrix(const std::string& path, const Eigen::MatrixXcd& m);
std::string format_matrix(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd load_matrix(const std::string& path);
Eigen::MatrixXcd parse_matrix(std::istream& in, const std::string& origin);

/// One optimized point in a trace file (JSON lines, one record per line).
struct TraceRecord {
  double eps = 0.0;
  double delta = 0.0;
  double success = 0.0;
  double fidelity = 0.0;
  std::vector<double> nsv;
  int implied_vacuum_modes = 0;
  double s_min = 0.0;
  double s_max = 0.0;
  double knill_score = 0.0;
  bool converged = false;
  std::optional<double> wall_ms;  // omitted when timing is disabled

  void validate() const;  // throws LoadError naming the violated field
};

TraceRecord make_trace_record(const OptimizedPoint& point, double knill_score,
                              std::optional<double> wall_ms);
std::string format_trace_record(const TraceRecord& record);
TraceRecord parse_trace_record(const std::string& line);
std::vector<TraceRecord> load_trace(const std::string& path);

/// Everything one run needs; a persisted RunConfig re-executes to identical
/// outputs given the same binary and platform.
struct RunConfig {
  std::string gate = "cnot";           // cnot|cs90|b|toffoli|custom
  std::string target_file;             // custom: matrix file with 2^n x 2^n unitary
  int n_qubits = 0;                    // custom: qubit count for the target file
  std::vector<double> cartan;          // custom: 3 coordinates instead of a file
  std::vector<int> ancilla_occupations;  // custom; default {1,1}
  int vacuum_modes = 0;                // custom: dilation headroom
  std::vector<int> measured_pattern;   // custom; default ancilla pattern + zeros

  double epsilon = 1e-6;
  double eps_min = 0.0;                // 0 = per-gate default
  double eps_max = 0.0;
  int eps_steps = 80;
  int restarts = 50;
  std::uint64_t seed = 7;
  double sigma = 1e-3;
  double coalescence_tol = 1e-4;
  double gradient_tolerance = 1e-6;
  double step_tolerance = 1e-9;
  int max_iterations = 6000;
  std::string out_dir;
  bool timing = true;

  void validate() const;
};

std::string format_run_config(const RunConfig& config);
RunConfig parse_run_config(const std::string& text);
void save_run_config(const std::string& path, const RunConfig& config);
RunConfig load_run_config(const std::string& path);

/// Builds the gate spec a config describes (catalog gate or custom target).
GateSpec resolve_gate_spec(const RunConfig& config);
OptimizerConfig resolve_optimizer_config(const RunConfig& config);
std::vector<double> resolve_epsilon_schedule(const RunConfig& config,
                                             const std::string& gate_label);

/// Fit results as JSON (machine) plus CSV/text renderings.
std::string format_fit(const std::string& gate, const FrontierFit& fit);
std::pair<std::string, FrontierFit> parse_fit(const std::string& text);
void save_fit(const std::string& path, const std::string& gate, const FrontierFit& fit);
std::pair<std::string, FrontierFit> load_fit(const std::string& path);

}  // namespace loqc
