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

#include "loqc/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace loqc {

namespace {

using nlohmann::json;

constexpr const char* kMatrixTag = "loqc-matrix v1";

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw LoadError("cannot write file: " + path);
  out << text;
  if (!out) throw LoadError("write failed: " + path);
}

double require_finite(const json& j, const char* field, const std::string& origin) {
  if (!j.contains(field)) throw LoadError(origin + ": missing field " + field);
  if (!j[field].is_number()) throw LoadError(origin + ": field " + field + " must be a number");
  const double v = j[field].get<double>();
  if (!std::isfinite(v)) throw LoadError(origin + ": field " + field + " must be finite");
  return v;
}

}  // namespace

std::string format_matrix(const Eigen::MatrixXcd& m) {
  std::ostringstream os;
  os << kMatrixTag << '\n' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << '(' << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag()) << ')';
    }
    os << '\n';
  }
  return os.str();
}

void save_matrix(const std::string& path, const Eigen::MatrixXcd& m) {
  spill(path, format_matrix(m));
}

Eigen::MatrixXcd parse_matrix(std::istream& in, const std::string& origin) {
  std::string header;
  if (!std::getline(in, header) || header != kMatrixTag)
    throw LoadError(origin + ": bad header, expected '" + kMatrixTag + "'");
  Eigen::Index rows = 0, cols = 0;
  in >> rows >> cols;
  if (!in || rows < 1 || cols < 1)
    throw LoadError(origin + ": invalid dimensions");
  if (rows > 4096 || cols > 4096) throw LoadError(origin + ": dimensions unreasonably large");

  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      char open = 0, comma = 0, close = 0;
      double re = 0, im = 0;
      in >> open >> re >> comma >> im >> close;
      if (!in || open != '(' || comma != ',' || close != ')')
        throw LoadError(origin + ": malformed entry at row " + std::to_string(i) + " col " +
                        std::to_string(j));
      if (!std::isfinite(re) || !std::isfinite(im))
        throw LoadError(origin + ": non-finite entry at row " + std::to_string(i) + " col " +
                        std::to_string(j));
      m(i, j) = Complex(re, im);
    }
  }
  std::string trailing;
  in >> trailing;
  if (!trailing.empty()) throw LoadError(origin + ": trailing content after entries");
  return m;
}

Eigen::MatrixXcd load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open file: " + path);
  return parse_matrix(in, path);
}

void TraceRecord::validate() const {
  const std::string origin = "trace record";
  if (!(eps > 0)) throw LoadError(origin + ": eps must be positive");
  if (delta < -1e-9 || delta > 1.0 + 1e-9)
    throw LoadError(origin + ": delta out of [0, 1]");
  if (success < 0) throw LoadError(origin + ": success must be non-negative");
  if (fidelity < -1e-12 || fidelity > 1.0 + 1e-9)
    throw LoadError(origin + ": fidelity out of [0, 1]");
  if (nsv.empty()) throw LoadError(origin + ": nsv list is empty");
  if (std::abs(nsv.front() - 1.0) > 1e-9)
    throw LoadError(origin + ": nsv[0] must be 1 after normalization");
  for (size_t i = 1; i < nsv.size(); ++i)
    if (nsv[i] > nsv[i - 1] + 1e-12) throw LoadError(origin + ": nsv must be descending");
  if (implied_vacuum_modes < 0 || implied_vacuum_modes > static_cast<int>(nsv.size()))
    throw LoadError(origin + ": implied_vacuum_modes out of range");
  if (s_min > s_max + 1e-12) throw LoadError(origin + ": s_min exceeds s_max");
  if (knill_score < -1e-12 || knill_score > 1.0 + 1e-9)
    throw LoadError(origin + ": knill_score out of [0, 1]");
  if (wall_ms && *wall_ms < 0) throw LoadError(origin + ": wall_ms must be non-negative");
}

TraceRecord make_trace_record(const OptimizedPoint& point, double knill_score,
                              std::optional<double> wall_ms) {
  TraceRecord r;
  r.eps = point.epsilon;
  r.delta = 1.0 - point.metrics.fidelity;
  r.success = point.metrics.success;
  r.fidelity = point.metrics.fidelity;
  r.nsv = point.metrics.nsv;
  r.implied_vacuum_modes = point.metrics.implied_vacuum_modes;
  r.s_min = point.metrics.s_min;
  r.s_max = point.metrics.s_max;
  r.knill_score = knill_score;
  r.converged = point.converged;
  r.wall_ms = wall_ms;
  return r;
}

std::string format_trace_record(const TraceRecord& record) {
  json j;
  j["eps"] = record.eps;
  j["delta"] = record.delta;
  j["success"] = record.success;
  j["fidelity"] = record.fidelity;
  j["nsv"] = record.nsv;
  j["vacuum_modes"] = record.implied_vacuum_modes;
  j["s_min"] = record.s_min;
  j["s_max"] = record.s_max;
  j["knill_score"] = record.knill_score;
  j["converged"] = record.converged;
  if (record.wall_ms) j["wall_ms"] = *record.wall_ms;
  return j.dump();
}

TraceRecord parse_trace_record(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw LoadError(std::string("trace record: invalid JSON (") + e.what() + ")");
  }
  TraceRecord r;
  r.eps = require_finite(j, "eps", "trace record");
  r.delta = require_finite(j, "delta", "trace record");
  r.success = require_finite(j, "success", "trace record");
  r.fidelity = require_finite(j, "fidelity", "trace record");
  if (!j.contains("nsv") || !j["nsv"].is_array())
    throw LoadError("trace record: missing nsv array");
  for (const auto& v : j["nsv"]) {
    if (!v.is_number()) throw LoadError("trace record: nsv entries must be numbers");
    r.nsv.push_back(v.get<double>());
  }
  if (!j.contains("vacuum_modes") || !j["vacuum_modes"].is_number_integer())
    throw LoadError("trace record: missing integer vacuum_modes");
  r.implied_vacuum_modes = j["vacuum_modes"].get<int>();
  r.s_min = require_finite(j, "s_min", "trace record");
  r.s_max = require_finite(j, "s_max", "trace record");
  r.knill_score = require_finite(j, "knill_score", "trace record");
  if (!j.contains("converged") || !j["converged"].is_boolean())
    throw LoadError("trace record: missing boolean converged");
  r.converged = j["converged"].get<bool>();
  if (j.contains("wall_ms")) r.wall_ms = require_finite(j, "wall_ms", "trace record");
  r.validate();
  return r;
}

std::vector<TraceRecord> load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open file: " + path);
  std::vector<TraceRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(parse_trace_record(line));
    } catch (const LoadError& e) {
      throw LoadError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

void RunConfig::validate() const {
  if (gate != "cnot" && gate != "cs90" && gate != "b" && gate != "toffoli" && gate != "custom")
    throw LoadError("run config: unknown gate '" + gate + "'");
  if (gate == "custom") {
    if (target_file.empty() && cartan.size() != 3)
      throw LoadError("run config: custom gate needs target_file or 3 cartan coordinates");
    if (!target_file.empty() && n_qubits < 1)
      throw LoadError("run config: custom target_file needs n_qubits");
    int m_a = 0;
    for (int o : ancilla_occupations) {
      if (o < 0) throw LoadError("run config: negative ancilla occupation");
      m_a += o;
    }
    if (!measured_pattern.empty()) {
      if (measured_pattern.size() != ancilla_occupations.size() + static_cast<size_t>(vacuum_modes))
        throw LoadError("run config: measured_pattern must cover ancilla and vacuum modes");
      int measured = 0;
      for (int k : measured_pattern) {
        if (k < 0) throw LoadError("run config: negative measured_pattern entry");
        measured += k;
      }
      if (measured != m_a)
        throw LoadError("run config: measured_pattern sum must equal ancilla photon count");
    }
  }
  if (epsilon <= 0) throw LoadError("run config: epsilon must be positive");
  if (eps_min < 0 || eps_max < 0 || (eps_max > 0 && eps_max < eps_min))
    throw LoadError("run config: invalid eps range");
  if (eps_steps < 1) throw LoadError("run config: eps_steps must be >= 1");
  if (restarts < 1) throw LoadError("run config: restarts must be >= 1");
  if (sigma < 0) throw LoadError("run config: sigma must be non-negative");
  if (coalescence_tol <= 0) throw LoadError("run config: coalescence_tol must be positive");
  if (gradient_tolerance <= 0) throw LoadError("run config: gradient_tolerance must be positive");
  if (step_tolerance <= 0) throw LoadError("run config: step_tolerance must be positive");
  if (max_iterations < 1) throw LoadError("run config: max_iterations must be >= 1");
  if (vacuum_modes < 0) throw LoadError("run config: vacuum_modes must be non-negative");
}

std::string format_run_config(const RunConfig& c) {
  json j;
  j["gate"] = c.gate;
  if (!c.target_file.empty()) j["target_file"] = c.target_file;
  if (c.n_qubits > 0) j["n_qubits"] = c.n_qubits;
  if (!c.cartan.empty()) j["cartan"] = c.cartan;
  if (!c.ancilla_occupations.empty()) j["ancilla_occupations"] = c.ancilla_occupations;
  if (c.vacuum_modes > 0) j["vacuum_modes"] = c.vacuum_modes;
  if (!c.measured_pattern.empty()) j["measured_pattern"] = c.measured_pattern;
  j["epsilon"] = c.epsilon;
  j["eps_min"] = c.eps_min;
  j["eps_max"] = c.eps_max;
  j["eps_steps"] = c.eps_steps;
  j["restarts"] = c.restarts;
  j["seed"] = c.seed;
  j["sigma"] = c.sigma;
  j["coalescence_tol"] = c.coalescence_tol;
  j["gradient_tolerance"] = c.gradient_tolerance;
  j["step_tolerance"] = c.step_tolerance;
  j["max_iterations"] = c.max_iterations;
  j["out_dir"] = c.out_dir;
  j["timing"] = c.timing;
  return j.dump(2) + "\n";
}

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw LoadError(std::string("run config: invalid JSON (") + e.what() + ")");
  }
  RunConfig c;
  auto get_to = [&](const char* field, auto& out) {
    if (j.contains(field)) {
      try {
        j[field].get_to(out);
      } catch (const json::exception&) {
        throw LoadError(std::string("run config: field ") + field + " has the wrong type");
      }
    }
  };
  get_to("gate", c.gate);
  get_to("target_file", c.target_file);
  get_to("n_qubits", c.n_qubits);
  get_to("cartan", c.cartan);
  get_to("ancilla_occupations", c.ancilla_occupations);
  get_to("vacuum_modes", c.vacuum_modes);
  get_to("measured_pattern", c.measured_pattern);
  get_to("epsilon", c.epsilon);
  get_to("eps_min", c.eps_min);
  get_to("eps_max", c.eps_max);
  get_to("eps_steps", c.eps_steps);
  get_to("restarts", c.restarts);
  get_to("seed", c.seed);
  get_to("sigma", c.sigma);
  get_to("coalescence_tol", c.coalescence_tol);
  get_to("gradient_tolerance", c.gradient_tolerance);
  get_to("step_tolerance", c.step_tolerance);
  get_to("max_iterations", c.max_iterations);
  get_to("out_dir", c.out_dir);
  get_to("timing", c.timing);
  c.validate();
  return c;
}

void save_run_config(const std::string& path, const RunConfig& config) {
  spill(path, format_run_config(config));
}

RunConfig load_run_config(const std::string& path) {
  try {
    return parse_run_config(slurp(path));
  } catch (const LoadError& e) {
    throw LoadError(path + ": " + e.what());
  }
}

GateSpec resolve_gate_spec(const RunConfig& config) {
  config.validate();
  if (config.gate != "custom") return gate_catalog(parse_gate_name(config.gate));

  TargetGate target;
  if (!config.target_file.empty()) {
    target.n_qubits = config.n_qubits;
    target.matrix = load_matrix(config.target_file);
    target.label = "custom";
    target.validate(1e-10);
  } else {
    target = cartan_two_qubit(CartanCoords{config.cartan[0], config.cartan[1], config.cartan[2]});
    target.label = "custom";
  }
  std::vector<int> ancilla = config.ancilla_occupations;
  if (ancilla.empty()) ancilla = {1, 1};
  return make_gate_spec(std::move(target), FockState(std::move(ancilla)), config.vacuum_modes,
                        config.measured_pattern);
}

OptimizerConfig resolve_optimizer_config(const RunConfig& config) {
  OptimizerConfig cfg;
  cfg.epsilon = config.epsilon;
  cfg.rng_seed = config.seed;
  cfg.perturbation_sigma = config.sigma;
  cfg.coalescence_tol = config.coalescence_tol;
  cfg.gradient_tolerance = config.gradient_tolerance;
  cfg.step_tolerance = config.step_tolerance;
  cfg.max_iterations = config.max_iterations;
  return cfg;
}

std::vector<double> resolve_epsilon_schedule(const RunConfig& config,
                                             const std::string& gate_label) {
  EpsilonRange range = default_epsilon_range(gate_label);
  if (config.eps_min > 0) range.eps_min = config.eps_min;
  if (config.eps_max > 0) range.eps_max = config.eps_max;
  range.steps = config.eps_steps;
  return geometric_schedule(range.eps_min, range.eps_max, range.steps);
}

std::string format_fit(const std::string& gate, const FrontierFit& fit) {
  json j;
  j["gate"] = gate;
  j["s0"] = fit.s0;
  j["s1"] = fit.s1;
  j["s2"] = fit.s2;
  j["ratio"] = fit.ratio;
  j["delta_max"] = fit.delta_max;
  j["rms_residual"] = fit.rms_residual;
  j["n_points"] = fit.n_points;
  return j.dump(2) + "\n";
}

std::pair<std::string, FrontierFit> parse_fit(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw LoadError(std::string("fit: invalid JSON (") + e.what() + ")");
  }
  if (!j.contains("gate") || !j["gate"].is_string())
    throw LoadError("fit: missing gate label");
  FrontierFit fit;
  fit.s0 = require_finite(j, "s0", "fit");
  fit.s1 = require_finite(j, "s1", "fit");
  fit.s2 = require_finite(j, "s2", "fit");
  fit.ratio = require_finite(j, "ratio", "fit");
  fit.delta_max = require_finite(j, "delta_max", "fit");
  fit.rms_residual = require_finite(j, "rms_residual", "fit");
  if (!j.contains("n_points") || !j["n_points"].is_number_integer())
    throw LoadError("fit: missing integer n_points");
  fit.n_points = j["n_points"].get<int>();
  if (fit.s0 <= 0) throw LoadError("fit: s0 must be positive");
  if (fit.rms_residual < 0) throw LoadError("fit: rms_residual must be non-negative");
  return {j["gate"].get<std::string>(), fit};
}

void save_fit(const std::string& path, const std::string& gate, const FrontierFit& fit) {
  spill(path, format_fit(gate, fit));
}

std::pair<std::string, FrontierFit> load_fit(const std::string& path) {
  try {
    return parse_fit(slurp(path));
  } catch (const LoadError& e) {
    throw LoadError(path + ": " + e.what());
  }
}

}  // namespace loqc
