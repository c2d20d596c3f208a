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

#include "loqc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace loqc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXcd unpack(const Eigen::VectorXd& x, int n) {
  Eigen::MatrixXcd u(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int base = 2 * (p * n + q);
      u(p, q) = Complex(x(base), x(base + 1));
    }
  return u;
}

Eigen::VectorXd pack(const Eigen::MatrixXcd& u) {
  const int n = static_cast<int>(u.rows());
  Eigen::VectorXd x(2 * n * n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int base = 2 * (p * n + q);
      x(base) = u(p, q).real();
      x(base + 1) = u(p, q).imag();
    }
  return x;
}

}  // namespace

GateProblem::GateProblem(GateSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  const int m_c = spec_.comp_photons();
  const FockBasis comp_basis = FockBasis::enumerate(spec_.n_comp_modes, m_c);
  const std::vector<FockState> rail = dual_rail_basis(spec_.target.n_qubits);

  // Detector pattern over the ancilla modes only; the search matrix carries
  // no vacuum modes.
  const FockState pattern(std::vector<int>(
      spec_.measured_pattern.begin(), spec_.measured_pattern.begin() + spec_.n_ancilla_modes));

  inputs_.reserve(rail.size());
  for (const FockState& r : rail)
    inputs_.push_back(FockState::concat(r, spec_.ancilla_occupations));
  outputs_.reserve(comp_basis.size());
  for (std::size_t k = 0; k < comp_basis.size(); ++k)
    outputs_.push_back(FockState::concat(comp_basis.state(k), pattern));

  target_ = embed_target(spec_.target).entries;
  target_raw_norm2_ = target_.squaredNorm();
  a_.resize(target_.rows(), target_.cols());
  const int n = n_modes();
  grad_g_.resize(n, n);
  grad_h_.resize(n, n);
}

ObjectiveValue GateProblem::evaluate(const Eigen::MatrixXcd& u, double epsilon,
                                     Eigen::VectorXd* gradient) {
  if (epsilon <= 0.0) throw ShapeError("objective: epsilon must be positive");
  const int n = n_modes();
  if (u.rows() != n || u.cols() != n)
    throw ShapeError("objective: matrix size does not match the gate spec");

  const int photons = spec_.total_photons();
  const auto d_out = static_cast<Eigen::Index>(outputs_.size());
  const auto d_c = static_cast<Eigen::Index>(inputs_.size());

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      u, gradient ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0);
  const double sigma = svd.singularValues()(0);
  if (!(sigma > 0.0)) throw NormError("objective: zero mode matrix");

  for (Eigen::Index j = 0; j < d_c; ++j)
    for (Eigen::Index k = 0; k < d_out; ++k)
      a_(k, j) = kernel_.amplitude(u, inputs_[static_cast<size_t>(j)],
                                   outputs_[static_cast<size_t>(k)]);

  const double g_raw = a_.squaredNorm();
  const Complex h_raw = (target_.conjugate().cwiseProduct(a_)).sum();
  const double denom = static_cast<double>(d_c) * std::pow(sigma, 2.0 * photons);

  ObjectiveValue out;
  if (g_raw < 1e-280) {
    // Fully filtered map: fidelity undefined, treat as an infeasible point.
    out.value = -kInf;
    if (gradient) gradient->setZero(n_parameters());
    return out;
  }
  out.success = g_raw / denom;
  out.fidelity = std::norm(h_raw) / (g_raw * target_raw_norm2_);
  out.value = out.success + out.fidelity / epsilon;

  if (!gradient) return out;

  grad_g_.setZero();
  grad_h_.setZero();
  for (Eigen::Index j = 0; j < d_c; ++j)
    for (Eigen::Index k = 0; k < d_out; ++k)
      kernel_.amplitude_with_gradient(u, inputs_[static_cast<size_t>(j)],
                                      outputs_[static_cast<size_t>(k)],
                                      std::conj(a_(k, j)), grad_g_,
                                      std::conj(target_(k, j)), grad_h_);

  const Eigen::VectorXcd u1 = svd.matrixU().col(0);
  const Eigen::VectorXcd v1 = svd.matrixV().col(0);
  gradient->resize(n_parameters());

  const double s_over_sigma = 2.0 * photons * out.success / sigma;
  const double h_norm2 = std::norm(h_raw);
  const double g2t = g_raw * g_raw * target_raw_norm2_;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const Complex gg = grad_g_(p, q);
      const Complex gh = grad_h_(p, q);
      const Complex uv = std::conj(u1(p)) * v1(q);
      const int base = 2 * (p * n + q);
      // d/d(Re U_pq) and d/d(Im U_pq); A is holomorphic in U, so
      // d|A|^2 = 2 Re(conj(A) dA) and dh picks up a factor i on the
      // imaginary component.
      const double dg_re = 2.0 * gg.real();
      const double dg_im = -2.0 * gg.imag();
      const double dsigma_re = uv.real();
      const double dsigma_im = -uv.imag();
      const double dh_re = std::real(std::conj(h_raw) * gh);
      const double dh_im = std::real(std::conj(h_raw) * Complex(0, 1) * gh);

      const double ds_re = dg_re / denom - s_over_sigma * dsigma_re;
      const double ds_im = dg_im / denom - s_over_sigma * dsigma_im;
      const double df_re = (2.0 * dh_re * g_raw - h_norm2 * dg_re) / g2t;
      const double df_im = (2.0 * dh_im * g_raw - h_norm2 * dg_im) / g2t;
      (*gradient)(base) = ds_re + df_re / epsilon;
      (*gradient)(base + 1) = ds_im + df_im / epsilon;
    }
  }
  return out;
}

ObjectiveValue objective(const ModeMatrix& u, const GateSpec& spec, double epsilon,
                         Eigen::VectorXd* gradient) {
  GateProblem problem(spec);
  return problem.evaluate(u.entries(), epsilon, gradient);
}

namespace {

// Shared state of one maximize() run, minimizing phi(x) = -(S + F/eps).
struct Ascent {
  GateProblem& problem;
  const OptimizerConfig& cfg;
  Eigen::VectorXd x;
  double f = kInf;           // phi at x
  Eigen::VectorXd grad;      // of phi
  int evals = 0;
  int iterations = 0;

  double eval(const Eigen::VectorXd& at, Eigen::VectorXd* g) {
    ++evals;
    const ObjectiveValue v =
        problem.evaluate(unpack(at, problem.n_modes()), cfg.epsilon, g);
    if (g) *g = -*g;
    return -v.value;
  }
};

struct LbfgsMemory {
  std::deque<Eigen::VectorXd> s, y;
  std::deque<double> rho;

  void clear() {
    s.clear();
    y.clear();
    rho.clear();
  }
  void push(Eigen::VectorXd si, Eigen::VectorXd yi, int cap) {
    const double ys = yi.dot(si);
    if (ys <= 1e-12 * si.norm() * yi.norm()) return;  // keep curvature positive
    s.push_back(std::move(si));
    y.push_back(std::move(yi));
    rho.push_back(1.0 / ys);
    if (static_cast<int>(s.size()) > cap) {
      s.pop_front();
      y.pop_front();
      rho.pop_front();
    }
  }
  Eigen::VectorXd direction(const Eigen::VectorXd& g) const {
    Eigen::VectorXd q = g;
    const int m = static_cast<int>(s.size());
    std::vector<double> alpha(static_cast<size_t>(m));
    for (int i = m - 1; i >= 0; --i) {
      alpha[static_cast<size_t>(i)] = rho[static_cast<size_t>(i)] * s[static_cast<size_t>(i)].dot(q);
      q -= alpha[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
    }
    if (m > 0) {
      const auto& yl = y[static_cast<size_t>(m - 1)];
      q *= s[static_cast<size_t>(m - 1)].dot(yl) / yl.squaredNorm();
    }
    for (int i = 0; i < m; ++i) {
      const double beta = rho[static_cast<size_t>(i)] * y[static_cast<size_t>(i)].dot(q);
      q += (alpha[static_cast<size_t>(i)] - beta) * s[static_cast<size_t>(i)];
    }
    return q;
  }
};

enum class StageExit { kGradConverged, kStalled, kBudget };

// L-BFGS with Armijo backtracking until gradient convergence or stall.
StageExit lbfgs_stage(Ascent& a) {
  LbfgsMemory mem;
  int flat_steps = 0;
  bool rescue_used = false;

  while (a.iterations < a.cfg.max_iterations) {
    const double gnorm = a.grad.norm();
    if (gnorm <= a.cfg.gradient_tolerance) return StageExit::kGradConverged;

    Eigen::VectorXd d = -mem.direction(a.grad);
    double slope = a.grad.dot(d);
    if (!(slope < 0)) {
      mem.clear();
      d = -a.grad;
      slope = -gnorm * gnorm;
    }

    double t = mem.s.empty() ? std::min(1.0, 1.0 / std::max(1.0, gnorm)) : 1.0;
    double ft = kInf;
    Eigen::VectorXd xt;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xt = a.x + t * d;
      ft = a.eval(xt, nullptr);
      if (ft <= a.f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    ++a.iterations;
    if (!accepted) {
      if (!rescue_used && !mem.s.empty()) {
        mem.clear();
        rescue_used = true;
        continue;  // retry from steepest ascent
      }
      return StageExit::kStalled;
    }
    rescue_used = false;

    Eigen::VectorXd gt;
    const double f_new = a.eval(xt, &gt);
    mem.push(xt - a.x, gt - a.grad, a.cfg.lbfgs_memory);
    const double improvement = a.f - f_new;
    a.x = std::move(xt);
    a.f = f_new;
    a.grad = std::move(gt);

    if (improvement <= 1e-13 * (1.0 + std::abs(a.f))) {
      if (++flat_steps >= 6) return StageExit::kStalled;
    } else {
      flat_steps = 0;
    }

    // Keep the scale-invariant iterate from drifting to extreme norms.
    const double scale = a.x.norm();
    if (scale > 8.0 || scale < 0.125) {
      a.x /= scale;
      mem.clear();
      a.f = a.eval(a.x, &a.grad);
    }
  }
  return StageExit::kBudget;
}

// Coordinate-wise quadratic-fit descent. Gradient-free, so it keeps making
// progress across the non-smooth ridge where degenerate singular values
// make the quasi-Newton direction oscillate. Returns the final probe step.
double polish_stage(Ascent& a, double h0) {
  double h = h0;
  const int n_coords = static_cast<int>(a.x.size());
  for (int sweep = 0; sweep < a.cfg.polish_max_sweeps; ++sweep) {
    bool improved = false;
    for (int c = 0; c < n_coords; ++c) {
      const double xc = a.x(c);
      a.x(c) = xc + h;
      const double fp = a.eval(a.x, nullptr);
      a.x(c) = xc - h;
      const double fm = a.eval(a.x, nullptr);

      double best_t = 0.0;
      double best_f = a.f;
      if (fp < best_f) {
        best_f = fp;
        best_t = h;
      }
      if (fm < best_f) {
        best_f = fm;
        best_t = -h;
      }
      const double curvature = fp + fm - 2.0 * a.f;
      if (curvature > 0.0) {
        const double t_star = 0.5 * h * (fm - fp) / curvature;
        if (std::isfinite(t_star) && std::abs(t_star) <= 4.0 * h) {
          a.x(c) = xc + t_star;
          const double fs = a.eval(a.x, nullptr);
          if (fs < best_f) {
            best_f = fs;
            best_t = t_star;
          }
        }
      }
      a.x(c) = xc + best_t;
      if (best_f < a.f) {
        a.f = best_f;
        improved = true;
      }
    }
    if (!improved) {
      h *= 0.35;
      if (h < a.cfg.step_tolerance) return h;
    }
  }
  return h;
}

}  // namespace

OptimizedPoint maximize(const ModeMatrix& u0, const GateSpec& spec,
                        const OptimizerConfig& cfg) {
  GateProblem problem(spec);
  Ascent a{problem, cfg, pack(u0.normalized().entries()), 0.0, {}, 0, 0};
  a.f = a.eval(a.x, &a.grad);

  bool grad_converged = false;
  bool polish_converged = false;
  for (int round = 0; round < cfg.max_rounds; ++round) {
    const StageExit exit = lbfgs_stage(a);
    if (exit == StageExit::kGradConverged) {
      grad_converged = true;
      break;
    }
    if (exit == StageExit::kBudget) break;

    const double f_before = a.f;
    const double h_final = polish_stage(a, 1e-3);
    if (h_final < cfg.step_tolerance) polish_converged = true;
    if (a.f >= f_before - 1e-13 * (1.0 + std::abs(f_before))) break;
  }

  Eigen::VectorXd g_final;
  const double f_final = a.eval(a.x, &g_final);

  OptimizedPoint point;
  point.u = ModeMatrix(unpack(a.x, problem.n_modes())).normalized();
  point.metrics = evaluate_metrics(point.u, spec, cfg.coalescence_tol);
  point.epsilon = cfg.epsilon;
  point.objective_value = -f_final;
  point.iterations = a.iterations;
  point.gradient_norm = g_final.norm();
  point.converged = grad_converged || polish_converged ||
                    point.gradient_norm <= cfg.gradient_tolerance;
  return point;
}

FamilyTrace trace_family(const OptimizedPoint& start, const GateSpec& spec,
                         const std::vector<double>& epsilon_schedule,
                         const OptimizerConfig& cfg) {
  if (!start.converged)
    throw ShapeError("trace_family: start point did not converge");
  for (size_t i = 1; i < epsilon_schedule.size(); ++i)
    if (epsilon_schedule[i] <= epsilon_schedule[i - 1])
      throw ShapeError("trace_family: epsilon schedule must be strictly increasing");

  std::mt19937_64 rng(cfg.rng_seed);
  FamilyTrace trace;
  trace.family_label = family_signature(start, start.u, spec);

  ModeMatrix current = start.u;
  for (double eps : epsilon_schedule) {
    OptimizerConfig step_cfg = cfg;
    step_cfg.epsilon = eps;
    const ModeMatrix u0 = perturbed(current, cfg.perturbation_sigma, rng);
    OptimizedPoint point = maximize(u0, spec, step_cfg);
    const bool ok = point.converged;
    trace.deltas.push_back(1.0 - point.metrics.fidelity);
    trace.points.push_back(std::move(point));
    if (!ok) {
      trace.completed = false;
      break;
    }
    current = trace.points.back().u;
  }

  // A singular value has coalesced once 1 - nsv stays below tolerance for
  // the rest of the trace; the event is dated at the first such point.
  const int n = spec.search_modes();
  for (int idx = 0; idx < n; ++idx) {
    int last_open = -1;
    bool ever_open = false;
    for (size_t t = 0; t < trace.points.size(); ++t) {
      const auto& nsv = trace.points[t].metrics.nsv;
      if (1.0 - nsv[static_cast<size_t>(idx)] > cfg.coalescence_tol) {
        last_open = static_cast<int>(t);
        ever_open = true;
      }
    }
    if (ever_open && last_open + 1 < static_cast<int>(trace.points.size())) {
      trace.coalescence_events.push_back(
          CoalescenceEvent{trace.deltas[static_cast<size_t>(last_open + 1)], idx});
    }
  }
  std::sort(trace.coalescence_events.begin(), trace.coalescence_events.end(),
            [](const CoalescenceEvent& a, const CoalescenceEvent& b) {
              return a.delta < b.delta;
            });
  return trace;
}

std::string family_signature(const OptimizedPoint& point, const ModeMatrix& u,
                             const GateSpec& spec) {
  std::ostringstream os;
  os << "S=" << std::fixed;
  os.precision(3);
  os << point.metrics.success;

  // NSV degeneracy pattern: cluster sizes at tolerance 1e-3, descending.
  os << "|nsv=";
  const auto& nsv = point.metrics.nsv;
  int cluster = 1;
  bool first = true;
  for (size_t i = 1; i <= nsv.size(); ++i) {
    if (i < nsv.size() && nsv[i - 1] - nsv[i] <= 1e-3) {
      ++cluster;
      continue;
    }
    os << (first ? "" : "+") << cluster;
    first = false;
    cluster = 1;
  }
  if (knill_form_score(u, spec) < 1e-3) os << "|knill";
  return os.str();
}

std::vector<SolutionFamily> random_restart_search(const GateSpec& spec, double epsilon,
                                                  int n_restarts, std::uint64_t seed,
                                                  const OptimizerConfig& base_cfg) {
  if (n_restarts < 1) throw ShapeError("random_restart_search: need at least one restart");
  OptimizerConfig cfg = base_cfg;
  cfg.epsilon = epsilon;

  const int n = spec.search_modes();
  std::vector<SolutionFamily> families;
  for (int r = 0; r < n_restarts; ++r) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    OptimizerConfig run_cfg = cfg;
    run_cfg.rng_seed = mix_seed(seed, static_cast<std::uint64_t>(r) + 0x10000);
    OptimizedPoint point = maximize(random_mode_matrix(n, rng), spec, run_cfg);
    const std::string sig = family_signature(point, point.u, spec);

    auto it = std::find_if(families.begin(), families.end(),
                           [&](const SolutionFamily& f) { return f.signature == sig; });
    if (it == families.end()) {
      families.push_back(SolutionFamily{sig, point, {point}});
    } else {
      if (point.metrics.success > it->representative.metrics.success)
        it->representative = point;
      it->members.push_back(std::move(point));
    }
  }
  std::sort(families.begin(), families.end(), [](const SolutionFamily& a, const SolutionFamily& b) {
    return a.representative.metrics.success > b.representative.metrics.success;
  });
  return families;
}

double knill_form_score(const ModeMatrix& u, const GateSpec& spec) {
  const int n_qubits = spec.target.n_qubits;
  const Eigen::MatrixXcd& m = u.entries();
  const int n = static_cast<int>(m.rows());
  if (n < 2 * n_qubits) throw ShapeError("knill_form_score: matrix smaller than dual-rail block");

  double total = 0.0;
  for (int q = 0; q < n_qubits; ++q) {
    const int a = 2 * q;
    const int b = 2 * q + 1;
    Eigen::Matrix2cd row_coupling = Eigen::Matrix2cd::Zero();
    Eigen::Matrix2cd col_coupling = Eigen::Matrix2cd::Zero();
    for (int j = 0; j < n; ++j) {
      if (j == a || j == b) continue;
      // |alpha m(a,j) + beta m(b,j)|^2 = x^dag (conj(s) s^T) x, s = (m(a,j), m(b,j))
      Eigen::Vector2cd s(m(a, j), m(b, j));
      row_coupling += s.conjugate() * s.transpose();
      Eigen::Vector2cd c(m(j, a), m(j, b));
      col_coupling += c.conjugate() * c.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> row_es(row_coupling);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> col_es(col_coupling);
    const double coupled = row_es.eigenvalues()(0) + col_es.eigenvalues()(0);
    const double scale = 0.5 * std::real(row_coupling.trace() + col_coupling.trace());
    if (scale > 1e-30) total += coupled / (2.0 * scale);
  }
  return total / n_qubits;
}

std::vector<double> geometric_schedule(double eps_min, double eps_max, int steps) {
  if (steps < 1 || eps_min <= 0 || eps_max < eps_min)
    throw ShapeError("geometric_schedule: need 0 < eps_min <= eps_max and steps >= 1");
  std::vector<double> schedule(static_cast<size_t>(steps));
  if (steps == 1) {
    schedule[0] = eps_min;
    return schedule;
  }
  const double ratio = std::pow(eps_max / eps_min, 1.0 / (steps - 1));
  double eps = eps_min;
  for (int i = 0; i < steps; ++i, eps *= ratio) schedule[static_cast<size_t>(i)] = eps;
  schedule.back() = eps_max;
  return schedule;
}

EpsilonRange default_epsilon_range(const std::string& gate_label) {
  if (gate_label == "cnot") return {0.25, 12.0, 80};
  if (gate_label == "cs90") return {0.22, 3.5, 80};
  if (gate_label == "b") return {0.6, 25.0, 80};
  if (gate_label == "toffoli") return {2.0, 30.0, 80};
  return {};
}

ModeMatrix random_mode_matrix(int n_modes, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(n_modes, n_modes);
  for (int i = 0; i < n_modes; ++i)
    for (int j = 0; j < n_modes; ++j) m(i, j) = Complex(gauss(rng), gauss(rng)) / std::sqrt(2.0);
  return ModeMatrix(std::move(m)).normalized();
}

ModeMatrix perturbed(const ModeMatrix& u, double sigma, std::mt19937_64& rng) {
  if (sigma < 0) throw ShapeError("perturbed: sigma must be non-negative");
  if (sigma == 0) return u;
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = u.n_modes();
  const double scale = sigma * u.entries().norm() / n;  // E||noise||_F = sigma ||U||_F
  Eigen::MatrixXcd m = u.entries();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) += scale * Complex(gauss(rng), gauss(rng)) / std::sqrt(2.0);
  return ModeMatrix(std::move(m));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined words
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace loqc
