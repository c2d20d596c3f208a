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

#include "loqc/curvefit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "loqc/errors.hpp"

namespace loqc {

FrontierFit fit_frontier(const std::vector<std::pair<double, double>>& points,
                         double delta_max) {
  for (const auto& [delta, s] : points)
    if (delta < 0) throw ShapeError("fit_frontier: negative delta");

  std::vector<std::pair<double, double>> window;
  for (const auto& p : points)
    if (p.first > 0 && p.first <= delta_max) window.push_back(p);

  std::set<double> distinct;
  for (const auto& p : window) distinct.insert(p.first);
  if (distinct.size() < 6)
    throw InsufficientDataError(
        "fit_frontier: need at least 6 distinct delta values in (0, " +
        std::to_string(delta_max) + "], have " + std::to_string(distinct.size()));

  const auto n = static_cast<Eigen::Index>(window.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double delta = window[static_cast<size_t>(i)].first;
    design(i, 0) = 1.0;
    design(i, 1) = std::sqrt(delta);
    design(i, 2) = delta;
    rhs(i) = window[static_cast<size_t>(i)].second;
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(rhs);

  FrontierFit fit;
  fit.s0 = coef(0);
  fit.s1 = coef(1);
  fit.s2 = coef(2);
  fit.ratio = coef(1) / coef(0);
  fit.delta_max = delta_max;
  fit.rms_residual = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));
  fit.n_points = static_cast<int>(n);
  return fit;
}

const std::map<std::string, double>& reference_ratios() {
  static const std::map<std::string, double> table = {
      {"cnot", 1.03}, {"cs90", 1.62}, {"toffoli", 2.28}, {"b", 4.34}};
  return table;
}

const std::map<std::string, SuccessAnchor>& reference_success() {
  static const std::map<std::string, SuccessAnchor> table = {
      {"cnot", {2.0 / 27.0, std::nullopt}},
      {"cs90", {0.05165, std::nullopt}},
      {"b", {0.0071, std::nullopt}},
      {"toffoli", {0.0039, 0.0034}},
  };
  return table;
}

std::vector<RatioRow> ratio_report(const std::map<std::string, FrontierFit>& fits) {
  std::vector<RatioRow> rows;
  for (const auto& [gate, fit] : fits) {
    RatioRow row;
    row.gate = gate;
    row.fit = fit;
    auto it = reference_ratios().find(gate);
    if (it != reference_ratios().end()) {
      row.reference_ratio = it->second;
      row.relative_deviation = std::abs(fit.ratio - it->second) / it->second;
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(),
            [](const RatioRow& a, const RatioRow& b) { return a.fit.ratio < b.fit.ratio; });
  return rows;
}

std::string ratio_report_text(const std::vector<RatioRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(9) << "gate" << std::right << std::setw(11) << "S0"
     << std::setw(11) << "S1" << std::setw(11) << "S2" << std::setw(9) << "S1/S0"
     << std::setw(9) << "ref" << std::setw(9) << "dev%" << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(9) << r.gate << std::right << std::fixed
       << std::setprecision(5) << std::setw(11) << r.fit.s0 << std::setw(11) << r.fit.s1
       << std::setw(11) << r.fit.s2 << std::setprecision(2) << std::setw(9) << r.fit.ratio;
    if (r.reference_ratio > 0) {
      os << std::setw(9) << r.reference_ratio << std::setprecision(1) << std::setw(8)
         << 100.0 * r.relative_deviation << '%';
    } else {
      os << std::setw(9) << "-" << std::setw(9) << "-";
    }
    os << '\n';
    auto anchor = reference_success().find(r.gate);
    if (anchor != reference_success().end() && anchor->second.secondary) {
      const double fitted = r.fit.s0;
      const double a1 = anchor->second.primary;
      const double a2 = *anchor->second.secondary;
      os << "  note: " << r.gate << " carries two reference S(0) anchors " << std::setprecision(4)
         << a1 << " and " << a2 << "; fitted S0=" << fitted << " is closer to "
         << ((std::abs(fitted - a1) <= std::abs(fitted - a2)) ? a1 : a2) << '\n';
    }
  }
  return os.str();
}

std::string ratio_report_csv(const std::vector<RatioRow>& rows) {
  std::ostringstream os;
  os << "gate,s0,s1,s2,ratio,reference_ratio,relative_deviation\n";
  os << std::setprecision(10);
  for (const auto& r : rows) {
    os << r.gate << ',' << r.fit.s0 << ',' << r.fit.s1 << ',' << r.fit.s2 << ',' << r.fit.ratio
       << ',';
    if (r.reference_ratio > 0)
      os << r.reference_ratio << ',' << r.relative_deviation;
    else
      os << ',';
    os << '\n';
  }
  return os.str();
}

}  // namespace loqc
