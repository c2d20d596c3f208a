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

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loqc {

/// Least-squares frontier model S(delta) = s0 + s1 sqrt(delta) + s2 delta
/// over the window 0 < delta <= delta_max.
struct FrontierFit {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double ratio = 0.0;  // s1 / s0
  double delta_max = 0.0;
  double rms_residual = 0.0;
  int n_points = 0;
};

/// Ordinary least squares on the basis {1, sqrt(delta), delta}. Requires at
/// least 6 points with distinct delta inside the window; throws
/// InsufficientDataError otherwise.
FrontierFit fit_frontier(const std::vector<std::pair<double, double>>& points,
                         double delta_max);

/// Reference frontier ratios s1/s0 for the stock gates.
const std::map<std::string, double>& reference_ratios();

/// Reference success rates at perfect fidelity. The Toffoli gate carries two
/// published anchors that disagree slightly; both are retained.
struct SuccessAnchor {
  double primary;
  std::optional<double> secondary;
};
const std::map<std::string, SuccessAnchor>& reference_success();

struct RatioRow {
  std::string gate;
  FrontierFit fit;
  double reference_ratio = 0.0;      // 0 when no reference exists
  double relative_deviation = 0.0;   // |ratio - ref| / ref
};

/// One row per gate, ordered by fitted ratio ascending.
std::vector<RatioRow> ratio_report(const std::map<std::string, FrontierFit>& fits);

/// Renders the comparison as aligned text / CSV.
std::string ratio_report_text(const std::vector<RatioRow>& rows);
std::string ratio_report_csv(const std::vector<RatioRow>& rows);

}  // namespace loqc
