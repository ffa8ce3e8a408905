// Copyright 2026 The Aquacast Authors
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

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aquacast/energy.hpp"
#include "aquacast/units.hpp"

namespace aquacast {

inline double scenario_wue(double base, double annual_reduction, int year,
                           int base_year = kFirstYear) {
  if (annual_reduction < 0 || annual_reduction >= 1)
    throw Error("scenario_wue: annual reduction must lie in [0, 1)");
  if (base <= 0) throw Error("scenario_wue: base WUE must be positive");
  return base * std::pow(1.0 - annual_reduction, year - base_year);
}

inline YearSeries extend_lbnl_wue(const std::map<int, double>& known, double delta) {
  YearSeries s = extend_linear(known, delta);
  for (double v : s.v)
    if (v <= 0) throw Error("extend_lbnl_wue: non-positive WUE");
  return s;
}

/// Adoption-weighted mix of a conventional and an advanced-cooling WUE.
struct AlcBlend {
  double alpha0 = 0.05;
  double adoption_cagr = 0.20;
  double wue_base = 0.0;
  double wue_alc = 0.0;

  double alpha(int year) const {
    return alpha0 * std::pow(1.0 + adoption_cagr, year - kFirstYear);
  }
};

inline double ns_blend(const AlcBlend& b, int year) {
  double a = b.alpha(year);
  if (a < 0 || a > 1) throw Error("ns_blend: adoption fraction outside [0, 1]");
  return (1.0 - a) * b.wue_base + a * b.wue_alc;
}

/// Solves for (wue_base, wue_alc) so the blend hits `w0` in `y0` and `w1`
/// in `y1`.
inline std::pair<double, double> solve_blend_endpoints(double alpha0, double cagr,
                                                       int y0, double w0, int y1,
                                                       double w1) {
  AlcBlend b{alpha0, cagr, 0, 0};
  double a0 = b.alpha(y0), a1 = b.alpha(y1);
  double det = (1 - a0) * a1 - a0 * (1 - a1);
  if (std::abs(det) < 1e-15) throw Error("solve_blend_endpoints: singular system");
  double base = (w0 * a1 - a0 * w1) / det;
  double alc = ((1 - a0) * w1 - (1 - a1) * w0) / det;
  return {base, alc};
}

/// One observation for least-squares blend fitting: `target` is expected to
/// equal `weight * ns_blend(year)`.
struct BlendObservation {
  int year = kFirstYear;
  double weight = 1.0;
  double target = 0.0;
};

/// Least-squares (wue_base, wue_alc) over a set of weighted observations.
inline std::pair<double, double> fit_alc_blend(double alpha0, double cagr,
                                               const std::vector<BlendObservation>& obs) {
  AlcBlend b{alpha0, cagr, 0, 0};
  double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
  for (const auto& o : obs) {
    double x1 = o.weight * (1 - b.alpha(o.year));
    double x2 = o.weight * b.alpha(o.year);
    s11 += x1 * x1;
    s12 += x1 * x2;
    s22 += x2 * x2;
    t1 += x1 * o.target;
    t2 += x2 * o.target;
  }
  double det = s11 * s22 - s12 * s12;
  if (std::abs(det) < 1e-300) throw Error("fit_alc_blend: degenerate observations");
  return {(t1 * s22 - t2 * s12) / det, (s11 * t2 - s12 * t1) / det};
}

/// IT-weighted average; the denominator always spans all three segments.
inline double us_average_wue(const SegmentMap<double>& it, const SegmentMap<double>& wue) {
  double num = 0, den = 0;
  for (Segment s : kSegments) {
    num += it[s] * wue[s];
    den += it[s];
  }
  if (den <= 0) throw Error("us_average_wue: zero total IT energy");
  return num / den;
}

// ---------------------------------------------------------------------------

struct WueDataset {
  std::map<ScenarioKind, double> annual_reduction;  // baseline/moderate/optimistic
  double others_wue = 0.0;
  std::array<std::map<int, double>, 2> lbnl;  // low, high
  double lbnl_delta = 0.01;
  AlcBlend ns;
};

/// WUE by year for one scenario.  Segment-scoped scenarios fill `segment`;
/// reference scenarios fill `us` (low/high growth; identical for NS).
struct WueTrajectory {
  std::string label;
  ScenarioKind kind = ScenarioKind::baseline;
  bool per_segment = true;
  double annual_reduction = 0.0;
  SegmentMap<YearSeries> segment;
  std::array<YearSeries, 2> us;

  /// Reference WUE for the given growth case; mid is the mean of low/high.
  double us_reference(GrowthCase g, int year) const {
    if (g == GrowthCase::low) return us[0][year];
    if (g == GrowthCase::high) return us[1][year];
    return (us[0][year] + us[1][year]) / 2.0;
  }
};

inline WueTrajectory segment_trajectory(std::string label, ScenarioKind kind,
                                        const SegmentMap<double>& base, double reduction) {
  WueTrajectory t;
  t.label = std::move(label);
  t.kind = kind;
  t.per_segment = true;
  t.annual_reduction = reduction;
  for (Segment s : kSegments) {
    for (int y = kFirstYear; y <= kLastYear; ++y)
      t.segment[s][y] = base[s] == 0.0 ? 0.0 : scenario_wue(base[s], reduction, y);
  }
  return t;
}

/// `base` holds segment WUEs from operator aggregation; the others entry is
/// replaced by the dataset's structural value.
inline WueTrajectory build_trajectory(ScenarioKind kind, const WueDataset& d,
                                      SegmentMap<double> base) {
  base[Segment::others] = d.others_wue;
  if (!is_reference(kind)) {
    auto it = d.annual_reduction.find(kind);
    if (it == d.annual_reduction.end())
      throw Error("no reduction rate for scenario " + std::string(to_string(kind)));
    return segment_trajectory(std::string(to_string(kind)), kind, base, it->second);
  }
  WueTrajectory t;
  t.label = std::string(to_string(kind));
  t.kind = kind;
  t.per_segment = false;
  if (kind == ScenarioKind::reference_lbnl) {
    t.us[0] = extend_lbnl_wue(d.lbnl[0], d.lbnl_delta);
    t.us[1] = extend_lbnl_wue(d.lbnl[1], d.lbnl_delta);
  } else {
    for (int y = kFirstYear; y <= kLastYear; ++y) t.us[0][y] = ns_blend(d.ns, y);
    t.us[1] = t.us[0];
  }
  return t;
}

}  // namespace aquacast
