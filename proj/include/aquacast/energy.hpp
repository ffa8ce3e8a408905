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

#include "aquacast/units.hpp"

namespace aquacast {

inline constexpr int kFirstYear = 2024;
inline constexpr int kLastYear = 2030;
inline constexpr int kYearCount = kLastYear - kFirstYear + 1;

/// One value per modeled year, 2024 through 2030.
struct YearSeries {
  std::array<double, kYearCount> v{};

  static std::size_t index(int year) {
    if (year < kFirstYear || year > kLastYear)
      throw Error("year " + std::to_string(year) + " outside 2024-2030");
    return static_cast<std::size_t>(year - kFirstYear);
  }
  double& operator[](int year) { return v[index(year)]; }
  double operator[](int year) const { return v[index(year)]; }
  bool operator==(const YearSeries&) const = default;
};

inline YearSeries mean_series(const YearSeries& a, const YearSeries& b) {
  YearSeries out;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = (a.v[i] + b.v[i]) / 2.0;
  return out;
}

struct AnchorPair {
  int year_start = kFirstYear;
  int year_end = 2028;
  double v_start = 0.0;
  double v_end = 0.0;
};

inline double derive_cagr(const AnchorPair& a) {
  if (a.v_start <= 0 || a.v_end <= 0) throw Error("derive_cagr: non-positive anchor");
  if (a.year_end <= a.year_start) throw Error("derive_cagr: year_end must follow year_start");
  return std::pow(a.v_end / a.v_start, 1.0 / (a.year_end - a.year_start)) - 1.0;
}

inline double project_geometric(double base, double rate, int base_year, int target_year) {
  if (target_year < base_year) throw Error("project_geometric: target year before base year");
  if (base < 0) throw Error("project_geometric: negative base");
  return base * std::pow(1.0 + rate, target_year - base_year);
}

/// Series through both anchors: geometric interpolation between them and
/// extrapolation beyond.  Anchor years reproduce the anchors exactly.
inline YearSeries geometric_series(const AnchorPair& a) {
  double rate = derive_cagr(a);
  YearSeries s;
  for (int y = kFirstYear; y <= kLastYear; ++y) {
    if (y == a.year_start) s[y] = a.v_start;
    else if (y == a.year_end) s[y] = a.v_end;
    else if (y > a.year_start) s[y] = project_geometric(a.v_start, rate, a.year_start, y);
    else s[y] = a.v_start / std::pow(1.0 + rate, a.year_start - y);
  }
  return s;
}

/// Splits `pool` across segments in proportion to server energy.  The last
/// segment (in lexicographic order) with nonzero server energy absorbs the
/// rounding remainder so the allocation sums back to `pool`.
inline SegmentMap<double> allocate_overhead(const SegmentMap<double>& server, double pool) {
  double total = 0.0;
  for (Segment s : kSegments) {
    if (server[s] < 0) throw Error("allocate_overhead: negative server energy");
    total += server[s];
  }
  if (total <= 0) throw Error("allocate_overhead: all-zero server map");
  // kSegments is already in lexicographic order.
  Segment last = Segment::hyperscale;
  for (Segment s : kSegments)
    if (server[s] > 0) last = s;
  SegmentMap<double> out;
  double assigned = 0.0;
  for (Segment s : kSegments) {
    if (s == last) continue;
    out[s] = pool * (server[s] / total);
    assigned += out[s];
  }
  out[last] = pool - assigned;
  return out;
}

/// Appends `delta` per year after the last known year.
inline YearSeries extend_linear(const std::map<int, double>& known, double delta) {
  if (known.empty()) throw Error("extend_linear: no known values");
  if (known.begin()->first != kFirstYear)
    throw Error("extend_linear: series must start in 2024");
  YearSeries s;
  int last_year = known.rbegin()->first;
  for (const auto& [y, v] : known) s[y] = v;
  for (int y = last_year + 1; y <= kLastYear; ++y) s[y] = s[y - 1] + delta;
  return s;
}

inline YearSeries extend_pue(const std::map<int, double>& known, double delta_per_year) {
  if (delta_per_year > 0) throw Error("extend_pue: delta must be <= 0");
  YearSeries s = extend_linear(known, delta_per_year);
  for (double v : s.v)
    if (v < 1.0) throw Error("extend_pue: extension crosses PUE 1.0");
  return s;
}

inline double top_down_it(double total, double pue) {
  if (pue < 1.0) throw Error("top_down_it: PUE below 1");
  return total / pue;
}

inline double crosscheck_deviation(double bottom_up, double top_down) {
  if (top_down == 0) throw Error("crosscheck_deviation: zero top-down value");
  return (bottom_up - top_down) / top_down;
}

// ---------------------------------------------------------------------------
// Dataset and assembled projection.

struct EnergyAnchors {
  /// [segment][low=0|high=1]
  SegmentMap<std::array<AnchorPair, 2>> server;
  std::map<int, double> storage_reported;
  std::map<int, double> network_reported;
  std::array<std::map<int, double>, 2> total_energy;  // low, high
  std::array<double, 2> total_energy_cagr{};
  std::array<std::map<int, double>, 2> pue;
  double pue_delta = -0.02;
};

struct SegmentEnergySeries {
  Segment segment = Segment::hyperscale;
  GrowthCase growth = GrowthCase::low;
  YearSeries server, network, storage, it;
};

struct TopDownSeries {
  GrowthCase growth = GrowthCase::low;
  YearSeries total, pue, it;
};

/// Reported values through the last reported year, extrapolated after it
/// with the CAGR between the first and last reported years.
inline YearSeries pool_series(const std::map<int, double>& reported) {
  if (reported.size() < 2) throw Error("pool series needs at least two reported years");
  AnchorPair a{reported.begin()->first, reported.rbegin()->first,
               reported.begin()->second, reported.rbegin()->second};
  YearSeries s = geometric_series(a);
  for (const auto& [y, v] : reported) s[y] = v;
  return s;
}

struct EnergyProjection {
  // [growth][segment]
  std::array<SegmentMap<SegmentEnergySeries>, 3> segments;
  YearSeries storage_pool, network_pool;
  std::array<TopDownSeries, 2> top_down;  // low, high

  const SegmentEnergySeries& at(GrowthCase g, Segment s) const {
    return segments[static_cast<std::size_t>(g)][s];
  }
  SegmentMap<double> it_by_segment(GrowthCase g, int year) const {
    SegmentMap<double> m;
    for (Segment s : kSegments) m[s] = at(g, s).it[year];
    return m;
  }
  double total_it(GrowthCase g, int year) const {
    double t = 0;
    for (Segment s : kSegments) t += at(g, s).it[year];
    return t;
  }
  double total_server(GrowthCase g, int year) const {
    double t = 0;
    for (Segment s : kSegments) t += at(g, s).server[year];
    return t;
  }
};

inline EnergyProjection build_energy(const EnergyAnchors& a) {
  EnergyProjection p;
  p.storage_pool = pool_series(a.storage_reported);
  p.network_pool = pool_series(a.network_reported);

  for (int gi : {0, 2}) {
    auto& row = p.segments[static_cast<std::size_t>(gi)];
    for (Segment s : kSegments) {
      row[s].segment = s;
      row[s].growth = static_cast<GrowthCase>(gi);
      row[s].server = geometric_series(a.server[s][gi == 0 ? 0 : 1]);
    }
    for (int y = kFirstYear; y <= kLastYear; ++y) {
      SegmentMap<double> server;
      for (Segment s : kSegments) server[s] = row[s].server[y];
      auto net = allocate_overhead(server, p.network_pool[y]);
      auto sto = allocate_overhead(server, p.storage_pool[y]);
      for (Segment s : kSegments) {
        row[s].network[y] = net[s];
        row[s].storage[y] = sto[s];
        row[s].it[y] = server[s] + net[s] + sto[s];
      }
    }
  }
  auto& mid = p.segments[1];
  for (Segment s : kSegments) {
    const auto& lo = p.segments[0][s];
    const auto& hi = p.segments[2][s];
    mid[s].segment = s;
    mid[s].growth = GrowthCase::mid;
    mid[s].server = mean_series(lo.server, hi.server);
    mid[s].network = mean_series(lo.network, hi.network);
    mid[s].storage = mean_series(lo.storage, hi.storage);
    mid[s].it = mean_series(lo.it, hi.it);
  }

  for (int i = 0; i < 2; ++i) {
    TopDownSeries& td = p.top_down[static_cast<std::size_t>(i)];
    td.growth = i == 0 ? GrowthCase::low : GrowthCase::high;
    const auto& known = a.total_energy[static_cast<std::size_t>(i)];
    if (known.empty()) throw Error("top-down total energy missing");
    int last = known.rbegin()->first;
    for (const auto& [y, v] : known) td.total[y] = v;
    for (int y = last + 1; y <= kLastYear; ++y)
      td.total[y] = project_geometric(known.rbegin()->second,
                                      a.total_energy_cagr[static_cast<std::size_t>(i)], last, y);
    td.pue = extend_pue(a.pue[static_cast<std::size_t>(i)], a.pue_delta);
    for (int y = kFirstYear; y <= kLastYear; ++y) td.it[y] = top_down_it(td.total[y], td.pue[y]);
  }
  return p;
}

}  // namespace aquacast
