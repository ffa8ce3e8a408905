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

#include <string>
#include <utility>

#include "aquacast/energy.hpp"
#include "aquacast/units.hpp"
#include "aquacast/wue.hpp"

namespace aquacast {

struct ConsumptiveRatios {
  SegmentMap<double> ratio{{0.772, 0.787, 0.75}};
};

struct PeakingAssumption {
  double beta = 4.5;
};

struct CostBand {
  double low = 10e6;   // $ per MGD
  double high = 40e6;  // $ per MGD
};

struct NationalBenchmarks {
  double public_withdrawal_mgd = 35400.0;
  double public_consumptive_mgd = 4219.0;
};

struct WaterParameters {
  UnitSystem units{3.785};
  PeakingAssumption peaking;
  CostBand cost;
  NationalBenchmarks benchmarks;
  double default_consumptive_ratio = 0.75;
};

inline void validate(const ConsumptiveRatios& r) {
  for (Segment s : kSegments)
    if (!(r.ratio[s] > 0 && r.ratio[s] <= 1))
      throw Error("consumptive ratio for " + std::string(to_string(s)) + " outside (0, 1]");
}

inline void validate(const PeakingAssumption& p) {
  if (!(p.beta >= 1)) throw Error("peaking factor must be >= 1");
}

inline void validate(const CostBand& c) {
  if (!(c.low > 0 && c.low <= c.high)) throw Error("cost band requires 0 < low <= high");
}

/// IT energy [TWh] times WUE [L/kWh], in million gallons.
inline double annual_consumption(double it_twh, double wue,
                                 const UnitSystem& units = UnitSystem::us_liquid()) {
  if (it_twh < 0 || wue < 0) throw Error("annual_consumption: negative input");
  return convert({it_twh * 1e9 * wue, Unit::L}, Unit::MG, units).value;
}

inline double annual_withdrawal(const SegmentMap<double>& consumption,
                                const ConsumptiveRatios& r) {
  double w = 0;
  for (Segment s : kSegments) {
    if (r.ratio[s] <= 0) throw Error("annual_withdrawal: zero consumptive ratio");
    w += consumption[s] / r.ratio[s];
  }
  return w;
}

inline double capacity(double add_mgd, const PeakingAssumption& p) {
  if (add_mgd < 0) throw Error("capacity: negative average daily demand");
  return add_mgd * p.beta;
}

inline std::pair<double, double> valuation(double capacity_mgd, const CostBand& band) {
  if (capacity_mgd < 0) throw Error("valuation: negative capacity");
  return {capacity_mgd * band.low, capacity_mgd * band.high};
}

// ---------------------------------------------------------------------------

/// Water quantities for one (segment or total) column of one year.
struct WaterCell {
  double consumption = 0.0;  // MG/yr
  double withdrawal = 0.0;   // MG/yr
  double add = 0.0;          // MGD
  double mdd = 0.0;          // MGD
};

struct YearWater {
  SegmentMap<WaterCell> segment;
  WaterCell total;
};

struct ProjectionReport {
  std::string scenario;  // label: scenario kind or "custom"
  ScenarioKind kind = ScenarioKind::baseline;
  GrowthCase growth = GrowthCase::low;
  bool per_segment = true;
  int year_start = kFirstYear;
  int year_end = kLastYear;
  double beta = 4.5;
  CostBand cost;
  std::array<YearWater, kYearCount> years{};
  SegmentMap<double> capacity_increase;
  double total_capacity_increase = 0.0;
  SegmentMap<std::pair<double, double>> segment_valuation;
  std::pair<double, double> total_valuation{0.0, 0.0};

  YearWater& at(int year) { return years[YearSeries::index(year)]; }
  const YearWater& at(int year) const { return years[YearSeries::index(year)]; }
};

namespace detail {

inline void finish_cell(WaterCell& c, double beta, const UnitSystem& units) {
  c.add = annual_to_daily({c.withdrawal, Unit::MG}, units).value;
  c.mdd = capacity(c.add, PeakingAssumption{beta});
}

inline void finish_report(ProjectionReport& r, const UnitSystem& units) {
  for (int y = r.year_start; y <= r.year_end; ++y) {
    YearWater& yw = r.at(y);
    for (Segment s : kSegments) finish_cell(yw.segment[s], r.beta, units);
    finish_cell(yw.total, r.beta, units);
  }
  const YearWater& a = r.at(r.year_start);
  const YearWater& b = r.at(r.year_end);
  for (Segment s : kSegments) {
    r.capacity_increase[s] = b.segment[s].mdd - a.segment[s].mdd;
    r.segment_valuation[s] = valuation(std::max(0.0, r.capacity_increase[s]), r.cost);
  }
  r.total_capacity_increase = b.total.mdd - a.total.mdd;
  r.total_valuation = valuation(std::max(0.0, r.total_capacity_increase), r.cost);
}

inline WaterCell mean_cell(const WaterCell& a, const WaterCell& b) {
  return {(a.consumption + b.consumption) / 2, (a.withdrawal + b.withdrawal) / 2,
          (a.add + b.add) / 2, (a.mdd + b.mdd) / 2};
}

}  // namespace detail

inline double capacity_increase(const ProjectionReport& r, int y0, int y1) {
  if (y0 < r.year_start || y1 > r.year_end || y0 > y1)
    throw Error("capacity_increase: year outside report range");
  return r.at(y1).total.mdd - r.at(y0).total.mdd;
}

/// Projection for a single non-mid growth case.
inline ProjectionReport project_case(const EnergyProjection& energy, const WueTrajectory& wue,
                                     GrowthCase g, const ConsumptiveRatios& ratios,
                                     const WaterParameters& params, int year_start = kFirstYear,
                                     int year_end = kLastYear) {
  if (g == GrowthCase::mid) throw Error("project_case: mid is derived from low and high");
  if (year_start > year_end) throw Error("project_case: empty year range");
  validate(ratios);
  validate(params.peaking);
  validate(params.cost);
  ProjectionReport r;
  r.scenario = wue.label;
  r.kind = wue.kind;
  r.growth = g;
  r.per_segment = wue.per_segment;
  r.year_start = year_start;
  r.year_end = year_end;
  r.beta = params.peaking.beta;
  r.cost = params.cost;
  for (int y = year_start; y <= year_end; ++y) {
    YearWater& yw = r.at(y);
    SegmentMap<double> cons;
    for (Segment s : kSegments) {
      double it = energy.at(g, s).it[y];
      double w = wue.per_segment ? wue.segment[s][y] : wue.us_reference(g, y);
      cons[s] = annual_consumption(it, w, params.units);
      yw.segment[s].consumption = cons[s];
      yw.segment[s].withdrawal = cons[s] / ratios.ratio[s];
      yw.total.consumption += cons[s];
    }
    yw.total.withdrawal = annual_withdrawal(cons, ratios);
  }
  detail::finish_report(r, params.units);
  return r;
}

/// Mid report: every unrounded quantity is the mean of low and high.
inline ProjectionReport mean_report(const ProjectionReport& lo, const ProjectionReport& hi) {
  ProjectionReport r = lo;
  r.growth = GrowthCase::mid;
  for (int y = lo.year_start; y <= lo.year_end; ++y) {
    for (Segment s : kSegments)
      r.at(y).segment[s] = detail::mean_cell(lo.at(y).segment[s], hi.at(y).segment[s]);
    r.at(y).total = detail::mean_cell(lo.at(y).total, hi.at(y).total);
  }
  for (Segment s : kSegments) {
    r.capacity_increase[s] = (lo.capacity_increase[s] + hi.capacity_increase[s]) / 2;
    r.segment_valuation[s] = {(lo.segment_valuation[s].first + hi.segment_valuation[s].first) / 2,
                              (lo.segment_valuation[s].second + hi.segment_valuation[s].second) / 2};
  }
  r.total_capacity_increase = (lo.total_capacity_increase + hi.total_capacity_increase) / 2;
  r.total_valuation = {(lo.total_valuation.first + hi.total_valuation.first) / 2,
                       (lo.total_valuation.second + hi.total_valuation.second) / 2};
  return r;
}

inline ProjectionReport project(const EnergyProjection& energy, const WueTrajectory& wue,
                                GrowthCase g, const ConsumptiveRatios& ratios,
                                const WaterParameters& params, int year_start = kFirstYear,
                                int year_end = kLastYear) {
  if (g != GrowthCase::mid)
    return project_case(energy, wue, g, ratios, params, year_start, year_end);
  return mean_report(
      project_case(energy, wue, GrowthCase::low, ratios, params, year_start, year_end),
      project_case(energy, wue, GrowthCase::high, ratios, params, year_start, year_end));
}

struct BenchmarkShares {
  double withdrawal_share = 0.0;
  double consumption_share = 0.0;
};

inline BenchmarkShares benchmark_shares(const ProjectionReport& r, int year,
                                        const NationalBenchmarks& n) {
  if (n.public_withdrawal_mgd <= 0 || n.public_consumptive_mgd <= 0)
    throw Error("benchmark_shares: national constants must be positive");
  const WaterCell& c = r.at(year).total;
  return {c.add / n.public_withdrawal_mgd,
          c.consumption / kDaysPerYear / n.public_consumptive_mgd};
}

}  // namespace aquacast
