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

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aquacast/units.hpp"

namespace aquacast {

/// One intermediate value in a calculator's formula trace.
struct TraceStep {
  std::string label;
  std::string formula;
  double value = 0.0;
  std::string unit;
};

using Trace = std::vector<TraceStep>;

struct DailySeries {
  std::vector<double> consumption_l;  // liters per day
  std::vector<double> it_kwh;         // kWh per day
};

inline void validate(const DailySeries& s) {
  if (s.consumption_l.empty()) throw Error("pwue: empty period");
  if (s.consumption_l.size() != s.it_kwh.size())
    throw Error("pwue: consumption and IT series differ in length");
  for (double e : s.it_kwh)
    if (!(e > 0)) throw Error("pwue: IT energy must be positive on every day");
}

/// Peak daily consumption-to-IT-energy ratio [L/kWh].
inline double pwue(const DailySeries& s) {
  validate(s);
  double best = s.consumption_l[0] / s.it_kwh[0];
  for (std::size_t i = 1; i < s.it_kwh.size(); ++i)
    best = std::max(best, s.consumption_l[i] / s.it_kwh[i]);
  return best;
}

inline double pwue_flat(double wue, double beta) {
  if (beta < 1) throw Error("pwue_flat: beta must be >= 1");
  return beta * wue;
}

// ---------------------------------------------------------------------------
// Water capacity impact.

struct WciInputs {
  double added = 0.0;      // MGD
  double allocated = 0.0;  // MGD
  double available = 0.0;  // MGD
};

enum class WciClass { insufficient, net_usage, neutral, positive };

constexpr std::string_view to_string(WciClass c) {
  switch (c) {
    case WciClass::insufficient: return "insufficient";
    case WciClass::net_usage: return "net-usage";
    case WciClass::neutral: return "neutral";
    case WciClass::positive: return "positive";
  }
  return "?";
}

struct WciResult {
  double score = 0.0;
  WciClass cls = WciClass::neutral;
  Trace trace;
};

inline WciClass classify_wci(double score) {
  if (score < -1) return WciClass::insufficient;
  if (score < 0) return WciClass::net_usage;
  if (score == 0) return WciClass::neutral;
  return WciClass::positive;
}

inline WciResult wci(const WciInputs& x) {
  if (!(x.available > 0)) throw Error("wci: available capacity must be positive");
  if (x.added < 0 || x.allocated < 0) throw Error("wci: capacities must be non-negative");
  WciResult r;
  double net = x.added - x.allocated;
  r.score = net / x.available;
  r.cls = classify_wci(r.score);
  r.trace = {{"net capacity", "added - allocated", net, "MGD"},
             {"wci", "(added - allocated) / available", r.score, ""}};
  return r;
}

// ---------------------------------------------------------------------------
// Site sizing.

inline double it_from_generators(double gen_mw, double redundancy = 2.0, double utilization = 0.8) {
  if (redundancy < 1) throw Error("it_from_generators: redundancy must be >= 1");
  if (!(utilization > 0 && utilization <= 1))
    throw Error("it_from_generators: utilization must lie in (0, 1]");
  if (gen_mw < 0) throw Error("it_from_generators: negative generator capacity");
  return gen_mw / redundancy * utilization;
}

struct SitePlan {
  double it_load_mw = 0.0;
  std::optional<double> annual_wue;  // L/kWh
  std::optional<double> pwue;        // L/kWh; overrides annual_wue * beta
  double beta = 1.0;
  double consumptive_ratio = 0.75;
};

struct SiteCapacityResult {
  double pwue = 0.0;            // L/kWh
  double withdrawal_l_per_kwh = 0.0;
  double peak_liters_per_day = 0.0;
  double capacity_mgd = 0.0;
  Trace trace;
};

inline SiteCapacityResult site_peak_capacity(const SitePlan& p,
                                             const UnitSystem& units = UnitSystem::us_liquid()) {
  if (p.it_load_mw < 0) throw Error("site_peak_capacity: negative IT load");
  if (!(p.consumptive_ratio > 0 && p.consumptive_ratio <= 1))
    throw Error("site_peak_capacity: consumptive ratio must lie in (0, 1]");
  SiteCapacityResult r;
  if (p.pwue) {
    if (*p.pwue < 0) throw Error("site_peak_capacity: negative pWUE");
    r.pwue = *p.pwue;
    r.trace.push_back({"pwue", "given", r.pwue, "L/kWh"});
  } else if (p.annual_wue) {
    if (*p.annual_wue < 0) throw Error("site_peak_capacity: negative WUE");
    r.pwue = pwue_flat(*p.annual_wue, p.beta);
    r.trace.push_back({"pwue", "beta * annual_wue", r.pwue, "L/kWh"});
  } else {
    throw Error("site_peak_capacity: pwue or annual_wue required");
  }
  r.withdrawal_l_per_kwh = r.pwue / p.consumptive_ratio;
  r.trace.push_back({"peak withdrawal intensity", "pwue / consumptive_ratio",
                     r.withdrawal_l_per_kwh, "L/kWh"});
  double kwh_per_day = p.it_load_mw * kKwhPerMwDay;
  r.trace.push_back({"IT energy per day", "it_load_mw * 24000", kwh_per_day, "kWh"});
  r.peak_liters_per_day = kwh_per_day * r.withdrawal_l_per_kwh;
  r.trace.push_back({"peak withdrawal", "kWh/day * L/kWh", r.peak_liters_per_day, "L/day"});
  r.capacity_mgd = convert({r.peak_liters_per_day, Unit::L}, Unit::MG, units).value;
  r.trace.push_back({"capacity", "L/day -> MGD", r.capacity_mgd, "MGD"});
  return r;
}

struct AllocationIntensity {
  double gallons_per_mw_day = 0.0;
  double l_per_kwh = 0.0;
};

inline AllocationIntensity allocation_intensity(double allocated_mgd, double it_mw,
                                                const UnitSystem& units = UnitSystem::us_liquid()) {
  if (!(it_mw > 0)) throw Error("allocation_intensity: IT load must be positive");
  if (allocated_mgd < 0) throw Error("allocation_intensity: negative allocation");
  AllocationIntensity a;
  a.gallons_per_mw_day = allocated_mgd * 1e6 / it_mw;
  a.l_per_kwh = convert({a.gallons_per_mw_day, Unit::gallon_per_MW_day}, Unit::L_per_kWh, units).value;
  return a;
}

/// Fleet peak flow [MGD] from a per-MW daily intensity [gal/MW-day].
inline double fleet_hypothetical(double total_it_mw, double gallons_per_mw_day) {
  if (total_it_mw < 0 || gallons_per_mw_day < 0)
    throw Error("fleet_hypothetical: inputs must be non-negative");
  return total_it_mw * gallons_per_mw_day / 1e6;
}

/// Fleet flow [MGD] from an intensity in L/kWh, optionally grossed up from
/// consumption to withdrawal by a consumptive ratio.
inline double fleet_from_wue(double total_it_mw, double wue, double consumptive_ratio = 1.0,
                             const UnitSystem& units = UnitSystem::us_liquid()) {
  if (!(consumptive_ratio > 0 && consumptive_ratio <= 1))
    throw Error("fleet_from_wue: consumptive ratio must lie in (0, 1]");
  if (total_it_mw < 0 || wue < 0) throw Error("fleet_from_wue: inputs must be non-negative");
  double liters = total_it_mw * kKwhPerMwDay * wue / consumptive_ratio;
  return convert({liters, Unit::L}, Unit::MG, units).value;
}

// ---------------------------------------------------------------------------
// Peaking factors.

inline double peaking_from_monthly(double monthly_peak_ratio, double daily_adjustment = 1.5) {
  if (monthly_peak_ratio < 1) throw Error("peaking_from_monthly: ratio must be >= 1");
  if (daily_adjustment < 1) throw Error("peaking_from_monthly: adjustment must be >= 1");
  return monthly_peak_ratio * daily_adjustment;
}

inline double peaking_from_allocation(double peak_capacity_mgd, double average_demand_mgd) {
  if (!(average_demand_mgd > 0)) throw Error("peaking_from_allocation: average demand must be positive");
  return peak_capacity_mgd / average_demand_mgd;
}

// ---------------------------------------------------------------------------
// Peak-power economics.

struct EconComparison {
  double it_mw = 100.0;
  double capacity_utilization = 0.5;
  double pue_delta = 0.15;
  double water_capacity_low_mgd = 0.5;
  double water_capacity_high_mgd = 2.5;
  double water_cost_per_mgd = 25e6;
  std::map<std::string, double> generator_cost_per_kw = {{"northeast", 2363.3},
                                                         {"south", 1240.0}};
};

struct EconRegionResult {
  std::string region;
  double generator_cost = 0.0;
  std::string verdict;  // relative to the water cost band
};

struct EconResult {
  double peak_mw_avoided = 0.0;
  double water_cost_low = 0.0;
  double water_cost_high = 0.0;
  std::vector<EconRegionResult> regions;
  Trace trace;
};

inline EconResult peak_power_econ(const EconComparison& e) {
  if (!(e.capacity_utilization > 0 && e.capacity_utilization <= 1))
    throw Error("peak_power_econ: capacity utilization must lie in (0, 1]");
  if (e.pue_delta < 0) throw Error("peak_power_econ: pue_delta must be >= 0");
  if (e.it_mw < 0) throw Error("peak_power_econ: negative IT load");
  if (!(e.water_cost_per_mgd > 0)) throw Error("peak_power_econ: water cost must be positive");
  if (e.water_capacity_low_mgd < 0 || e.water_capacity_high_mgd < e.water_capacity_low_mgd)
    throw Error("peak_power_econ: water capacity range must satisfy 0 <= low <= high");
  EconResult r;
  double peak_it = e.it_mw / e.capacity_utilization;
  r.peak_mw_avoided = peak_it * e.pue_delta;
  r.water_cost_low = e.water_capacity_low_mgd * e.water_cost_per_mgd;
  r.water_cost_high = e.water_capacity_high_mgd * e.water_cost_per_mgd;
  r.trace = {{"peak IT load", "it_mw / capacity_utilization", peak_it, "MW"},
             {"peak power avoided", "peak IT * pue_delta", r.peak_mw_avoided, "MW"},
             {"water cost low", "capacity_low * cost", r.water_cost_low, "$"},
             {"water cost high", "capacity_high * cost", r.water_cost_high, "$"}};
  for (const auto& [region, per_kw] : e.generator_cost_per_kw) {
    if (!(per_kw > 0)) throw Error("peak_power_econ: generator cost must be positive");
    EconRegionResult rr;
    rr.region = region;
    rr.generator_cost = r.peak_mw_avoided * 1000.0 * per_kw;
    if (rr.generator_cost > r.water_cost_high) rr.verdict = "above-water-band";
    else if (rr.generator_cost < r.water_cost_low) rr.verdict = "below-water-band";
    else rr.verdict = "within-water-band";
    r.trace.push_back({"generator cost " + region, "MW avoided * 1000 * $/kW", rr.generator_cost, "$"});
    r.regions.push_back(rr);
  }
  return r;
}

}  // namespace aquacast
