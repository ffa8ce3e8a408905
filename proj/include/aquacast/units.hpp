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
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aquacast {

/// Error raised for any violated precondition in the engine.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class Dimension { energy, volume, flow, intensity, currency, unit_cost };

enum class Unit {
  MWh,
  TWh,
  kWh,
  L,
  ML,
  gallon,
  MG,
  MGD,
  L_per_kWh,
  gallon_per_MW_day,
  dollar,
  dollar_per_MGD,
};

/// Conversion constants.  The gallon factor is configurable so that table
/// conventions using a truncated factor can share the same machinery.
struct UnitSystem {
  double liters_per_gallon = 3.785411784;

  static constexpr UnitSystem us_liquid() { return UnitSystem{}; }
};

inline constexpr double kKwhPerMwDay = 24000.0;
inline constexpr double kDaysPerYear = 365.0;

constexpr Dimension dimension_of(Unit u) {
  switch (u) {
    case Unit::MWh:
    case Unit::TWh:
    case Unit::kWh:
      return Dimension::energy;
    case Unit::L:
    case Unit::ML:
    case Unit::gallon:
    case Unit::MG:
      return Dimension::volume;
    case Unit::MGD:
      return Dimension::flow;
    case Unit::L_per_kWh:
    case Unit::gallon_per_MW_day:
      return Dimension::intensity;
    case Unit::dollar:
      return Dimension::currency;
    case Unit::dollar_per_MGD:
      return Dimension::unit_cost;
  }
  return Dimension::energy;
}

constexpr std::string_view unit_name(Unit u) {
  switch (u) {
    case Unit::MWh: return "MWh";
    case Unit::TWh: return "TWh";
    case Unit::kWh: return "kWh";
    case Unit::L: return "L";
    case Unit::ML: return "ML";
    case Unit::gallon: return "gal";
    case Unit::MG: return "MG";
    case Unit::MGD: return "MGD";
    case Unit::L_per_kWh: return "L/kWh";
    case Unit::gallon_per_MW_day: return "gal/MW-day";
    case Unit::dollar: return "$";
    case Unit::dollar_per_MGD: return "$/MGD";
  }
  return "?";
}

inline Unit parse_unit(std::string_view s) {
  static constexpr std::array<Unit, 12> all = {
      Unit::MWh, Unit::TWh, Unit::kWh, Unit::L, Unit::ML, Unit::gallon,
      Unit::MG, Unit::MGD, Unit::L_per_kWh, Unit::gallon_per_MW_day,
      Unit::dollar, Unit::dollar_per_MGD};
  for (Unit u : all)
    if (unit_name(u) == s) return u;
  throw Error("unknown unit '" + std::string(s) + "'");
}

namespace detail {

// Factor taking one `u` into the canonical unit of its dimension
// (MWh, L, MGD, L/kWh, $, $/MGD).
inline double to_canonical(Unit u, const UnitSystem& sys) {
  switch (u) {
    case Unit::MWh: return 1.0;
    case Unit::TWh: return 1e6;
    case Unit::kWh: return 1e-3;
    case Unit::L: return 1.0;
    case Unit::ML: return 1e6;
    case Unit::gallon: return sys.liters_per_gallon;
    case Unit::MG: return sys.liters_per_gallon * 1e6;
    case Unit::MGD: return 1.0;
    case Unit::L_per_kWh: return 1.0;
    case Unit::gallon_per_MW_day: return sys.liters_per_gallon / kKwhPerMwDay;
    case Unit::dollar: return 1.0;
    case Unit::dollar_per_MGD: return 1.0;
  }
  return 1.0;
}

}  // namespace detail

/// A scalar tagged with a unit.  Arithmetic is only defined between
/// dimension-compatible quantities.
struct Quantity {
  double value = 0.0;
  Unit unit = Unit::MWh;

  Dimension dimension() const { return dimension_of(unit); }
};

inline Quantity convert(const Quantity& q, Unit target,
                        const UnitSystem& sys = UnitSystem::us_liquid()) {
  if (q.dimension() != dimension_of(target))
    throw Error("incompatible dimensions: cannot convert " +
                std::string(unit_name(q.unit)) + " to " +
                std::string(unit_name(target)));
  if (q.unit == target) return q;
  double v = q.value * detail::to_canonical(q.unit, sys) /
             detail::to_canonical(target, sys);
  return {v, target};
}

inline void require_compatible(const Quantity& a, const Quantity& b) {
  if (a.dimension() != b.dimension())
    throw Error("incompatible dimensions: " + std::string(unit_name(a.unit)) +
                " and " + std::string(unit_name(b.unit)));
}

inline Quantity operator+(const Quantity& a, const Quantity& b) {
  require_compatible(a, b);
  return {a.value + convert(b, a.unit).value, a.unit};
}

inline Quantity operator-(const Quantity& a, const Quantity& b) {
  require_compatible(a, b);
  return {a.value - convert(b, a.unit).value, a.unit};
}

inline Quantity operator*(const Quantity& a, double k) { return {a.value * k, a.unit}; }
inline Quantity operator*(double k, const Quantity& a) { return {a.value * k, a.unit}; }
inline Quantity operator/(const Quantity& a, double k) { return {a.value / k, a.unit}; }

/// Dimensionless ratio of two compatible quantities.
inline double ratio(const Quantity& a, const Quantity& b) {
  require_compatible(a, b);
  return a.value / convert(b, a.unit).value;
}

/// Annual volume to average daily flow over a 365-day year.
inline Quantity annual_to_daily(const Quantity& annual,
                                const UnitSystem& sys = UnitSystem::us_liquid()) {
  if (annual.dimension() != Dimension::volume)
    throw Error("annual_to_daily expects a volume, got " +
                std::string(unit_name(annual.unit)));
  if (annual.value < 0) throw Error("annual_to_daily: negative volume");
  return {convert(annual, Unit::MG, sys).value / kDaysPerYear, Unit::MGD};
}

// ---------------------------------------------------------------------------
// Enumerations shared by every module.

enum class Segment { hyperscale = 0, colocation = 1, others = 2 };
inline constexpr std::array<Segment, 3> kSegments = {
    Segment::hyperscale, Segment::colocation, Segment::others};

enum class GrowthCase { low = 0, mid = 1, high = 2 };
inline constexpr std::array<GrowthCase, 3> kGrowthCases = {
    GrowthCase::low, GrowthCase::mid, GrowthCase::high};

/// `custom` marks caller-supplied trajectories; it is not one of the named
/// scenarios and never parses from a scenario name.
enum class ScenarioKind { baseline, moderate, optimistic, reference_lbnl, reference_ns, custom };
inline constexpr std::array<ScenarioKind, 5> kScenarioKinds = {
    ScenarioKind::baseline, ScenarioKind::moderate, ScenarioKind::optimistic,
    ScenarioKind::reference_lbnl, ScenarioKind::reference_ns};

constexpr std::string_view to_string(Segment s) {
  switch (s) {
    case Segment::hyperscale: return "hyperscale";
    case Segment::colocation: return "colocation";
    case Segment::others: return "others";
  }
  return "?";
}

constexpr std::string_view to_string(GrowthCase g) {
  switch (g) {
    case GrowthCase::low: return "low";
    case GrowthCase::mid: return "mid";
    case GrowthCase::high: return "high";
  }
  return "?";
}

constexpr std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::baseline: return "baseline";
    case ScenarioKind::moderate: return "moderate";
    case ScenarioKind::optimistic: return "optimistic";
    case ScenarioKind::reference_lbnl: return "reference-lbnl";
    case ScenarioKind::reference_ns: return "reference-ns";
    case ScenarioKind::custom: return "custom";
  }
  return "?";
}

constexpr bool is_reference(ScenarioKind k) {
  return k == ScenarioKind::reference_lbnl || k == ScenarioKind::reference_ns;
}

inline Segment parse_segment(std::string_view s) {
  for (Segment v : kSegments)
    if (to_string(v) == s) return v;
  throw Error("unknown segment '" + std::string(s) + "'");
}

inline GrowthCase parse_growth(std::string_view s) {
  for (GrowthCase v : kGrowthCases)
    if (to_string(v) == s) return v;
  throw Error("unknown growth case '" + std::string(s) + "'");
}

inline ScenarioKind parse_scenario(std::string_view s) {
  for (ScenarioKind v : kScenarioKinds)
    if (to_string(v) == s) return v;
  throw Error("unknown scenario '" + std::string(s) + "'");
}

/// Fixed-size map keyed by Segment.
template <typename T>
struct SegmentMap {
  std::array<T, 3> v{};

  T& operator[](Segment s) { return v[static_cast<std::size_t>(s)]; }
  const T& operator[](Segment s) const { return v[static_cast<std::size_t>(s)]; }
  bool operator==(const SegmentMap&) const = default;
};

// ---------------------------------------------------------------------------
// Display rounding.

enum class RoundingPolicy { table_integer, three_decimal, two_decimal };

constexpr int decimals_of(RoundingPolicy p) {
  switch (p) {
    case RoundingPolicy::table_integer: return 0;
    case RoundingPolicy::three_decimal: return 3;
    case RoundingPolicy::two_decimal: return 2;
  }
  return 0;
}

/// Relative slack treating values a few ULPs below a decimal half as the
/// half itself, so 2950.4999999999995 rounds like 2950.5.
inline constexpr double kHalfSlack = 1e-12;

/// Half-away-from-zero rounding to `decimals` places.
inline double round_half_away(double x, int decimals) {
  double scale = std::pow(10.0, decimals);
  double r = std::round(x * scale * (1.0 + kHalfSlack)) / scale;
  return r == 0.0 ? 0.0 : r;  // drop negative zero
}

/// Formats `x` with half-away-from-zero rounding.  Optional thousands
/// separators on the integer part.
inline std::string format_fixed(double x, int decimals, bool thousands = false) {
  double r = round_half_away(x, decimals);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, r);
  std::string s(buf);
  if (!thousands) return s;
  std::size_t start = (s[0] == '-') ? 1 : 0;
  std::size_t dot = s.find('.');
  std::size_t int_end = dot == std::string::npos ? s.size() : dot;
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(int_end) - 3;
       i > static_cast<std::ptrdiff_t>(start); i -= 3)
    s.insert(static_cast<std::size_t>(i), ",");
  return s;
}

inline std::string display_round(double x, RoundingPolicy p) {
  return format_fixed(x, decimals_of(p));
}

inline std::string display_round(const Quantity& q, RoundingPolicy p) {
  return display_round(q.value, p);
}

}  // namespace aquacast
