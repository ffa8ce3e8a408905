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

// Randomized property checks shared by the unit tests and the acceptance
// runner.  Each suite returns the number of cases run and the first few
// counterexamples.

#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aquacast/aquacast.hpp"

namespace aquacast::props {

struct Outcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> examples;

  bool ok() const { return cases > 0 && failures == 0; }
  void fail(const std::string& what) {
    ++failures;
    if (examples.size() < 5) examples.push_back(what);
  }
};

inline bool close_rel(double a, double b, double tol) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

inline constexpr Unit kAllUnits[] = {Unit::MWh, Unit::TWh, Unit::kWh, Unit::L, Unit::ML,
                                     Unit::gallon, Unit::MG, Unit::MGD, Unit::L_per_kWh,
                                     Unit::gallon_per_MW_day, Unit::dollar, Unit::dollar_per_MGD};

/// a -> b -> a returns the original value to 1e-12 relative, for every
/// compatible pair under both gallon conventions.
inline Outcome unit_round_trips(std::size_t n = 1000, unsigned seed = 11) {
  Outcome o{"unit round-trips", 0, 0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mant(1.0, 10.0);
  std::uniform_int_distribution<int> expo(-6, 9);
  const UnitSystem systems[] = {UnitSystem::us_liquid(), UnitSystem{3.785}};
  for (std::size_t i = 0; i < n; ++i) {
    double v = mant(rng) * std::pow(10.0, expo(rng));
    for (const auto& sys : systems)
      for (Unit a : kAllUnits)
        for (Unit b : kAllUnits) {
          if (dimension_of(a) != dimension_of(b)) continue;
          ++o.cases;
          double back = convert(convert({v, a}, b, sys), a, sys).value;
          if (std::abs(back - v) > 1e-12 * std::abs(v)) {
            std::ostringstream os;
            os << v << " " << unit_name(a) << " via " << unit_name(b) << " -> " << back;
            o.fail(os.str());
          }
        }
  }
  return o;
}

/// Every mid quantity equals the mean of the unrounded low and high ones.
inline Outcome mid_mean_law(const Engine& e) {
  Outcome o{"mid-mean law", 0, 0, {}};
  auto check = [&](double mid, double lo, double hi, const std::string& where) {
    ++o.cases;
    if (!close_rel(mid, (lo + hi) / 2, 1e-12)) o.fail(where);
  };
  const auto& en = e.energy;
  for (Segment s : kSegments)
    for (int y = kFirstYear; y <= kLastYear; ++y) {
      const auto& lo = en.at(GrowthCase::low, s);
      const auto& mi = en.at(GrowthCase::mid, s);
      const auto& hi = en.at(GrowthCase::high, s);
      std::string w = std::string(to_string(s)) + " " + std::to_string(y);
      check(mi.server[y], lo.server[y], hi.server[y], "server " + w);
      check(mi.network[y], lo.network[y], hi.network[y], "network " + w);
      check(mi.storage[y], lo.storage[y], hi.storage[y], "storage " + w);
      check(mi.it[y], lo.it[y], hi.it[y], "it " + w);
    }
  for (ScenarioKind k : kScenarioKinds) {
    auto lo = e.run(k, GrowthCase::low), mi = e.run(k, GrowthCase::mid), hi = e.run(k, GrowthCase::high);
    std::string name(to_string(k));
    for (int y = kFirstYear; y <= kLastYear; ++y) {
      auto cells = [&](const WaterCell& m, const WaterCell& l, const WaterCell& h, const std::string& w) {
        check(m.consumption, l.consumption, h.consumption, name + " consumption " + w);
        check(m.withdrawal, l.withdrawal, h.withdrawal, name + " withdrawal " + w);
        check(m.add, l.add, h.add, name + " add " + w);
        check(m.mdd, l.mdd, h.mdd, name + " mdd " + w);
      };
      for (Segment s : kSegments)
        cells(mi.at(y).segment[s], lo.at(y).segment[s], hi.at(y).segment[s],
              std::string(to_string(s)) + " " + std::to_string(y));
      cells(mi.at(y).total, lo.at(y).total, hi.at(y).total, "total " + std::to_string(y));
      const auto& t = e.trajectory(k);
      if (!t.per_segment)
        check(t.us_reference(GrowthCase::mid, y), t.us[0][y], t.us[1][y], name + " wue " + std::to_string(y));
    }
    check(mi.total_capacity_increase, lo.total_capacity_increase, hi.total_capacity_increase,
          name + " capacity increase");
    check(mi.total_valuation.second, lo.total_valuation.second, hi.total_valuation.second,
          name + " valuation high");
  }
  return o;
}

/// Overhead pools are conserved to 1e-9 TWh, in the engine and on random
/// server maps.
inline Outcome allocation_conservation(const Engine& e, std::size_t n = 1000, unsigned seed = 23) {
  Outcome o{"overhead conservation", 0, 0, {}};
  for (GrowthCase g : kGrowthCases)
    for (int y = kFirstYear; y <= kLastYear; ++y) {
      double sto = 0, net = 0;
      for (Segment s : kSegments) {
        sto += e.energy.at(g, s).storage[y];
        net += e.energy.at(g, s).network[y];
      }
      ++o.cases;
      if (std::abs(sto - e.energy.storage_pool[y]) > 1e-9 || std::abs(net - e.energy.network_pool[y]) > 1e-9)
        o.fail("engine " + std::string(to_string(g)) + " " + std::to_string(y));
    }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> energy(0.0, 500.0), pool(0.0, 100.0);
  std::bernoulli_distribution zero(0.2);
  for (std::size_t i = 0; i < n; ++i) {
    SegmentMap<double> server;
    for (Segment s : kSegments) server[s] = zero(rng) ? 0.0 : energy(rng);
    if (server[Segment::hyperscale] + server[Segment::colocation] + server[Segment::others] == 0)
      server[Segment::colocation] = 1.0;
    double p = pool(rng);
    auto out = allocate_overhead(server, p);
    double sum = 0;
    bool shape = true;
    for (Segment s : kSegments) {
      sum += out[s];
      if (server[s] == 0 && out[s] != 0) shape = false;
      if (out[s] < -1e-12) shape = false;
    }
    ++o.cases;
    if (std::abs(sum - p) > 1e-9 || !shape) {
      std::ostringstream os;
      os << "random case " << i << ": sum " << sum << " vs pool " << p;
      o.fail(os.str());
    }
  }
  return o;
}

/// pwue equals the brute-force maximum and is never below the period mean.
inline Outcome pwue_scan(std::size_t n = 1000, unsigned seed = 31) {
  Outcome o{"pwue vs exhaustive scan", 0, 0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> days(1, 90);
  std::uniform_real_distribution<double> it(1e4, 3e6), ratio(0.0, 4.0);
  for (std::size_t i = 0; i < n; ++i) {
    DailySeries s;
    int d = days(rng);
    for (int t = 0; t < d; ++t) {
      double e = it(rng);
      s.it_kwh.push_back(e);
      s.consumption_l.push_back(e * ratio(rng));
    }
    double got = pwue(s);
    // Oracle: the day whose ratio no other day exceeds.
    double oracle = -1;
    for (int a = 0; a < d; ++a) {
      bool dominant = true;
      for (int b = 0; b < d; ++b)
        if (s.consumption_l[b] / s.it_kwh[b] > s.consumption_l[a] / s.it_kwh[a]) dominant = false;
      if (dominant) oracle = s.consumption_l[a] / s.it_kwh[a];
    }
    double tc = 0, ti = 0;
    for (int t = 0; t < d; ++t) {
      tc += s.consumption_l[t];
      ti += s.it_kwh[t];
    }
    ++o.cases;
    if (got != oracle || got < tc / ti * (1 - 1e-12)) {
      std::ostringstream os;
      os << "case " << i << ": pwue " << got << " oracle " << oracle << " mean " << tc / ti;
      o.fail(os.str());
    }
  }
  return o;
}

/// Class boundaries and monotonicity of the capacity impact score.
inline Outcome wci_boundaries(std::size_t n = 1000, unsigned seed = 41) {
  Outcome o{"wci boundaries and monotonicity", 0, 0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> whole(0, 50);
  std::uniform_real_distribution<double> real(0.0, 20.0), bump(0.01, 5.0);
  for (std::size_t i = 0; i < n; ++i) {
    ++o.cases;
    // Integer inputs make allocated - added == available exact.
    double added = whole(rng), avail = whole(rng) + 1;
    auto edge = wci({added, added + avail, avail});
    bool ok = edge.score == -1.0 && edge.cls == WciClass::net_usage;
    double a = real(rng), b = real(rng), c = real(rng) + 0.01, d = bump(rng);
    auto base = wci({a, b, c});
    ok = ok && wci({a + d, b, c}).score > base.score;
    ok = ok && wci({a, b + d, c}).score < base.score;
    WciClass want = base.score < -1 ? WciClass::insufficient
                    : base.score < 0 ? WciClass::net_usage
                    : base.score == 0 ? WciClass::neutral
                                      : WciClass::positive;
    ok = ok && base.cls == want;
    if (!ok) {
      std::ostringstream os;
      os << "case " << i << ": (" << a << ", " << b << ", " << c << ") score " << base.score;
      o.fail(os.str());
    }
  }
  return o;
}

/// Scaling every WUE by k scales every water quantity by k.
inline Outcome linearity(const Engine& e, std::size_t n = 100, unsigned seed = 53) {
  Outcome o{"water projection linearity", 0, 0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> wue(0.05, 2.0), red(0.0, 0.15), scale(0.25, 4.0);
  std::uniform_int_distribution<int> growth(0, 2);
  for (std::size_t i = 0; i < n; ++i) {
    ++o.cases;
    SegmentMap<double> base{{wue(rng), wue(rng), 0.0}};
    double r = red(rng), k = scale(rng);
    SegmentMap<double> scaled = base;
    for (Segment s : kSegments) scaled[s] *= k;
    GrowthCase g = static_cast<GrowthCase>(growth(rng));
    auto p1 = project(e.energy, segment_trajectory("custom", ScenarioKind::custom, base, r), g, e.ratios, e.data.water);
    auto p2 = project(e.energy, segment_trajectory("custom", ScenarioKind::custom, scaled, r), g, e.ratios, e.data.water);
    bool ok = true;
    for (int y = kFirstYear; y <= kLastYear; ++y) {
      const auto& a = p1.at(y).total;
      const auto& b = p2.at(y).total;
      ok = ok && close_rel(b.consumption, k * a.consumption, 1e-12) &&
           close_rel(b.withdrawal, k * a.withdrawal, 1e-12) && close_rel(b.add, k * a.add, 1e-12) &&
           close_rel(b.mdd, k * a.mdd, 1e-12);
    }
    ok = ok && close_rel(p2.total_capacity_increase, k * p1.total_capacity_increase, 1e-12) &&
         close_rel(p2.total_valuation.first, k * p1.total_valuation.first, 1e-12) &&
         close_rel(p2.total_valuation.second, k * p1.total_valuation.second, 1e-12);
    if (!ok) {
      std::ostringstream os;
      os << "case " << i << ": k " << k << " reduction " << r;
      o.fail(os.str());
    }
  }
  return o;
}

inline std::vector<Outcome> all(const Engine& e) {
  return {unit_round_trips(), mid_mean_law(e), allocation_conservation(e),
          pwue_scan(),        wci_boundaries(), linearity(e)};
}

}  // namespace aquacast::props
