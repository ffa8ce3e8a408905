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

#include <gtest/gtest.h>

#include "aquacast/capacity.hpp"

namespace aquacast {
namespace {

constexpr double kGal = 3.785411784;

TEST(Pwue, MaxDailyRatio) {
  // 30 days at 100 MW; one day consumes 4.5x the mean of a 0.19 L/kWh year.
  DailySeries s;
  for (int d = 0; d < 30; ++d) {
    s.it_kwh.push_back(2.4e6);
    s.consumption_l.push_back(2.4e6 * 0.19);
  }
  s.consumption_l[17] *= 4.5;
  EXPECT_NEAR(pwue(s), 0.855, 1e-12);
}

TEST(Pwue, ConstantSeriesEqualsAnnualWue) {
  DailySeries s{{120.0, 120.0, 120.0}, {100.0, 100.0, 100.0}};
  EXPECT_DOUBLE_EQ(pwue(s), 1.2);
}

TEST(Pwue, RejectsBadSeries) {
  EXPECT_THROW(pwue(DailySeries{}), Error);
  EXPECT_THROW(pwue(DailySeries{{1.0}, {0.0}}), Error);
  EXPECT_THROW(pwue(DailySeries{{1.0, 2.0}, {1.0}}), Error);
}

TEST(Pwue, FlatPeaking) {
  EXPECT_DOUBLE_EQ(pwue_flat(1.2, 2.5), 3.0);
  EXPECT_DOUBLE_EQ(pwue_flat(0.19, 1.0), 0.19);
  EXPECT_NEAR(pwue_flat(0.15, 6.5), 0.975, 1e-15);
  EXPECT_THROW(pwue_flat(1.0, 0.9), Error);
}

TEST(Wci, PublishedCases) {
  auto port = wci({0, 1.2, 2.0});
  EXPECT_DOUBLE_EQ(port.score, -0.6);
  EXPECT_EQ(port.cls, WciClass::net_usage);
  EXPECT_EQ(to_string(port.cls), "net-usage");
  auto newton = wci({0, 6, 4});
  EXPECT_DOUBLE_EQ(newton.score, -1.5);
  EXPECT_EQ(newton.cls, WciClass::insufficient);
  EXPECT_EQ(wci({3, 3, 5}).score, 0.0);
  EXPECT_EQ(wci({3, 3, 5}).cls, WciClass::neutral);
  EXPECT_EQ(wci({4, 1, 2}).cls, WciClass::positive);
  EXPECT_EQ(port.trace.size(), 2u);
}

TEST(Wci, Boundaries) {
  EXPECT_EQ(classify_wci(-1.0), WciClass::net_usage);
  EXPECT_EQ(classify_wci(std::nextafter(-1.0, -2.0)), WciClass::insufficient);
  EXPECT_EQ(classify_wci(std::nextafter(0.0, 1.0)), WciClass::positive);
  EXPECT_THROW(wci({1, 1, 0}), Error);
  EXPECT_THROW(wci({1, 1, -2}), Error);
  EXPECT_THROW(wci({-1, 1, 2}), Error);
}

TEST(Generators, EffectiveItLoad) {
  EXPECT_NEAR(it_from_generators(314), 125.6, 1e-12);
  EXPECT_EQ(format_fixed(it_from_generators(314), 0), "126");
  EXPECT_DOUBLE_EQ(it_from_generators(50, 1, 1), 50.0);
  EXPECT_NEAR(it_from_generators(30), 12.0, 1e-12);
  EXPECT_THROW(it_from_generators(30, 0.5), Error);
  EXPECT_THROW(it_from_generators(30, 2, 0.0), Error);
  EXPECT_THROW(it_from_generators(30, 2, 1.1), Error);
}

TEST(SiteCapacity, EvaporativeHundredMegawatt) {
  SitePlan p{100, std::nullopt, 3.0, 1.0, 0.75};
  auto r = site_peak_capacity(p);
  EXPECT_NEAR(r.capacity_mgd, 100 * 24000 * 4.0 / (kGal * 1e6), 1e-12);
  EXPECT_EQ(format_fixed(r.capacity_mgd, 2), "2.54");
  EXPECT_EQ(format_fixed(r.capacity_mgd, 1), "2.5");
  EXPECT_EQ(r.trace.back().label, "capacity");
}

TEST(SiteCapacity, IowaFromAnnualWue) {
  SitePlan p{100, 0.19, std::nullopt, 4.5, 0.75};
  auto r = site_peak_capacity(p);
  EXPECT_NEAR(r.pwue, 0.855, 1e-12);
  EXPECT_NEAR(r.capacity_mgd, 0.723, 5e-4);
  EXPECT_EQ(format_fixed(r.capacity_mgd, 2), "0.72");
}

TEST(SiteCapacity, Edges) {
  EXPECT_EQ(site_peak_capacity({100, std::nullopt, 0.0, 1.0, 0.75}).capacity_mgd, 0.0);
  EXPECT_THROW(site_peak_capacity({100, std::nullopt, std::nullopt, 1.0, 0.75}), Error);
  EXPECT_THROW(site_peak_capacity({100, 0.2, std::nullopt, 1.0, 0.0}), Error);
  EXPECT_THROW(site_peak_capacity({-1, 0.2, std::nullopt, 1.0, 0.75}), Error);
  EXPECT_THROW(site_peak_capacity({100, 0.2, std::nullopt, 0.5, 0.75}), Error);
}

TEST(AllocationIntensity, RoundedAndUnroundedItLoad) {
  auto rounded = allocation_intensity(1.23, 126);
  EXPECT_EQ(format_fixed(rounded.gallons_per_mw_day, 0, true), "9,762");
  EXPECT_EQ(format_fixed(rounded.l_per_kwh, 3), "1.540");
  EXPECT_NEAR(rounded.l_per_kwh, 1.23e6 / 126 * kGal / 24000, 1e-12);
  auto exact = allocation_intensity(1.23, it_from_generators(314));
  EXPECT_EQ(format_fixed(exact.gallons_per_mw_day, 0, true), "9,793");
  EXPECT_EQ(allocation_intensity(0, 126).gallons_per_mw_day, 0.0);
  EXPECT_THROW(allocation_intensity(1.0, 0), Error);
  // Consumption at a 0.75 ratio of that withdrawal intensity.
  EXPECT_EQ(format_fixed(rounded.l_per_kwh * 0.75, 3), "1.155");
}

TEST(Fleet, LoudounHypotheticals) {
  EXPECT_EQ(format_fixed(fleet_hypothetical(4013, 2716), 1), "10.9");
  EXPECT_NEAR(fleet_hypothetical(4013, 5500), 22.07, 5e-3);
  EXPECT_EQ(format_fixed(fleet_hypothetical(4013, 5500), 1), "22.1");
  EXPECT_EQ(format_fixed(fleet_from_wue(4013, 1.13), 1), "28.8");
  EXPECT_EQ(format_fixed(fleet_from_wue(4013, 1.55), 1), "39.4");
  EXPECT_EQ(format_fixed(fleet_from_wue(4013, 1.13, 0.75), 1), "38.3");
  EXPECT_EQ(format_fixed(fleet_from_wue(4013, 1.55, 0.75), 1), "52.6");
  EXPECT_NEAR(fleet_from_wue(4013, 1.55, 0.75), 4013 * 24000 * 1.55 / 0.75 / (kGal * 1e6), 1e-12);
  EXPECT_THROW(fleet_hypothetical(-1, 10), Error);
  EXPECT_THROW(fleet_from_wue(10, 1, 0), Error);
}

TEST(Peaking, Estimators) {
  EXPECT_NEAR(peaking_from_monthly(4.30), 6.45, 1e-12);
  EXPECT_NEAR(peaking_from_monthly(1.46), 2.19, 1e-12);
  EXPECT_DOUBLE_EQ(peaking_from_monthly(1.0, 1.0), 1.0);
  EXPECT_THROW(peaking_from_monthly(0.9), Error);
  EXPECT_THROW(peaking_from_monthly(2.0, 0.5), Error);

  // 1 GW at 0.20 L/kWh averages 1.268 MGD.
  double average = fleet_from_wue(1000, 0.20);
  EXPECT_EQ(format_fixed(average, 3), "1.268");
  EXPECT_EQ(format_fixed(peaking_from_allocation(8, average), 2), "6.31");
  EXPECT_GT(peaking_from_allocation(0.7, 0.023), 30.0);
  EXPECT_DOUBLE_EQ(peaking_from_allocation(2, 2), 1.0);
  EXPECT_THROW(peaking_from_allocation(1, 0), Error);
}

TEST(Econ, DefaultComparison) {
  auto r = peak_power_econ({});
  EXPECT_NEAR(r.peak_mw_avoided, 30.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.water_cost_low, 12.5e6);
  EXPECT_DOUBLE_EQ(r.water_cost_high, 62.5e6);
  ASSERT_EQ(r.regions.size(), 2u);
  EXPECT_EQ(r.regions[0].region, "northeast");
  EXPECT_EQ(format_fixed(r.regions[0].generator_cost / 1e6, 1), "70.9");
  EXPECT_EQ(r.regions[0].verdict, "above-water-band");
  EXPECT_EQ(r.regions[1].region, "south");
  EXPECT_NEAR(r.regions[1].generator_cost, 37.2e6, 1e-3);
  EXPECT_EQ(r.regions[1].verdict, "within-water-band");
}

TEST(Econ, Edges) {
  EconComparison e;
  e.pue_delta = 0;
  auto r = peak_power_econ(e);
  EXPECT_EQ(r.peak_mw_avoided, 0.0);
  for (const auto& reg : r.regions) {
    EXPECT_EQ(reg.generator_cost, 0.0);
    EXPECT_EQ(reg.verdict, "below-water-band");
  }
  e = {};
  e.capacity_utilization = 0;
  EXPECT_THROW(peak_power_econ(e), Error);
  e = {};
  e.pue_delta = -0.1;
  EXPECT_THROW(peak_power_econ(e), Error);
  e = {};
  e.generator_cost_per_kw["west"] = 0;
  EXPECT_THROW(peak_power_econ(e), Error);
}

}  // namespace
}  // namespace aquacast
