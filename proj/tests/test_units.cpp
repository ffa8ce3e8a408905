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

#include "aquacast/units.hpp"

namespace aquacast {
namespace {

TEST(Units, GallonConversionUsesExactFactor) {
  Quantity q = convert({1.0, Unit::MG}, Unit::L);
  EXPECT_DOUBLE_EQ(q.value, 3.785411784e6);
  EXPECT_EQ(q.unit, Unit::L);
}

TEST(Units, TableConventionFactorIsConfigurable) {
  UnitSystem table{3.785};
  EXPECT_DOUBLE_EQ(convert({3.785e6, Unit::L}, Unit::MG, table).value, 1.0);
}

TEST(Units, EnergyScales) {
  EXPECT_DOUBLE_EQ(convert({1.5, Unit::TWh}, Unit::MWh).value, 1.5e6);
  EXPECT_DOUBLE_EQ(convert({2000.0, Unit::kWh}, Unit::MWh).value, 2.0);
}

TEST(Units, IntensityPerMwDay) {
  // 9,762 gal per MW-day is about 1.540 L/kWh.
  double l_per_kwh = convert({9762.0, Unit::gallon_per_MW_day}, Unit::L_per_kWh).value;
  EXPECT_NEAR(l_per_kwh, 1.540, 5e-4);
}

TEST(Units, IncompatibleConversionThrows) {
  EXPECT_THROW(convert({1.0, Unit::MWh}, Unit::L), Error);
  EXPECT_THROW(convert({1.0, Unit::MGD}, Unit::MG), Error);
}

TEST(Units, ArithmeticChecksDimension) {
  Quantity a{1.0, Unit::ML};
  Quantity b{1.0, Unit::MG};
  Quantity s = a + b;
  EXPECT_EQ(s.unit, Unit::ML);
  EXPECT_NEAR(s.value, 1.0 + 3.785411784, 1e-12);
  EXPECT_THROW((a + Quantity{1.0, Unit::TWh}), Error);
  EXPECT_THROW((a - Quantity{1.0, Unit::dollar}), Error);
  EXPECT_NEAR(ratio({2.0, Unit::TWh}, {1e6, Unit::MWh}), 2.0, 1e-15);
}

TEST(Units, AnnualToDaily) {
  Quantity d = annual_to_daily({365.0, Unit::MG});
  EXPECT_EQ(d.unit, Unit::MGD);
  EXPECT_DOUBLE_EQ(d.value, 1.0);
  EXPECT_THROW(annual_to_daily({-1.0, Unit::MG}), Error);
  EXPECT_THROW(annual_to_daily({1.0, Unit::MWh}), Error);
}

TEST(Units, ParseNames) {
  EXPECT_EQ(parse_unit("L/kWh"), Unit::L_per_kWh);
  EXPECT_EQ(parse_unit("gal/MW-day"), Unit::gallon_per_MW_day);
  EXPECT_THROW(parse_unit("furlong"), Error);
  EXPECT_EQ(parse_segment("colocation"), Segment::colocation);
  EXPECT_EQ(parse_growth("mid"), GrowthCase::mid);
  EXPECT_EQ(parse_scenario("reference-ns"), ScenarioKind::reference_ns);
  EXPECT_THROW(parse_scenario("custom"), Error);
  EXPECT_THROW(parse_growth("medium"), Error);
}

TEST(Rounding, HalfAwayFromZero) {
  EXPECT_EQ(format_fixed(2.5, 0), "3");
  EXPECT_EQ(format_fixed(-2.5, 0), "-3");
  EXPECT_EQ(format_fixed(0.125, 2), "0.13");
  EXPECT_EQ(format_fixed(1405.8, 0), "1406");
  EXPECT_EQ(format_fixed(-0.0001, 2), "0.00");
}

TEST(Rounding, ValuesJustBelowAHalfRoundUp) {
  // 2950.5 computed through floating point lands a few ULPs short.
  double x = 2950.4999999999995;
  EXPECT_EQ(format_fixed(x, 0), "2951");
  EXPECT_EQ(format_fixed(140.60499999999999, 2), "140.61");
  EXPECT_EQ(format_fixed(140.6049, 2), "140.60");
}

TEST(Rounding, ThousandsSeparators) {
  EXPECT_EQ(format_fixed(57579889.4, 0, true), "57,579,889");
  EXPECT_EQ(format_fixed(999.6, 0, true), "1,000");
  EXPECT_EQ(format_fixed(-1234567.0, 0, true), "-1,234,567");
  EXPECT_EQ(format_fixed(12.0, 0, true), "12");
  EXPECT_EQ(display_round(0.54638, RoundingPolicy::three_decimal), "0.546");
  EXPECT_EQ(display_round(Quantity{1.5, Unit::MGD}, RoundingPolicy::table_integer), "2");
}

}  // namespace
}  // namespace aquacast
