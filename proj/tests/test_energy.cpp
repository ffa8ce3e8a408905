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

#include <cmath>

#include "aquacast/dataset.hpp"
#include "aquacast/energy.hpp"

namespace aquacast {
namespace {

const EnergyProjection& projection() {
  static const EnergyProjection p = build_energy(load_datasets(resolve_data_dir()).energy);
  return p;
}

TEST(Cagr, MatchesClosedForm) {
  AnchorPair a{2024, 2028, 48.66, 107.33};
  double oracle = std::exp(std::log(107.33 / 48.66) / 4.0) - 1.0;
  EXPECT_NEAR(derive_cagr(a), oracle, 1e-14);
  EXPECT_THROW(derive_cagr({2024, 2028, 0.0, 1.0}), Error);
  EXPECT_THROW(derive_cagr({2028, 2024, 1.0, 2.0}), Error);
}

TEST(Cagr, ShrinkingSeriesHasNegativeRate) {
  EXPECT_LT(derive_cagr({2024, 2028, 14.0, 10.67}), 0.0);
}

TEST(GeometricSeries, AnchorsExactAndExtrapolation) {
  AnchorPair a{2024, 2028, 50.67, 118.00};
  YearSeries s = geometric_series(a);
  EXPECT_EQ(s[2024], 50.67);
  EXPECT_EQ(s[2028], 118.00);
  double r = std::pow(118.00 / 50.67, 0.25);
  EXPECT_NEAR(s[2030], 118.00 * r * r, 1e-9);
  EXPECT_NEAR(s[2026], 50.67 * r * r, 1e-9);
  EXPECT_THROW(project_geometric(1.0, 0.1, 2028, 2024), Error);
}

TEST(Overhead, ProportionalWithRemainderOnLastNonzero) {
  SegmentMap<double> server{{3.0, 1.0, 0.0}};
  auto out = allocate_overhead(server, 1.0);
  EXPECT_DOUBLE_EQ(out[Segment::hyperscale], 0.75);
  EXPECT_DOUBLE_EQ(out[Segment::colocation], 0.25);
  EXPECT_EQ(out[Segment::others], 0.0);
  EXPECT_THROW(allocate_overhead(SegmentMap<double>{{0, 0, 0}}, 1.0), Error);
  EXPECT_THROW(allocate_overhead(SegmentMap<double>{{-1, 2, 0}}, 1.0), Error);
}

TEST(Overhead, PoolOfZeroAllocatesNothing) {
  auto out = allocate_overhead(SegmentMap<double>{{1, 2, 3}}, 0.0);
  for (Segment s : kSegments) EXPECT_EQ(out[s], 0.0);
}

TEST(LinearExtension, PueDecline) {
  YearSeries p = extend_pue({{2024, 1.33}, {2025, 1.23}, {2026, 1.19}, {2027, 1.17}, {2028, 1.15}}, -0.02);
  EXPECT_NEAR(p[2029], 1.13, 1e-12);
  EXPECT_NEAR(p[2030], 1.11, 1e-12);
  EXPECT_THROW(extend_pue({{2024, 1.02}}, -0.02), Error);
  EXPECT_THROW(extend_pue({{2024, 1.3}}, 0.01), Error);
  EXPECT_THROW(extend_linear({{2025, 1.0}}, 0.0), Error);
}

TEST(TopDown, ItIsTotalOverPue) {
  EXPECT_NEAR(top_down_it(185.0, 1.33), 139.10, 5e-3);
  EXPECT_THROW(top_down_it(100.0, 0.9), Error);
  EXPECT_NEAR(crosscheck_deviation(101.0, 100.0), 0.01, 1e-15);
}

TEST(Projection, PublishedItCells) {
  const auto& p = projection();
  EXPECT_EQ(format_fixed(p.total_it(GrowthCase::low, 2024), 2), "139.51");
  EXPECT_EQ(format_fixed(p.total_it(GrowthCase::mid, 2030), 2), "571.05");
  EXPECT_EQ(format_fixed(p.at(GrowthCase::high, Segment::hyperscale).it[2030], 2), "344.49");
  EXPECT_EQ(format_fixed(p.at(GrowthCase::low, Segment::colocation).it[2028], 2), "140.61");
  EXPECT_EQ(format_fixed(p.at(GrowthCase::high, Segment::others).it[2030], 2), "9.24");
}

TEST(Projection, ItIsServerPlusAllocatedPools) {
  const auto& p = projection();
  for (GrowthCase g : kGrowthCases)
    for (int y = kFirstYear; y <= kLastYear; ++y) {
      double storage = 0, network = 0;
      for (Segment s : kSegments) {
        const auto& e = p.at(g, s);
        EXPECT_NEAR(e.it[y], e.server[y] + e.storage[y] + e.network[y], 1e-12);
        storage += e.storage[y];
        network += e.network[y];
      }
      EXPECT_NEAR(storage, p.storage_pool[y], 1e-9);
      EXPECT_NEAR(network, p.network_pool[y], 1e-9);
    }
}

TEST(Projection, PoolsFollowReportedValuesThenAnchorRate) {
  const auto& p = projection();
  EXPECT_EQ(p.storage_pool[2026], 18.44);
  EXPECT_EQ(p.network_pool[2028], 23.19);
  double r = std::pow(23.19 / 9.08, 0.25);
  EXPECT_NEAR(p.network_pool[2030], 23.19 * r * r, 1e-9);
  EXPECT_EQ(format_fixed(p.network_pool[2030], 2), "37.06");
  EXPECT_EQ(format_fixed(p.storage_pool[2029], 2), "23.46");
}

TEST(Projection, TopDownSeries) {
  const auto& p = projection();
  EXPECT_EQ(format_fixed(p.top_down[0].total[2030], 2), "414.99");
  EXPECT_EQ(format_fixed(p.top_down[1].total[2029], 2), "734.06");
  EXPECT_EQ(format_fixed(p.top_down[1].it[2030], 2), "711.65");
  EXPECT_NEAR(p.top_down[0].pue[2030], 1.11, 1e-12);
}

// Bottom-up vs top-down: published deviations stay within -1.8..+0.3 %
// (low) and -6.8..+0.2 % (high) through 2028, and within 10 % after.
TEST(Projection, CrossCheckBands) {
  const auto& p = projection();
  const double slack = 5e-4;
  for (int y = kFirstYear; y <= kLastYear; ++y) {
    double lo = crosscheck_deviation(p.total_it(GrowthCase::low, y), p.top_down[0].it[y]);
    double hi = crosscheck_deviation(p.total_it(GrowthCase::high, y), p.top_down[1].it[y]);
    if (y <= 2028) {
      EXPECT_GE(lo, -0.018 - slack) << y;
      EXPECT_LE(lo, 0.003 + slack) << y;
      EXPECT_GE(hi, -0.068 - slack) << y;
      EXPECT_LE(hi, 0.002 + slack) << y;
    } else {
      EXPECT_LE(std::abs(lo), 0.10) << y;
      EXPECT_LE(std::abs(hi), 0.10) << y;
    }
  }
}

TEST(Projection, MidIsMeanOfLowAndHigh) {
  const auto& p = projection();
  for (Segment s : kSegments)
    for (int y = kFirstYear; y <= kLastYear; ++y) {
      const auto& lo = p.at(GrowthCase::low, s);
      const auto& hi = p.at(GrowthCase::high, s);
      const auto& mid = p.at(GrowthCase::mid, s);
      EXPECT_DOUBLE_EQ(mid.it[y], (lo.it[y] + hi.it[y]) / 2);
      EXPECT_DOUBLE_EQ(mid.server[y], (lo.server[y] + hi.server[y]) / 2);
    }
}

}  // namespace
}  // namespace aquacast
