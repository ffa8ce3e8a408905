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

#include "aquacast/engine.hpp"
#include "aquacast/validate.hpp"

namespace aquacast {
namespace {

const Engine& engine() {
  static const Engine e = load_engine();
  return e;
}

OperatorRecord one(const std::string& body) {
  json doc = json::parse(R"({"schema": "aquacast.operators/1", "liters_per_gallon": 3.785, "operators": [)" +
                         body + "]}");
  return parse_operators(doc).at(0);
}

TEST(OfficeSplit, SeparatesDataCenterWater) {
  auto s = split_office_water(5789, 3136);
  EXPECT_EQ(format_fixed(s.w_dc, 0), "3934");
  EXPECT_EQ(format_fixed(s.c_dc, 0), "2951");
  // Oracle: both balance equations hold.
  double w_off = 5789 - s.w_dc;
  EXPECT_NEAR(s.c_dc + 0.10 * w_off, 3136, 1e-9);
  EXPECT_NEAR(s.c_dc / s.w_dc, 0.75, 1e-15);
  EXPECT_THROW(split_office_water(100, 90), Error);
  EXPECT_THROW(split_office_water(100, 5), Error);
  EXPECT_THROW(split_office_water(100, 50, 0.5, 0.5), Error);
}

TEST(Allocation, ShareAndCoverage) {
  EXPECT_DOUBLE_EQ(apply_allocation_factor(200, 0.25), 50);
  EXPECT_THROW(apply_allocation_factor(200, 1.5), Error);
  EXPECT_DOUBLE_EQ(coverage_share(50, 200), 0.25);
  EXPECT_THROW(coverage_share(50, 0), Error);
}

TEST(Aggregation, HyperscaleSummaryRow) {
  const auto& a = engine().aggregates[Segment::hyperscale];
  EXPECT_EQ(a.members, 5u);
  EXPECT_EQ(format_fixed(a.it_energy, 0, true), "57,579,889");
  EXPECT_EQ(format_fixed(a.wue, 2), "0.55");
  EXPECT_EQ(format_fixed(a.consumptive_ratio, 2), "0.77");
  EXPECT_EQ(format_fixed(a.pue, 2), "1.11");
  EXPECT_NEAR(a.coverage_share, 0.86, 0.01);
}

TEST(Aggregation, ColocationSummaryRow) {
  const auto& a = engine().aggregates[Segment::colocation];
  EXPECT_EQ(a.members, 7u);
  EXPECT_EQ(format_fixed(a.it_energy, 0, true), "14,839,188");
  EXPECT_EQ(format_fixed(a.wue, 2), "0.65");
  EXPECT_EQ(format_fixed(a.consumptive_ratio, 2), "0.79");
  EXPECT_NEAR(a.coverage_share, 0.22, 0.01);
}

TEST(Aggregation, WueIsConsumptionWeighted) {
  // Oracle: sum of consumption over sum of IT energy, recomputed here.
  double c = 0, it = 0;
  for (const auto& r : engine().operators)
    if (r.segment == Segment::colocation) {
      c += r.get(Field::consumption);
      it += r.get(Field::it_energy);
    }
  EXPECT_NEAR(engine().aggregates[Segment::colocation].wue, c * 1000 / it, 1e-12);
}

TEST(Records, CompleteAndUnflagged) {
  ASSERT_EQ(engine().operators.size(), 12u);
  for (const auto& r : engine().operators) {
    EXPECT_FALSE(r.flagged) << r.id;
    for (Field f : {Field::it_energy, Field::consumption, Field::withdrawal, Field::wue})
      EXPECT_TRUE(r.has(f)) << r.id << " " << to_string(f);
  }
}

TEST(Records, AsteriskCellsAreEstimatedOrAssigned) {
  EXPECT_TRUE(audit_operator_flags(engine()).empty());
  const auto* h5 = &engine().operators.at(4);
  ASSERT_EQ(h5->id, "Hyperscale-5");
  EXPECT_TRUE(is_flagged(h5->fields.at(Field::it_energy).provenance));
  EXPECT_EQ(engine().operators.at(0).fields.at(Field::pue).provenance, Provenance::reported);
}

TEST(Records, OfficeSplitRecordMatchesTable) {
  const OperatorRecord* h2 = nullptr;
  for (const auto& r : engine().operators)
    if (r.id == "Hyperscale-2") h2 = &r;
  ASSERT_NE(h2, nullptr);
  EXPECT_EQ(format_fixed(h2->get(Field::withdrawal), 0), "3934");
  EXPECT_EQ(format_fixed(h2->get(Field::consumption), 0), "2951");
  EXPECT_EQ(h2->fields.at(Field::consumption).rule_id, "H2.split");
  EXPECT_FALSE(h2->notes.empty());
}

TEST(Rules, ClosureFillsMissingFields) {
  auto r = complete_record(one(R"({"id": "T", "segment": "colocation",
      "reported": {"total_energy": 1300, "pue": 1.3, "consumption": 0.75, "withdrawal": 1.0},
      "rules": [{"id": "c", "op": "closure"}]})"));
  EXPECT_FALSE(r.flagged);
  EXPECT_NEAR(r.get(Field::it_energy), 1000, 1e-9);
  EXPECT_NEAR(r.get(Field::wue), 0.75, 1e-12);
  EXPECT_NEAR(r.get(Field::consumptive_ratio), 0.75, 1e-12);
  EXPECT_EQ(r.fields.at(Field::wue).provenance, Provenance::derived);
}

TEST(Rules, OverwritingAReportedFieldFlagsTheRecord) {
  auto r = complete_record(one(R"({"id": "T", "segment": "hyperscale",
      "reported": {"pue": 1.2},
      "rules": [{"id": "x", "op": "assign", "field": "pue", "value": 1.5}]})"));
  EXPECT_TRUE(r.flagged);
  EXPECT_NE(r.diagnostics.at(0).find("overwrite"), std::string::npos);
  EXPECT_EQ(r.get(Field::pue), 1.2);
}

TEST(Rules, MalformedRulesFlagInsteadOfThrowing) {
  auto unknown = complete_record(one(R"({"id": "T", "segment": "hyperscale",
      "rules": [{"id": "x", "op": "teleport"}]})"));
  EXPECT_TRUE(unknown.flagged);
  auto missing = complete_record(one(R"({"id": "T", "segment": "hyperscale",
      "rules": [{"id": "x", "op": "product", "out": "it_energy", "a": "nope", "b": 2}]})"));
  EXPECT_TRUE(missing.flagged);
  auto zero = complete_record(one(R"({"id": "T", "segment": "hyperscale",
      "rules": [{"id": "x", "op": "quotient", "out": "pue", "num": 1, "den": 0}]})"));
  EXPECT_TRUE(zero.flagged);
  auto incomplete = complete_record(one(R"({"id": "T", "segment": "hyperscale",
      "reported": {"pue": 1.2}, "rules": [{"id": "c", "op": "closure"}]})"));
  EXPECT_TRUE(incomplete.flagged);
}

TEST(Rules, InconsistentReportedValuesViolateClosure) {
  auto r = complete_record(one(R"({"id": "T", "segment": "hyperscale",
      "reported": {"it_energy": 1000, "total_energy": 1300, "pue": 1.1,
                   "consumption": 1, "withdrawal": 2},
      "rules": [{"id": "c", "op": "closure"}]})"));
  EXPECT_TRUE(r.flagged);
  EXPECT_FALSE(closure_violations(r).empty());
}

TEST(Rules, PeerMeanNeedsCompletedPeers) {
  std::vector<OperatorRecord> recs = {
      one(R"({"id": "B", "segment": "colocation",
        "reported": {"it_energy": 100, "total_energy": 130, "consumption": 0.1, "withdrawal": 0.2},
        "rules": [{"id": "b.pm", "op": "peer_mean", "field": "pue", "peers": ["A"]},
                  {"id": "b.c", "op": "closure"}]})"),
      one(R"({"id": "A", "segment": "colocation",
        "reported": {"it_energy": 100, "pue": 1.3, "consumption": 0.1, "withdrawal": 0.2},
        "rules": [{"id": "a.c", "op": "closure"}]})")};
  auto done = complete_all(recs);
  EXPECT_EQ(done[0].id, "B");
  EXPECT_NEAR(done[0].get(Field::pue), 1.3, 1e-12);
  EXPECT_EQ(done[0].fields.at(Field::pue).provenance, Provenance::estimated);

  std::vector<OperatorRecord> cycle = {
      one(R"({"id": "X", "segment": "colocation", "rules": [{"id": "x", "op": "peer_mean", "field": "pue", "peers": ["Y"]}]})"),
      one(R"({"id": "Y", "segment": "colocation", "rules": [{"id": "y", "op": "peer_mean", "field": "pue", "peers": ["X"]}]})")};
  EXPECT_THROW(complete_all(cycle), Error);
}

}  // namespace
}  // namespace aquacast
