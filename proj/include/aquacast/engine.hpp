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

#include <map>
#include <string>
#include <vector>

#include "aquacast/dataset.hpp"
#include "aquacast/energy.hpp"
#include "aquacast/operators.hpp"
#include "aquacast/water.hpp"
#include "aquacast/wue.hpp"

namespace aquacast {

/// Immutable engine state derived once from the datasets: energy series,
/// completed operator records, segment aggregates, scenario trajectories.
struct Engine {
  Datasets data;
  EnergyProjection energy;
  std::vector<OperatorRecord> operators;
  SegmentMap<SegmentAggregate> aggregates;  // others unused
  SegmentMap<double> base_wue;
  ConsumptiveRatios ratios;
  std::map<ScenarioKind, WueTrajectory> trajectories;

  const WueTrajectory& trajectory(ScenarioKind k) const { return trajectories.at(k); }

  ProjectionReport run(ScenarioKind k, GrowthCase g, const WaterParameters& p,
                       int y0 = kFirstYear, int y1 = kLastYear) const {
    return project(energy, trajectory(k), g, ratios, p, y0, y1);
  }
  ProjectionReport run(ScenarioKind k, GrowthCase g) const { return run(k, g, data.water); }

  /// US-wide WUE for a trajectory under a growth case.
  double us_wue(const WueTrajectory& t, GrowthCase g, int year) const {
    if (!t.per_segment) return t.us_reference(g, year);
    SegmentMap<double> w;
    for (Segment s : kSegments) w[s] = t.segment[s][year];
    return us_average_wue(energy.it_by_segment(g, year), w);
  }
};

inline Engine build_engine(Datasets d) {
  Engine e;
  e.energy = build_energy(d.energy);
  e.operators = complete_all(d.operators, d.operator_units);
  for (const auto& r : e.operators)
    if (r.flagged) {
      std::string msg = "operator record " + r.id + " failed normalization";
      for (const auto& diag : r.diagnostics) msg += "; " + diag;
      throw DatasetError(msg);
    }
  for (Segment s : {Segment::hyperscale, Segment::colocation}) {
    e.aggregates[s] = aggregate_segment(e.operators, s, e.energy.at(GrowthCase::mid, s).it[kFirstYear]);
    e.base_wue[s] = e.aggregates[s].wue;
    e.ratios.ratio[s] = e.aggregates[s].consumptive_ratio;
  }
  e.base_wue[Segment::others] = d.wue.others_wue;
  e.ratios.ratio[Segment::others] = d.water.default_consumptive_ratio;
  for (ScenarioKind k : kScenarioKinds) e.trajectories[k] = build_trajectory(k, d.wue, e.base_wue);
  e.data = std::move(d);
  return e;
}

inline Engine load_engine(const std::string& dir_override = "") {
  return build_engine(load_datasets(resolve_data_dir(dir_override)));
}

}  // namespace aquacast
