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

// Library walk-through: national projection under each named scenario,
// then a single-site sizing with its formula trace.

#include <cstdio>

#include "aquacast/aquacast.hpp"

int main() {
  using namespace aquacast;
  Engine e = load_engine();

  std::printf("%-16s %10s %10s %10s\n", "scenario", "low", "mid", "high");
  for (ScenarioKind k : kScenarioKinds) {
    std::printf("%-16s", std::string(to_string(k)).c_str());
    for (GrowthCase g : kGrowthCases)
      std::printf(" %10s", format_fixed(e.run(k, g).total_capacity_increase, 0, true).c_str());
    std::printf("  MGD added 2024-2030\n");
  }

  SitePlan site;
  site.it_load_mw = 100;
  site.annual_wue = 0.19;
  site.beta = 4.5;
  site.consumptive_ratio = 0.75;
  SiteCapacityResult r = site_peak_capacity(site);
  std::printf("\n100 MW site, WUE 0.19 L/kWh, beta 4.5\n");
  for (const TraceStep& s : r.trace)
    std::printf("  %-26s %-28s %14.4f %s\n", s.label.c_str(), s.formula.c_str(), s.value, s.unit.c_str());
  return 0;
}
