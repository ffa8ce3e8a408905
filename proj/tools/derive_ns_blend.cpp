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

// Re-derives the two blend WUEs of the NS reference scenario.
//
// Prints the endpoint solve through the reported 2024 and 2030 values next
// to a least-squares fit over the golden consumption column, and the
// worst volume residual each pair leaves.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "aquacast/aquacast.hpp"

using namespace aquacast;

namespace {

struct Obs {
  BlendObservation o;
  std::string label;
};

std::vector<Obs> golden_observations(const Engine& e) {
  const GoldenTable& g = e.data.golden.at("annual_water_consumption");
  std::size_t col = 0;
  while (col < g.columns.size() && g.columns[col] != "Reference NS Total") ++col;
  if (col == g.columns.size()) throw Error("golden table lacks the NS column");
  const double mg_per_twh_lkwh = 1e9 / (e.data.water.units.liters_per_gallon * 1e6);
  std::vector<Obs> out;
  for (const auto& row : g.rows) {
    int year = std::stoi(row.label.substr(0, 4));
    std::string growth = row.label.substr(5);
    for (char& c : growth) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    GrowthCase gc = parse_growth(growth);
    double it = e.energy.total_it(gc, year);
    double target = parse_display(row.cells[col]).values.at(0);
    out.push_back({{year, it * mg_per_twh_lkwh, target}, row.label});
  }
  return out;
}

double worst_residual(const AlcBlend& b, const std::vector<Obs>& obs, std::string* where) {
  double worst = 0;
  for (const auto& ob : obs) {
    double r = std::abs(ob.o.weight * ns_blend(b, ob.o.year) - ob.o.target);
    if (r > worst) {
      worst = r;
      *where = ob.label;
    }
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    Engine e = load_engine(argc > 1 ? argv[1] : "");
    const AlcBlend& ds = e.data.wue.ns;
    auto obs = golden_observations(e);

    auto [eb, ea] = solve_blend_endpoints(ds.alpha0, ds.adoption_cagr, 2024, 1.582, 2030, 1.569);
    std::vector<BlendObservation> plain;
    for (const auto& o : obs) plain.push_back(o.o);
    auto [fb, fa] = fit_alc_blend(ds.alpha0, ds.adoption_cagr, plain);

    std::printf("%-22s %12s %12s %14s\n", "method", "wue_base", "wue_alc", "worst MG");
    auto show = [&](const char* name, double base, double alc) {
      std::string where;
      double w = worst_residual({ds.alpha0, ds.adoption_cagr, base, alc}, obs, &where);
      std::printf("%-22s %12.7f %12.7f %14.1f  (%s)\n", name, base, alc, w, where.c_str());
    };
    show("endpoint solve", eb, ea);
    show("least squares", fb, fa);
    show("dataset", ds.wue_base, ds.wue_alc);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
  return 0;
}
