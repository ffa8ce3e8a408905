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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aquacast/engine.hpp"

namespace aquacast {

/// One computed table cell: unrounded value(s) plus display format.
struct TableCell {
  std::vector<double> values;  // one value, or two for a (low, high) pair
  int decimals = 0;
  bool thousands = false;
  bool percent = false;  // value is a fraction shown as a percentage
  bool dash = false;     // no value
  std::string marker;    // e.g. "*" for estimated or assigned

  static TableCell number(double v, int decimals, bool thousands = false) {
    TableCell c;
    c.values = {v};
    c.decimals = decimals;
    c.thousands = thousands;
    return c;
  }
  static TableCell pair(double a, double b, int decimals) {
    TableCell c;
    c.values = {a, b};
    c.decimals = decimals;
    return c;
  }
  static TableCell empty() {
    TableCell c;
    c.dash = true;
    return c;
  }

  /// Display string without markers.
  std::string text() const {
    if (dash) return "--";
    auto one = [&](double v) {
      return format_fixed(percent ? v * 100 : v, decimals, thousands) + (percent ? "%" : "");
    };
    if (values.size() == 2) return "(" + one(values[0]) + ", " + one(values[1]) + ")";
    return one(values.at(0));
  }
  std::string display() const { return text() + marker; }
};

struct TableRow {
  std::string label;
  std::vector<TableCell> cells;
};

struct Table {
  std::string id;
  std::string title;
  std::vector<std::string> columns;
  std::vector<TableRow> rows;
};

namespace detail {

inline const char* growth_title(GrowthCase g) {
  return g == GrowthCase::low ? "Low" : g == GrowthCase::mid ? "Mid" : "High";
}

inline std::vector<std::string> segment_growth_columns() {
  std::vector<std::string> c;
  for (const char* s : {"Hyperscale", "Colocation", "Others", "Total"})
    for (GrowthCase g : kGrowthCases) c.push_back(std::string(s) + " " + growth_title(g));
  return c;
}

inline Table energy_table(const Engine& e, const std::string& id, const std::string& title,
                          bool server) {
  Table t{id, title, segment_growth_columns(), {}};
  for (int y = kFirstYear; y <= kLastYear; ++y) {
    TableRow row{std::to_string(y), {}};
    std::array<double, 3> totals{};
    for (Segment s : kSegments)
      for (GrowthCase g : kGrowthCases) {
        const auto& ser = e.energy.at(g, s);
        double v = server ? ser.server[y] : ser.it[y];
        totals[static_cast<std::size_t>(g)] += v;
        row.cells.push_back(TableCell::number(v, 2));
      }
    for (double v : totals) row.cells.push_back(TableCell::number(v, 2));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table pool_table(const Engine& e) {
  Table t{"pool_energy",
          "Storage and network energy (TWh) and their ratio to server energy",
          {"Storage", "Network", "Storage/Server Low", "Storage/Server High", "Network/Server Low",
           "Network/Server High"},
          {}};
  for (int y = kFirstYear; y <= kLastYear; ++y) {
    double lo = e.energy.total_server(GrowthCase::low, y);
    double hi = e.energy.total_server(GrowthCase::high, y);
    double sto = e.energy.storage_pool[y], net = e.energy.network_pool[y];
    t.rows.push_back({std::to_string(y),
                      {TableCell::number(sto, 2), TableCell::number(net, 2),
                       TableCell::number(sto / lo, 2), TableCell::number(sto / hi, 2),
                       TableCell::number(net / lo, 2), TableCell::number(net / hi, 2)}});
  }
  return t;
}

inline Table top_down_table(const Engine& e) {
  Table t{"top_down_energy",
          "Reference national WUE, PUE, total energy (TWh) and IT energy (TWh)",
          {"WUE Low", "WUE High", "PUE Low", "PUE High", "Total Energy Low", "Total Energy High",
           "IT Energy Low", "IT Energy High"},
          {}};
  const auto& lbnl = e.trajectory(ScenarioKind::reference_lbnl);
  const auto& lo = e.energy.top_down[0];
  const auto& hi = e.energy.top_down[1];
  for (int y = kFirstYear; y <= kLastYear; ++y) {
    t.rows.push_back({std::to_string(y),
                      {TableCell::number(lbnl.us[0][y], 2), TableCell::number(lbnl.us[1][y], 2),
                       TableCell::number(lo.pue[y], 2), TableCell::number(hi.pue[y], 2),
                       TableCell::number(lo.total[y], 2), TableCell::number(hi.total[y], 2),
                       TableCell::number(lo.it[y], 2), TableCell::number(hi.it[y], 2)}});
  }
  return t;
}

inline Table wue_table(const Engine& e) {
  Table t{"wue_scenarios", "On-site WUE by scenario (L/kWh)",
          {"Reference LBNL Low", "Reference LBNL High", "Reference NS"}, {}};
  const ScenarioKind scen[] = {ScenarioKind::baseline, ScenarioKind::moderate,
                               ScenarioKind::optimistic};
  const char* names[] = {"Baseline", "Moderate", "Optimistic"};
  for (const char* n : names)
    for (const char* c : {" US Low", " US High", " Hyperscale", " Colocation"})
      t.columns.push_back(std::string(n) + c);
  const auto& lbnl = e.trajectory(ScenarioKind::reference_lbnl);
  const auto& ns = e.trajectory(ScenarioKind::reference_ns);
  for (int y = kFirstYear; y <= kLastYear; ++y) {
    TableRow row{std::to_string(y),
                 {TableCell::number(lbnl.us[0][y], 3), TableCell::number(lbnl.us[1][y], 3),
                  TableCell::number(ns.us[0][y], 3)}};
    for (ScenarioKind k : scen) {
      const auto& tr = e.trajectory(k);
      row.cells.push_back(TableCell::number(e.us_wue(tr, GrowthCase::low, y), 3));
      row.cells.push_back(TableCell::number(e.us_wue(tr, GrowthCase::high, y), 3));
      row.cells.push_back(TableCell::number(tr.segment[Segment::hyperscale][y], 3));
      row.cells.push_back(TableCell::number(tr.segment[Segment::colocation][y], 3));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::vector<std::string> volume_columns() {
  std::vector<std::string> c = {"Reference LBNL Total", "Reference NS Total"};
  for (const char* s : {"Baseline", "Moderate", "Optimistic"})
    for (const char* k : {" Total", " Hyperscale", " Colocation"}) c.push_back(std::string(s) + k);
  return c;
}

inline const ScenarioKind kTableScenarios[] = {ScenarioKind::reference_lbnl,
                                               ScenarioKind::reference_ns, ScenarioKind::baseline,
                                               ScenarioKind::moderate, ScenarioKind::optimistic};

using ReportGrid = std::map<std::pair<ScenarioKind, GrowthCase>, ProjectionReport>;

inline ReportGrid default_grid(const Engine& e) {
  ReportGrid g;
  for (ScenarioKind k : kScenarioKinds)
    for (GrowthCase c : kGrowthCases) g[{k, c}] = e.run(k, c);
  return g;
}

template <typename F>
inline void volume_cells(const ReportGrid& grid, GrowthCase g, TableRow& row, F&& pick) {
  for (ScenarioKind k : kTableScenarios) {
    const ProjectionReport& r = grid.at({k, g});
    row.cells.push_back(pick(r, /*segment*/ -1));
    if (!is_reference(k)) {
      row.cells.push_back(pick(r, 0));
      row.cells.push_back(pick(r, 1));
    }
  }
}

inline Table volume_table(const ReportGrid& grid, bool withdrawal) {
  Table t{withdrawal ? "annual_water_withdrawal" : "annual_water_consumption",
          withdrawal ? "Annual water withdrawal (million gallons)"
                     : "Annual water consumption (million gallons)",
          volume_columns(),
          {}};
  for (int y = kFirstYear; y <= kLastYear; ++y)
    for (GrowthCase g : kGrowthCases) {
      TableRow row{std::to_string(y) + " " + growth_title(g), {}};
      volume_cells(grid, g, row, [&](const ProjectionReport& r, int seg) {
        const WaterCell& c = seg < 0 ? r.at(y).total : r.at(y).segment[static_cast<Segment>(seg)];
        return TableCell::number(withdrawal ? c.withdrawal : c.consumption, 0, true);
      });
      t.rows.push_back(std::move(row));
    }
  return t;
}

inline Table capacity_table(const ReportGrid& grid) {
  Table t{"water_capacity_valuation",
          "Average daily demand, capacity (MGD) and capacity valuation ($ billion)",
          volume_columns(),
          {}};
  for (int y : {kFirstYear, kLastYear})
    for (const char* kind : {"ADD", "Capacity"})
      for (GrowthCase g : kGrowthCases) {
        TableRow row{std::to_string(y) + " " + kind + " " + growth_title(g), {}};
        bool add = std::string(kind) == "ADD";
        volume_cells(grid, g, row, [&](const ProjectionReport& r, int seg) {
          const WaterCell& c = seg < 0 ? r.at(y).total : r.at(y).segment[static_cast<Segment>(seg)];
          return TableCell::number(add ? c.add : c.mdd, 0);
        });
        t.rows.push_back(std::move(row));
      }
  for (GrowthCase g : kGrowthCases) {
    TableRow row{std::string("2024-2030 Increase ") + growth_title(g), {}};
    volume_cells(grid, g, row, [&](const ProjectionReport& r, int seg) {
      double v = seg < 0 ? r.total_capacity_increase : r.capacity_increase[static_cast<Segment>(seg)];
      return TableCell::number(v, 0);
    });
    t.rows.push_back(std::move(row));
  }
  for (GrowthCase g : kGrowthCases) {
    TableRow row{std::string("2024-2030 Valuation ") + growth_title(g), {}};
    volume_cells(grid, g, row, [&](const ProjectionReport& r, int seg) {
      auto v = seg < 0 ? r.total_valuation : r.segment_valuation[static_cast<Segment>(seg)];
      return TableCell::pair(v.first / 1e9, v.second / 1e9, 0);
    });
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline TableCell record_cell(const OperatorRecord& r, Field f, int decimals, bool thousands) {
  if (!r.has(f)) return TableCell::empty();
  const FieldValue& v = r.fields.at(f);
  TableCell c = TableCell::number(v.value, decimals, thousands);
  if (is_flagged(v.provenance)) c.marker = "*";
  return c;
}

}  // namespace detail

using detail::ReportGrid;
using detail::default_grid;

inline Table operator_table(const Engine& e) {
  Table t{"operator_metrics_2024",
          "2024 U.S. data center energy and water use of selected operators",
          {"IT Energy (MWh)", "Total Energy (MWh)", "PUE", "Water Consumption (ML)",
           "Water Withdrawal (ML)", "WUE (L/kWh)", "Consumptive Ratio", "Municipal Ratio"},
          {}};
  using detail::record_cell;
  for (const auto& r : e.operators) {
    TableRow row{r.id, {}};
    row.cells.push_back(record_cell(r, Field::it_energy, 0, true));
    row.cells.push_back(record_cell(r, Field::total_energy, 0, true));
    row.cells.push_back(record_cell(r, Field::pue, 2, false));
    row.cells.push_back(record_cell(r, Field::consumption, 0, true));
    row.cells.push_back(record_cell(r, Field::withdrawal, 0, true));
    row.cells.push_back(record_cell(r, Field::wue, 2, false));
    row.cells.push_back(record_cell(r, Field::consumptive_ratio, 2, false));
    TableCell m = record_cell(r, Field::municipal_ratio, 2, false);
    m.percent = true;
    row.cells.push_back(m);
    t.rows.push_back(std::move(row));
  }
  for (Segment s : {Segment::hyperscale, Segment::colocation}) {
    const SegmentAggregate& a = e.aggregates[s];
    TableRow row{s == Segment::hyperscale ? "Hyperscale" : "Colocation",
                 {TableCell::number(a.it_energy, 0, true), TableCell::number(a.total_energy, 0, true),
                  TableCell::number(a.pue, 2), TableCell::number(a.consumption, 0, true),
                  TableCell::number(a.withdrawal, 0, true), TableCell::number(a.wue, 2),
                  TableCell::number(a.consumptive_ratio, 2), TableCell::empty()}};
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Every table the engine reproduces, keyed by golden-table id.
inline std::map<std::string, Table> build_tables(const Engine& e, const ReportGrid& grid) {
  std::map<std::string, Table> out;
  auto put = [&](Table t) { out[t.id] = std::move(t); };
  put(detail::energy_table(e, "it_energy", "U.S. data center IT energy by segment (TWh)", false));
  put(detail::energy_table(e, "server_energy", "U.S. data center server energy by segment (TWh)", true));
  put(detail::pool_table(e));
  put(detail::top_down_table(e));
  put(detail::wue_table(e));
  put(detail::volume_table(grid, false));
  put(detail::volume_table(grid, true));
  put(detail::capacity_table(grid));
  put(operator_table(e));
  return out;
}

inline std::map<std::string, Table> build_tables(const Engine& e) {
  return build_tables(e, default_grid(e));
}

}  // namespace aquacast
