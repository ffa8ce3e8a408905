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

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aquacast/dataset.hpp"
#include "aquacast/tables.hpp"

namespace aquacast {

/// A golden display string reduced to numbers.
struct ParsedCell {
  bool dash = false;
  std::vector<double> values;
  int decimals = 0;
  bool asterisk = false;
  bool dagger = false;
  std::string plain;  // without markers
};

inline ParsedCell parse_display(const std::string& s) {
  ParsedCell p;
  std::string t = s;
  auto erase_all = [&](const std::string& what) {
    bool found = false;
    for (std::size_t i; (i = t.find(what)) != std::string::npos;) {
      t.erase(i, what.size());
      found = true;
    }
    return found;
  };
  p.asterisk = erase_all("*");
  p.dagger = erase_all("\xE2\x80\xA0");
  p.plain = t;
  if (t == "--" || t.empty()) {
    p.dash = true;
    return p;
  }
  erase_all(",");
  std::string body = t;
  for (char& c : body)
    if (c == '(' || c == ')' || c == '%') c = ' ';
  // Pairs were "(a, b)"; commas are already gone, so split on spaces.
  std::istringstream in(body);
  std::string tok;
  while (in >> tok) {
    std::size_t dot = tok.find('.');
    int dec = dot == std::string::npos ? 0 : static_cast<int>(tok.size() - dot - 1);
    p.decimals = std::max(p.decimals, dec);
    try {
      p.values.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw Error("unparseable golden cell '" + s + "'");
    }
  }
  if (p.values.empty()) throw Error("unparseable golden cell '" + s + "'");
  return p;
}

enum class CellStatus { exact, within_tolerance, failed, erratum, skipped };

constexpr std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::exact: return "exact";
    case CellStatus::within_tolerance: return "within-tolerance";
    case CellStatus::failed: return "failed";
    case CellStatus::erratum: return "published-inconsistency";
    case CellStatus::skipped: return "skipped";
  }
  return "?";
}

struct CellDiff {
  std::string row;
  std::string column;
  std::string golden;
  std::string engine;
  CellStatus status = CellStatus::exact;
  double digits_off = 0.0;  // in units of the last displayed digit
  std::string note;
};

struct TableDiff {
  std::string id;
  bool golden_missing = false;
  bool engine_missing = false;
  std::size_t compared = 0;
  std::size_t exact = 0;
  std::size_t within = 0;
  std::size_t failed = 0;
  std::size_t errata = 0;
  std::vector<CellDiff> non_exact;  // everything except exact/skipped

  bool ok() const { return !golden_missing && !engine_missing && failed == 0; }
};

struct DiffReport {
  std::vector<TableDiff> tables;

  std::size_t compared() const { return sum(&TableDiff::compared); }
  std::size_t exact() const { return sum(&TableDiff::exact); }
  std::size_t failed() const { return sum(&TableDiff::failed); }
  std::size_t errata() const { return sum(&TableDiff::errata); }
  bool ok() const {
    for (const auto& t : tables)
      if (!t.ok()) return false;
    return true;
  }
  double exact_fraction() const {
    return compared() == 0 ? 0.0 : static_cast<double>(exact()) / static_cast<double>(compared());
  }

 private:
  std::size_t sum(std::size_t TableDiff::*m) const {
    std::size_t n = 0;
    for (const auto& t : tables) n += t.*m;
    return n;
  }
};

namespace detail {

inline std::optional<std::string> swap_word(const std::string& s, const std::string& from,
                                            const std::string& to) {
  std::size_t i = s.find(from);
  if (i == std::string::npos) return std::nullopt;
  std::string out = s;
  out.replace(i, from.size(), to);
  return out;
}

// When a printed mid cell disagrees with the mean of its printed low and
// high neighbours, the published table is internally inconsistent there.
inline std::optional<double> implied_mid(const GoldenTable& g, std::size_t row, std::size_t col) {
  const std::string& rl = g.rows[row].label;
  const std::string& cl = g.columns[col];
  auto find_col = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < g.columns.size(); ++i)
      if (g.columns[i] == name) return i;
    return std::nullopt;
  };
  auto find_row = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < g.rows.size(); ++i)
      if (g.rows[i].label == name) return i;
    return std::nullopt;
  };
  auto mean_of = [&](std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2)
      -> std::optional<double> {
    ParsedCell a = parse_display(g.rows[r1].cells[c1]);
    ParsedCell b = parse_display(g.rows[r2].cells[c2]);
    if (a.dash || b.dash || a.values.size() != 1 || b.values.size() != 1) return std::nullopt;
    return (a.values[0] + b.values[0]) / 2.0;
  };
  if (auto lo = swap_word(cl, "Mid", "Low")) {
    auto hi = swap_word(cl, "Mid", "High");
    auto cl_lo = find_col(*lo), cl_hi = find_col(*hi);
    if (cl_lo && cl_hi) return mean_of(row, *cl_lo, row, *cl_hi);
  }
  if (auto lo = swap_word(rl, "Mid", "Low")) {
    auto hi = swap_word(rl, "Mid", "High");
    auto rl_lo = find_row(*lo), rl_hi = find_row(*hi);
    if (rl_lo && rl_hi) return mean_of(*rl_lo, col, *rl_hi, col);
  }
  return std::nullopt;
}

inline double digits_between(double engine, double golden, int decimals) {
  double scale = std::pow(10.0, decimals);
  return std::abs(round_half_away(engine, decimals) - golden) * scale;
}

}  // namespace detail

inline constexpr double kDigitTolerance = 1.0;

inline TableDiff compare_table(const Table& engine, const GoldenTable& golden) {
  TableDiff d;
  d.id = golden.id;
  if (engine.rows.size() != golden.rows.size())
    throw Error("table " + golden.id + ": engine has " + std::to_string(engine.rows.size()) +
                " rows, golden has " + std::to_string(golden.rows.size()));
  for (std::size_t r = 0; r < golden.rows.size(); ++r) {
    const auto& grow = golden.rows[r];
    const auto& erow = engine.rows[r];
    if (erow.cells.size() != grow.cells.size())
      throw Error("table " + golden.id + " row " + grow.label + ": width mismatch");
    for (std::size_t c = 0; c < grow.cells.size(); ++c) {
      ParsedCell g = parse_display(grow.cells[c]);
      const TableCell& e = erow.cells[c];
      if (g.dash) continue;
      ++d.compared;
      CellDiff cd{grow.label, golden.columns[c], grow.cells[c], e.display(), CellStatus::exact, 0, ""};
      if (e.dash || e.values.size() != g.values.size()) {
        cd.status = CellStatus::failed;
        cd.note = "shape mismatch";
      } else if (e.text() == g.plain) {
        cd.status = CellStatus::exact;
      } else {
        double worst = 0;
        for (std::size_t k = 0; k < g.values.size(); ++k) {
          double ev = e.percent ? e.values[k] * 100 : e.values[k];
          worst = std::max(worst, detail::digits_between(ev, g.values[k], g.decimals));
        }
        cd.digits_off = worst;
        cd.status = worst <= kDigitTolerance + 1e-9 ? CellStatus::within_tolerance : CellStatus::failed;
        if (cd.status == CellStatus::failed && g.values.size() == 1) {
          if (auto mid = detail::implied_mid(golden, r, c)) {
            double printed_gap = std::abs(*mid - g.values[0]) * std::pow(10.0, g.decimals);
            double engine_gap = detail::digits_between(e.values[0], *mid, g.decimals);
            if (printed_gap > 1.5 && engine_gap <= 1.0 + 1e-9) {
              cd.status = CellStatus::erratum;
              std::ostringstream os;
              os << "printed low/high imply " << format_fixed(*mid, g.decimals);
              cd.note = os.str();
            }
          }
        }
      }
      switch (cd.status) {
        case CellStatus::exact: ++d.exact; break;
        case CellStatus::within_tolerance: ++d.within; break;
        case CellStatus::failed: ++d.failed; break;
        case CellStatus::erratum: ++d.errata; break;
        case CellStatus::skipped: break;
      }
      if (cd.status != CellStatus::exact) d.non_exact.push_back(std::move(cd));
    }
  }
  return d;
}

/// Compares every engine table against the bundled golden tables.
inline DiffReport validate(const Engine& e, const std::map<std::string, Table>& tables) {
  DiffReport rep;
  for (const auto& [id, t] : tables) {
    auto g = e.data.golden.find(id);
    if (g == e.data.golden.end()) {
      TableDiff d;
      d.id = id;
      d.golden_missing = true;
      rep.tables.push_back(d);
      continue;
    }
    rep.tables.push_back(compare_table(t, g->second));
  }
  for (const auto& [id, g] : e.data.golden)
    if (!tables.count(id)) {
      TableDiff d;
      d.id = id;
      d.engine_missing = true;
      rep.tables.push_back(d);
    }
  return rep;
}

inline DiffReport validate(const Engine& e) { return validate(e, build_tables(e)); }

/// Golden operator cells marked with an asterisk whose engine field is not
/// flagged estimated/assigned.
inline std::vector<std::string> audit_operator_flags(const Engine& e) {
  std::vector<std::string> out;
  auto g = e.data.golden.find("operator_metrics_2024");
  if (g == e.data.golden.end()) return {"operator_metrics_2024 golden table missing"};
  const Field cols[] = {Field::it_energy, Field::total_energy, Field::pue, Field::consumption,
                        Field::withdrawal, Field::wue, Field::consumptive_ratio,
                        Field::municipal_ratio};
  for (const auto& row : g->second.rows) {
    const OperatorRecord* rec = nullptr;
    for (const auto& r : e.operators)
      if (r.id == row.label) rec = &r;
    if (!rec) continue;
    for (std::size_t c = 0; c < row.cells.size() && c < 8; ++c) {
      if (!parse_display(row.cells[c]).asterisk) continue;
      Field f = cols[c];
      if (!rec->has(f) || !is_flagged(rec->fields.at(f).provenance))
        out.push_back(row.label + " " + std::string(to_string(f)) + " is marked but not flagged");
    }
  }
  return out;
}

inline std::string format_diff_report(const DiffReport& rep, bool verbose = true) {
  std::ostringstream os;
  for (const auto& t : rep.tables) {
    if (t.golden_missing) {
      os << t.id << ": MISSING golden table\n";
      continue;
    }
    if (t.engine_missing) {
      os << t.id << ": MISSING engine table\n";
      continue;
    }
    os << t.id << ": " << t.compared << " cells, " << t.exact << " exact, " << t.within
       << " within tolerance, " << t.failed << " failed";
    if (t.errata) os << ", " << t.errata << " published inconsistency";
    os << "\n";
    if (verbose)
      for (const auto& c : t.non_exact)
        os << "  [" << to_string(c.status) << "] " << c.row << " / " << c.column
           << ": golden " << c.golden << ", engine " << c.engine
           << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
  }
  os << "total: " << rep.compared() << " cells, " << rep.exact() << " exact ("
     << format_fixed(rep.exact_fraction() * 100, 2) << "%), " << rep.failed() << " failed, "
     << rep.errata() << " published inconsistency\n";
  return os.str();
}

}  // namespace aquacast
