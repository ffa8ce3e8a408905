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

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "aquacast/units.hpp"
#include "json.hpp"

namespace aquacast {

// Record quantities use MWh for energy, ML for water and L/kWh for WUE.
enum class Field {
  it_energy,
  total_energy,
  pue,
  consumption,
  withdrawal,
  wue,
  consumptive_ratio,
  municipal_ratio,
};

inline constexpr std::array<Field, 8> kFields = {
    Field::it_energy, Field::total_energy, Field::pue, Field::consumption,
    Field::withdrawal, Field::wue, Field::consumptive_ratio, Field::municipal_ratio};

constexpr std::string_view to_string(Field f) {
  switch (f) {
    case Field::it_energy: return "it_energy";
    case Field::total_energy: return "total_energy";
    case Field::pue: return "pue";
    case Field::consumption: return "consumption";
    case Field::withdrawal: return "withdrawal";
    case Field::wue: return "wue";
    case Field::consumptive_ratio: return "consumptive_ratio";
    case Field::municipal_ratio: return "municipal_ratio";
  }
  return "?";
}

inline std::optional<Field> field_from_name(std::string_view s) {
  for (Field f : kFields)
    if (to_string(f) == s) return f;
  return std::nullopt;
}

enum class Provenance { reported, derived, estimated, assigned };

constexpr std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::reported: return "reported";
    case Provenance::derived: return "derived";
    case Provenance::estimated: return "estimated";
    case Provenance::assigned: return "assigned";
  }
  return "?";
}

inline Provenance parse_provenance(std::string_view s) {
  for (Provenance p : {Provenance::reported, Provenance::derived, Provenance::estimated,
                       Provenance::assigned})
    if (to_string(p) == s) return p;
  throw Error("unknown provenance '" + std::string(s) + "'");
}

/// Estimated or assigned values are the ones a published table would mark.
constexpr bool is_flagged(Provenance p) {
  return p == Provenance::estimated || p == Provenance::assigned;
}

struct FieldValue {
  double value = 0.0;
  Provenance provenance = Provenance::reported;
  std::string rule_id;  // empty for reported values
};

/// One normalization step.  `op` names a generic rule; `args` carries its
/// operands.  Operands are numbers or names of fields/params.
struct Rule {
  std::string id;
  std::string op;
  nlohmann::json args;
};

struct OperatorRecord {
  std::string id;
  Segment segment = Segment::hyperscale;
  std::map<Field, FieldValue> fields;
  std::map<std::string, double> params;
  std::vector<Rule> rules;
  std::vector<std::string> notes;
  std::vector<std::string> diagnostics;
  bool flagged = false;

  bool has(Field f) const { return fields.count(f) != 0; }
  double get(Field f) const {
    auto it = fields.find(f);
    if (it == fields.end())
      throw Error(id + ": field " + std::string(to_string(f)) + " not populated");
    return it->second.value;
  }
};

// ---------------------------------------------------------------------------
// Primitive operations.

struct OfficeSplit {
  double w_dc = 0.0;
  double c_dc = 0.0;
};

/// Separates data-center water from office water given the two consumptive
/// ratios.  Throws when `c_total` lies outside the feasible bracket.
inline OfficeSplit split_office_water(double w_total, double c_total, double r_dc = 0.75,
                                      double r_office = 0.10) {
  if (r_dc == r_office) throw Error("split_office_water: ratios must differ");
  double lo = std::min(r_dc, r_office) * w_total;
  double hi = std::max(r_dc, r_office) * w_total;
  if (c_total < lo || c_total > hi) {
    std::ostringstream os;
    os << "split_office_water: infeasible split, consumption " << c_total
       << " outside [" << lo << ", " << hi << "]";
    throw Error(os.str());
  }
  double w_dc = (c_total - r_office * w_total) / (r_dc - r_office);
  return {w_dc, r_dc * w_dc};
}

inline double apply_allocation_factor(double global_value, double share) {
  if (share < 0 || share > 1) throw Error("apply_allocation_factor: share outside [0, 1]");
  return global_value * share;
}

inline double coverage_share(double segment_it, double national_it) {
  if (national_it <= 0) throw Error("coverage_share: non-positive national IT energy");
  return segment_it / national_it;
}

// ---------------------------------------------------------------------------
// Record completion.

inline constexpr double kClosureTolerance = 0.005;

namespace detail {

class RecordContext {
 public:
  RecordContext(OperatorRecord& r, const std::map<std::string, OperatorRecord>& peers,
                const UnitSystem& units)
      : r_(r), peers_(peers), units_(units) {}

  double value(const nlohmann::json& operand) const {
    if (operand.is_number()) return operand.get<double>();
    if (!operand.is_string()) throw Error(r_.id + ": operand must be a number or a name");
    std::string name = operand.get<std::string>();
    if (auto f = field_from_name(name)) return r_.get(*f);
    auto it = r_.params.find(name);
    if (it == r_.params.end()) throw Error(r_.id + ": missing parameter '" + name + "'");
    return it->second;
  }

  void write(const std::string& name, double v, Provenance p, const std::string& rule) {
    if (auto f = field_from_name(name)) {
      auto it = r_.fields.find(*f);
      if (it != r_.fields.end())
        throw Error(r_.id + ": rule " + rule + " would overwrite " +
                    std::string(to_string(it->second.provenance)) + " field " + name);
      r_.fields[*f] = {v, p, rule};
    } else {
      r_.params[name] = v;
    }
  }

  const OperatorRecord& peer(const std::string& id) const {
    auto it = peers_.find(id);
    if (it == peers_.end()) throw Error(r_.id + ": peer '" + id + "' not completed");
    return it->second;
  }

  const UnitSystem& units() const { return units_; }

 private:
  OperatorRecord& r_;
  const std::map<std::string, OperatorRecord>& peers_;
  const UnitSystem& units_;
};

inline std::string arg_string(const Rule& rule, const char* key) {
  if (!rule.args.contains(key) || !rule.args[key].is_string())
    throw Error("rule " + rule.id + ": missing string argument '" + key + "'");
  return rule.args[key].get<std::string>();
}

inline const nlohmann::json& arg(const Rule& rule, const char* key) {
  if (!rule.args.contains(key)) throw Error("rule " + rule.id + ": missing argument '" + key + "'");
  return rule.args[key];
}

// Provenance of a computed field: estimated if any input is flagged,
// otherwise derived from reported values.
inline Provenance computed_provenance(const OperatorRecord& r, std::initializer_list<Field> in) {
  for (Field f : in)
    if (is_flagged(r.fields.at(f).provenance)) return Provenance::estimated;
  return Provenance::derived;
}

// wue [L/kWh] = consumption [ML] * 1e6 / (it [MWh] * 1e3)
inline constexpr double kWueScale = 1000.0;

inline bool close_once(OperatorRecord& r, const std::string& rule) {
  auto put = [&](Field f, double v, std::initializer_list<Field> in) {
    r.fields[f] = {v, computed_provenance(r, in), rule};
    return true;
  };
  using F = Field;
  bool h_it = r.has(F::it_energy), h_tot = r.has(F::total_energy), h_pue = r.has(F::pue);
  if (h_tot && h_pue && !h_it) return put(F::it_energy, r.get(F::total_energy) / r.get(F::pue), {F::total_energy, F::pue});
  if (h_it && h_pue && !h_tot) return put(F::total_energy, r.get(F::it_energy) * r.get(F::pue), {F::it_energy, F::pue});
  if (h_it && h_tot && !h_pue) return put(F::pue, r.get(F::total_energy) / r.get(F::it_energy), {F::it_energy, F::total_energy});

  bool h_c = r.has(F::consumption), h_wue = r.has(F::wue);
  if (h_c && h_wue && !h_it) return put(F::it_energy, r.get(F::consumption) * kWueScale / r.get(F::wue), {F::consumption, F::wue});
  if (h_it && h_wue && !h_c) return put(F::consumption, r.get(F::it_energy) * r.get(F::wue) / kWueScale, {F::it_energy, F::wue});
  if (h_it && h_c && !h_wue) return put(F::wue, r.get(F::consumption) * kWueScale / r.get(F::it_energy), {F::consumption, F::it_energy});

  bool h_w = r.has(F::withdrawal), h_ratio = r.has(F::consumptive_ratio);
  if (h_c && h_ratio && !h_w) return put(F::withdrawal, r.get(F::consumption) / r.get(F::consumptive_ratio), {F::consumption, F::consumptive_ratio});
  if (h_w && h_ratio && !h_c) return put(F::consumption, r.get(F::withdrawal) * r.get(F::consumptive_ratio), {F::withdrawal, F::consumptive_ratio});
  if (h_c && h_w && !h_ratio) return put(F::consumptive_ratio, r.get(F::consumption) / r.get(F::withdrawal), {F::consumption, F::withdrawal});
  return false;
}

}  // namespace detail

/// Checks the three closure identities.  Returns one message per violated
/// or unverifiable identity.
inline std::vector<std::string> closure_violations(const OperatorRecord& r,
                                                   double tol = kClosureTolerance) {
  std::vector<std::string> out;
  auto check = [&](const char* name, Field lhs, double rhs_value, bool rhs_known) {
    if (!r.has(lhs) || !rhs_known) {
      out.push_back(std::string(name) + ": not all terms populated");
      return;
    }
    double lv = r.get(lhs);
    double rel = rhs_value == 0 ? std::abs(lv) : std::abs(lv / rhs_value - 1.0);
    if (rel > tol) {
      std::ostringstream os;
      os << name << ": residual " << rel * 100 << "% exceeds " << tol * 100 << "%";
      out.push_back(os.str());
    }
  };
  using F = Field;
  bool e = r.has(F::it_energy) && r.has(F::total_energy);
  check("pue = total_energy / it_energy", F::pue,
        e ? r.get(F::total_energy) / r.get(F::it_energy) : 0, e);
  bool w = r.has(F::it_energy) && r.has(F::consumption);
  check("wue = consumption / it_energy", F::wue,
        w ? r.get(F::consumption) * detail::kWueScale / r.get(F::it_energy) : 0, w);
  bool c = r.has(F::consumption) && r.has(F::withdrawal);
  check("consumptive_ratio = consumption / withdrawal", F::consumptive_ratio,
        c ? r.get(F::consumption) / r.get(F::withdrawal) : 0, c);
  return out;
}

/// Executes the record's rule list in order.  Failures are recorded as
/// diagnostics and flag the record instead of throwing.
inline OperatorRecord complete_record(OperatorRecord r,
                                      const std::map<std::string, OperatorRecord>& peers = {},
                                      const UnitSystem& units = UnitSystem::us_liquid()) {
  if (r.rules.empty()) {
    r.flagged = true;
    r.diagnostics.push_back("empty rule list");
    return r;
  }
  detail::RecordContext ctx(r, peers, units);
  using detail::arg;
  using detail::arg_string;
  for (const Rule& rule : r.rules) {
    try {
      Provenance est = Provenance::estimated;
      if (rule.op == "assign") {
        ctx.write(arg_string(rule, "field"), arg(rule, "value").get<double>(),
                  Provenance::assigned, rule.id);
      } else if (rule.op == "allocate") {
        double v = apply_allocation_factor(ctx.value(arg(rule, "from")),
                                           ctx.value(arg(rule, "share")));
        ctx.write(arg_string(rule, "out"), v, est, rule.id);
      } else if (rule.op == "product") {
        ctx.write(arg_string(rule, "out"), ctx.value(arg(rule, "a")) * ctx.value(arg(rule, "b")),
                  est, rule.id);
      } else if (rule.op == "quotient") {
        double den = ctx.value(arg(rule, "den"));
        if (den == 0) throw Error("rule " + rule.id + ": division by zero");
        ctx.write(arg_string(rule, "out"), ctx.value(arg(rule, "num")) / den, est, rule.id);
      } else if (rule.op == "difference") {
        ctx.write(arg_string(rule, "out"), ctx.value(arg(rule, "a")) - ctx.value(arg(rule, "b")),
                  est, rule.id);
      } else if (rule.op == "office_split") {
        double r_dc = rule.args.value("r_dc", 0.75);
        double r_off = rule.args.value("r_office", 0.10);
        OfficeSplit s = split_office_water(ctx.value(arg(rule, "withdrawal")),
                                           ctx.value(arg(rule, "consumption")), r_dc, r_off);
        ctx.write(arg_string(rule, "out_withdrawal"), s.w_dc, est, rule.id);
        ctx.write(arg_string(rule, "out_consumption"), s.c_dc, est, rule.id);
      } else if (rule.op == "convert") {
        Quantity q{ctx.value(arg(rule, "from")), parse_unit(arg_string(rule, "from_unit"))};
        ctx.write(arg_string(rule, "out"),
                  convert(q, parse_unit(arg_string(rule, "to_unit")), ctx.units()).value, est,
                  rule.id);
      } else if (rule.op == "peer_mean") {
        std::string name = arg_string(rule, "field");
        auto f = field_from_name(name);
        if (!f) throw Error("rule " + rule.id + ": peer_mean needs a record field");
        const auto& ids = arg(rule, "peers");
        if (!ids.is_array() || ids.empty()) throw Error("rule " + rule.id + ": empty peer list");
        double sum = 0;
        for (const auto& id : ids) sum += ctx.peer(id.get<std::string>()).get(*f);
        double factor = rule.args.value("factor", 1.0);
        ctx.write(name, factor * sum / static_cast<double>(ids.size()), est, rule.id);
      } else if (rule.op == "closure") {
        while (detail::close_once(r, rule.id)) {
        }
        for (auto& v : closure_violations(r)) {
          r.diagnostics.push_back(rule.id + ": " + v);
          r.flagged = true;
        }
      } else if (rule.op == "note_discrepancy") {
        double derived = ctx.value(arg(rule, "value"));
        double reference = ctx.value(arg(rule, "reference"));
        std::ostringstream os;
        os << rule.id << ": " << rule.args.value("label", std::string("discrepancy"))
           << ": derived " << derived << " vs reference " << reference << " (ratio "
           << (reference != 0 ? derived / reference : 0.0) << ")";
        r.notes.push_back(os.str());
      } else {
        throw Error("rule " + rule.id + ": unknown op '" + rule.op + "'");
      }
    } catch (const Error& e) {
      r.diagnostics.push_back(e.what());
      r.flagged = true;
      return r;
    } catch (const nlohmann::json::exception& e) {
      r.diagnostics.push_back("rule " + rule.id + ": " + e.what());
      r.flagged = true;
      return r;
    }
  }
  for (Field f : {Field::it_energy, Field::total_energy, Field::pue, Field::consumption,
                  Field::withdrawal, Field::wue, Field::consumptive_ratio}) {
    if (!r.has(f)) {
      r.diagnostics.push_back("field " + std::string(to_string(f)) + " not populated");
      r.flagged = true;
    }
  }
  return r;
}

/// Completes every record, resolving peer references first.
inline std::vector<OperatorRecord> complete_all(const std::vector<OperatorRecord>& records,
                                                const UnitSystem& units = UnitSystem::us_liquid()) {
  std::map<std::string, OperatorRecord> done;
  std::vector<bool> finished(records.size(), false);
  auto deps = [](const OperatorRecord& r) {
    std::set<std::string> d;
    for (const auto& rule : r.rules)
      if (rule.op == "peer_mean" && rule.args.contains("peers"))
        for (const auto& p : rule.args["peers"]) d.insert(p.get<std::string>());
    return d;
  };
  std::size_t remaining = records.size();
  while (remaining > 0) {
    bool progress = false;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (finished[i]) continue;
      bool ready = true;
      for (const auto& d : deps(records[i]))
        if (!done.count(d)) ready = false;
      if (!ready) continue;
      done[records[i].id] = complete_record(records[i], done, units);
      finished[i] = true;
      --remaining;
      progress = true;
    }
    if (!progress) throw Error("operator records have unresolvable peer references");
  }
  std::vector<OperatorRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(done.at(r.id));
  return out;
}

// ---------------------------------------------------------------------------
// Aggregation.

struct SegmentAggregate {
  Segment segment = Segment::hyperscale;
  std::size_t members = 0;
  double it_energy = 0.0;     // MWh
  double total_energy = 0.0;  // MWh
  double consumption = 0.0;   // ML
  double withdrawal = 0.0;    // ML
  double wue = 0.0;           // L/kWh
  double pue = 0.0;
  double consumptive_ratio = 0.0;
  double coverage_share = 0.0;
};

inline std::vector<const OperatorRecord*> members_of(const std::vector<OperatorRecord>& records,
                                                     Segment s) {
  std::vector<const OperatorRecord*> out;
  for (const auto& r : records)
    if (r.segment == s) out.push_back(&r);
  return out;
}

inline double weighted_segment_wue(const std::vector<const OperatorRecord*>& records) {
  if (records.empty()) throw Error("weighted_segment_wue: empty record list");
  double c = 0, it = 0;
  for (const auto* r : records) {
    c += r->get(Field::consumption);
    it += r->get(Field::it_energy);
  }
  return c * detail::kWueScale / it;
}

inline double segment_consumptive_ratio(const std::vector<const OperatorRecord*>& records) {
  double c = 0, w = 0;
  for (const auto* r : records) {
    c += r->get(Field::consumption);
    w += r->get(Field::withdrawal);
  }
  if (w <= 0) throw Error("segment_consumptive_ratio: zero withdrawal");
  return c / w;
}

/// `national_it_twh` is the national segment IT energy used for coverage.
inline SegmentAggregate aggregate_segment(const std::vector<OperatorRecord>& records, Segment s,
                                          double national_it_twh) {
  auto m = members_of(records, s);
  SegmentAggregate a;
  a.segment = s;
  a.members = m.size();
  for (const auto* r : m) {
    if (r->flagged) throw Error("cannot aggregate flagged record " + r->id);
    a.it_energy += r->get(Field::it_energy);
    a.total_energy += r->get(Field::total_energy);
    a.consumption += r->get(Field::consumption);
    a.withdrawal += r->get(Field::withdrawal);
  }
  a.wue = weighted_segment_wue(m);
  a.consumptive_ratio = segment_consumptive_ratio(m);
  a.pue = a.total_energy / a.it_energy;
  a.coverage_share = coverage_share(a.it_energy / 1e6, national_it_twh);
  return a;
}

}  // namespace aquacast
