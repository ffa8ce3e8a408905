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

// aquacast: projection, validation and calculator command line.
//
// Exit status: 0 success, 1 usage error, 2 validation failure,
// 3 dataset error.

#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aquacast/aquacast.hpp"
#include "aquacast/server.hpp"

namespace {

using namespace aquacast;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitDataset = 3;

struct UsageError : Error {
  using Error::Error;
};

json read_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open input " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return api::parse_body(text);
  } catch (const api::RequestError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int print_response(const api::Response& r) {
  if (r.status != 200) {
    std::cerr << "error: " << r.body.value("message", "request rejected") << "\n";
    if (r.body.contains("fields"))
      for (const auto& [k, v] : r.body["fields"].items())
        std::cerr << "  " << k << ": " << v.get<std::string>() << "\n";
    return kExitUsage;
  }
  std::cout << r.body.dump(2) << "\n";
  return kExitOk;
}

struct ProjectOpts {
  std::string config;
  std::vector<std::string> growth;
  std::vector<std::string> scenarios;
  std::optional<double> beta, cost_low, cost_high;
  std::optional<int> from, to;
  std::string format;
  std::string out;
};

RunConfig resolve_config(const ProjectOpts& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
  try {
    if (!o.growth.empty()) {
      c.growth.clear();
      for (const auto& g : o.growth) c.growth.push_back(parse_growth(g));
    }
    if (!o.scenarios.empty()) {
      c.scenarios.clear();
      for (const auto& s : o.scenarios) c.scenarios.push_back(parse_scenario(s));
    }
    if (!o.format.empty()) c.format = parse_format(o.format);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (o.beta) c.beta = *o.beta;
  if (o.cost_low || o.cost_high) {
    CostBand b = c.cost.value_or(CostBand{});
    if (o.cost_low) b.low = *o.cost_low;
    if (o.cost_high) b.high = *o.cost_high;
    c.cost = b;
  }
  if (o.from) c.year_start = *o.from;
  if (o.to) c.year_end = *o.to;
  if (!o.out.empty()) c.out = o.out;
  validate(c);
  return c;
}

int cmd_project(const Engine& e, const ProjectOpts& o) {
  RunConfig c = resolve_config(o);
  if (!c.out.empty()) {
    for (const auto& p : run_and_emit(c, e)) std::cout << p.string() << "\n";
    return kExitOk;
  }
  auto reports = run_pipeline(c, e);
  if (c.format == OutputFormat::json) {
    ordered_json a = ordered_json::array();
    for (const auto& r : reports) a.push_back(report_to_json(r));
    std::cout << a.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) std::cout << "\n";
      std::cout << render_report(reports[i], c.format);
    }
  }
  return kExitOk;
}

int cmd_validate(const Engine& e, bool quiet) {
  auto start = std::chrono::steady_clock::now();
  DiffReport rep = validate(e);
  auto flags = audit_operator_flags(e);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << format_diff_report(rep, !quiet);
  for (const auto& f : flags) std::cout << "flag audit: " << f << "\n";
  std::cout << "elapsed: " << format_fixed(secs, 3) << " s\n";
  return rep.ok() && flags.empty() ? kExitOk : kExitValidation;
}

volatile std::sig_atomic_t g_stop = 0;
httplib::Server* g_server = nullptr;

void on_signal(int) {
  g_stop = 1;
  if (g_server) g_server->stop();
}

int cmd_serve(const Engine& e, const std::string& host, int port, const ServerOptions& opt) {
  httplib::Server svr;
  register_routes(svr, e, opt);
  g_server = &svr;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "aquacast " << kEngineVersion << " serving " << e.data.dir.string() << " on http://"
            << host << ":" << port << "\n";
  bool ok = svr.listen(host, port);
  g_server = nullptr;
  if (!ok && !g_stop) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

template <typename T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data center water demand projection and capacity planning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kEngineVersion));
  std::string data_dir;
  app.add_option("--data-dir", data_dir, "Dataset directory (default: $AQUACAST_DATA_DIR or bundled)");

  ProjectOpts po;
  auto* project = app.add_subcommand("project", "Project water demand for scenario/growth pairs");
  project->add_option("--config", po.config, "JSON run configuration")->check(CLI::ExistingFile);
  project->add_option("--growth", po.growth, "Growth cases: low, mid, high")->delimiter(',');
  project->add_option("--scenario", po.scenarios,
                      "Scenarios: baseline, moderate, optimistic, reference-lbnl, reference-ns")
      ->delimiter(',');
  project->add_option("--beta", po.beta, "Peaking factor override");
  project->add_option("--cost-low", po.cost_low, "Low capacity cost, $ per MGD");
  project->add_option("--cost-high", po.cost_high, "High capacity cost, $ per MGD");
  project->add_option("--from", po.from, "First year");
  project->add_option("--to", po.to, "Last year");
  project->add_option("--format", po.format, "csv, json or markdown");
  project->add_option("--out", po.out, "Write report, table and headline files here");

  bool quiet = false;
  auto* validate_cmd = app.add_subcommand("validate", "Compare engine tables against the golden tables");
  validate_cmd->add_flag("--quiet", quiet, "Summary lines only");

  std::string site_input;
  std::optional<double> it_mw, pwue_v, wue_v, beta_v, ratio_v, gen_mw, redundancy, utilization;
  auto* site = app.add_subcommand("site-capacity", "Peak water capacity for a site");
  site->add_option("--input", site_input, "JSON request file, or - for stdin");
  site->add_option("--it-mw", it_mw, "IT load, MW");
  site->add_option("--pwue", pwue_v, "Peak WUE, L/kWh");
  site->add_option("--wue", wue_v, "Annual WUE, L/kWh (scaled by --beta)");
  site->add_option("--beta", beta_v, "Peaking factor applied to --wue");
  site->add_option("--ratio", ratio_v, "Consumptive ratio");
  site->add_option("--generator-mw", gen_mw, "Permitted generator capacity, MW");
  site->add_option("--redundancy", redundancy, "Generator redundancy (default 2)");
  site->add_option("--utilization", utilization, "IT utilization of generator capacity (default 0.8)");

  std::string wci_input;
  std::optional<double> added, allocated, available;
  auto* wci_cmd = app.add_subcommand("wci", "Water capacity impact score");
  wci_cmd->add_option("--input", wci_input, "JSON request file, or - for stdin");
  wci_cmd->add_option("--added", added, "Capacity added by the site, MGD");
  wci_cmd->add_option("--allocated", allocated, "Capacity allocated to the site, MGD");
  wci_cmd->add_option("--available", available, "Capacity available before allocation, MGD");

  std::string econ_input;
  std::optional<double> e_it, e_util, e_pue, e_wlo, e_whi, e_wcost;
  std::vector<std::string> gen_costs;
  auto* econ_cmd = app.add_subcommand("econ", "Peak power versus water capacity cost comparison");
  econ_cmd->add_option("--input", econ_input, "JSON request file, or - for stdin");
  econ_cmd->add_option("--it-mw", e_it, "IT load, MW");
  econ_cmd->add_option("--utilization", e_util, "Average power capacity utilization");
  econ_cmd->add_option("--pue-delta", e_pue, "PUE reduction from evaporative cooling");
  econ_cmd->add_option("--water-low", e_wlo, "Low water capacity, MGD");
  econ_cmd->add_option("--water-high", e_whi, "High water capacity, MGD");
  econ_cmd->add_option("--water-cost", e_wcost, "Water capacity cost, $ per MGD");
  econ_cmd->add_option("--generator-cost", gen_costs, "region=$/kW, repeatable");

  int port = kDefaultPort;
  std::string host = "127.0.0.1";
  ServerOptions sopt;
  auto* serve = app.add_subcommand("serve", "Run the HTTP projection service");
  serve->add_option("--port", port, "Port (default 8787)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--static", sopt.static_dir, "Serve planner UI files from this directory");
  serve->add_option("--cors-origin", sopt.cors_origin, "Allowed CORS origin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    Engine engine = load_engine(data_dir);
    if (*project) return cmd_project(engine, po);
    if (*validate_cmd) return cmd_validate(engine, quiet);
    if (*site) {
      json body = site_input.empty() ? json::object() : read_input(site_input);
      put_opt(body, "it_load_mw", it_mw);
      put_opt(body, "pwue", pwue_v);
      put_opt(body, "annual_wue", wue_v);
      put_opt(body, "beta", beta_v);
      put_opt(body, "consumptive_ratio", ratio_v);
      put_opt(body, "generator_mw", gen_mw);
      put_opt(body, "redundancy", redundancy);
      put_opt(body, "utilization", utilization);
      return print_response(api::handle([&](const json& b) { return api::site_capacity(engine, b); }, body.dump()));
    }
    if (*wci_cmd) {
      json body = wci_input.empty() ? json::object() : read_input(wci_input);
      put_opt(body, "added", added);
      put_opt(body, "allocated", allocated);
      put_opt(body, "available", available);
      return print_response(api::handle([&](const json& b) { return api::wci(engine, b); }, body.dump()));
    }
    if (*econ_cmd) {
      json body = econ_input.empty() ? json::object() : read_input(econ_input);
      put_opt(body, "it_mw", e_it);
      put_opt(body, "capacity_utilization", e_util);
      put_opt(body, "pue_delta", e_pue);
      put_opt(body, "water_capacity_low_mgd", e_wlo);
      put_opt(body, "water_capacity_high_mgd", e_whi);
      put_opt(body, "water_cost_per_mgd", e_wcost);
      if (!gen_costs.empty()) {
        json g = json::object();
        for (const auto& kv : gen_costs) {
          auto eq = kv.find('=');
          if (eq == std::string::npos) throw UsageError("--generator-cost expects region=value, got " + kv);
          try {
            g[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
          } catch (const std::exception&) {
            throw UsageError("--generator-cost: bad number in " + kv);
          }
        }
        body["generator_cost_per_kw"] = g;
      }
      return print_response(api::handle([&](const json& b) { return api::econ(engine, b); }, body.dump()));
    }
    if (*serve) return cmd_serve(engine, host, port, sopt);
  } catch (const DatasetError& e) {
    std::cerr << "dataset error: " << e.what() << "\n";
    return kExitDataset;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
