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

#include <string>

#include "aquacast/api.hpp"
#include "httplib.h"

namespace aquacast {

inline constexpr int kDefaultPort = 8787;

struct ServerOptions {
  std::string cors_origin = "*";
  std::string static_dir;  // planner UI build output, optional
};

namespace detail {

inline void reply(httplib::Response& res, const api::Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

inline bool json_content(const httplib::Request& req) {
  if (!req.has_header("Content-Type")) return true;
  return req.get_header_value("Content-Type").find("application/json") != std::string::npos;
}

}  // namespace detail

/// Registers every endpoint on `svr`.  `e` must outlive the server; it is
/// only read.
inline void register_routes(httplib::Server& svr, const Engine& e, const ServerOptions& opt = {}) {
  svr.set_default_headers({{"Access-Control-Allow-Origin", opt.cors_origin},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  svr.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  svr.Get("/api/meta", [&e](const httplib::Request&, httplib::Response& res) {
    detail::reply(res, api::meta(e));
  });
  svr.Get(R"(/api/golden/([A-Za-z0-9_\-]+))", [&e](const httplib::Request& req, httplib::Response& res) {
    detail::reply(res, api::golden(e, req.matches[1]));
  });
  auto post = [&](const char* path, api::Response (*h)(const Engine&, const json&)) {
    svr.Post(path, [&e, h](const httplib::Request& req, httplib::Response& res) {
      if (!detail::json_content(req)) {
        api::RequestError err(415, "content type must be application/json");
        api::Response r = api::error_response(err);
        r.body["error"] = "unsupported media type";
        detail::reply(res, r);
        return;
      }
      detail::reply(res, api::handle([&](const json& b) { return h(e, b); }, req.body));
    });
  };
  post("/api/project", &api::project);
  post("/api/site-capacity", &api::site_capacity);
  post("/api/wci", &api::wci);
  post("/api/econ", &api::econ);
  if (!opt.static_dir.empty()) svr.set_mount_point("/", opt.static_dir);
  svr.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& ex) {
      what = ex.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(ordered_json{{"error", "internal"}, {"message", what}}.dump(), "application/json");
  });
}

}  // namespace aquacast
