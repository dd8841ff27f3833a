/* Copyright 2026 The kgen Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <chrono>
#include <iostream>
#include <mutex>
#include <string>

#include <httplib.h>

#include "kgen/service/api.hpp"

namespace kgen {

/// HTTP binding of Api. One log line per request goes to `log`.
class HttpServer {
 public:
  HttpServer(Api& api, std::string cors_origin, std::ostream& log = std::clog)
      : api_(api), cors_origin_(std::move(cors_origin)), log_(log) {
    server_.set_payload_max_length(kMaxBody);
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      const auto start = std::chrono::steady_clock::now();
      const auto out = api_.handle(req.method, req.path, req.body);
      res.status = out.status;
      res.set_content(out.body, "application/json");
      add_cors(res);
      const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
      std::lock_guard lock(log_mu_);
      log_ << req.method << ' ' << req.path << ' ' << out.status << ' ' << ms.count() << "ms";
      if (!out.log.empty()) log_ << ' ' << out.log;
      log_ << std::endl;
    };
    const std::string any = R"(/api/.*)";
    server_.Get(any, forward);
    server_.Post(any, forward);
    server_.Put(any, forward);
    server_.Delete(any, forward);
    server_.set_error_handler([this](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      res.set_content(error_body("bad_request", res.status == 413 ? "request body too large" : "no such endpoint"),
                      "application/json");
      add_cors(res);
    });
    server_.Options(any, [this](const httplib::Request&, httplib::Response& res) {
      add_cors(res);
      res.status = 204;
    });
  }

  /// Binds to host:port (port 0 picks a free one). Returns the bound port; throws
  /// Error when binding fails.
  int bind(const std::string& host, int port) {
    const int bound = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
    return bound;
  }

  /// Serves until stop() is called.
  void listen() { server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  bool running() const { return server_.is_running(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

 private:
  static constexpr std::size_t kMaxBody = 4 << 20;

  void add_cors(httplib::Response& res) const {
    if (cors_origin_.empty()) return;
    res.set_header("Access-Control-Allow-Origin", cors_origin_);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  }

  Api& api_;
  std::string cors_origin_;
  std::ostream& log_;
  std::mutex log_mu_;
  httplib::Server server_;
};

}  // namespace kgen
