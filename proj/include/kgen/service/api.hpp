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

#include <string>
#include <string_view>

#include "kgen/service/json_codec.hpp"

namespace kgen {

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string log;  ///< stage timings for the request log; empty when not applicable
};

/// Transport-independent REST routing. The HTTP binding and the tests both go
/// through handle().
class Api {
 public:
  explicit Api(Engine& engine) : engine_(engine) {}

  ApiResponse handle(std::string_view method, std::string_view path, std::string_view body) {
    try {
      return route(method, path, body);
    } catch (const InfeasibleConstraints& e) {
      return error(422, "infeasible_constraints", e.what());
    } catch (const InvalidArgument& e) {
      return error(400, "bad_request", e.what());
    } catch (const ConfigError& e) {
      return error(500, "config_error", e.what());
    } catch (const std::exception& e) {
      return error(500, "internal", e.what());
    }
  }

  Engine& engine() { return engine_; }

 private:
  static ApiResponse error(int status, std::string_view code, std::string_view message) {
    return {status, error_body(code, message), {}};
  }

  static Json parse_body(std::string_view body) {
    try {
      return Json::parse(body);
    } catch (const Json::parse_error&) {
      throw InvalidArgument("request body is not valid JSON");
    }
  }

  static std::string timing_log(const TurnResponse& r) {
    std::string out;
    char buf[64];
    for (const auto& [stage, ms] : r.timings_ms) {
      std::snprintf(buf, sizeof buf, "%s%s=%.1fms", out.empty() ? "" : " ", stage.c_str(), ms);
      out += buf;
    }
    for (const auto& w : r.warnings) out += (out.empty() ? "" : " ") + std::string("warning: ") + w;
    return out;
  }

  ApiResponse turn(std::string_view body, Endpoint endpoint) {
    const auto req = parse_turn_request(parse_body(body), endpoint);
    TurnResponse r;
    switch (endpoint) {
      case Endpoint::respond: r = sherlock_respond(engine_, req); break;
      case Endpoint::autocomplete: r = autocomplete(engine_, req); break;
      case Endpoint::constrained: r = constrained_suggest(engine_, req); break;
    }
    return {200, to_json(r).dump(), timing_log(r)};
  }

  ApiResponse knowledge(std::string_view body) {
    const auto j = parse_body(body);
    if (!j.is_object()) throw InvalidArgument("request body must be a JSON object");
    detail::reject_unknown(j, {"documents", "replace"});
    if (!j.contains("documents") || !j.at("documents").is_array() || j.at("documents").empty()) {
      throw InvalidArgument("documents must be a non-empty list");
    }
    std::vector<SourceText> docs;
    for (const auto& d : j.at("documents")) {
      if (!d.is_object()) throw InvalidArgument("each document must be an object");
      detail::reject_unknown(d, {"text", "source"});
      if (!d.contains("text") || !d.at("text").is_string()) {
        throw InvalidArgument("document text must be a string");
      }
      SourceText doc{d.at("text").get<std::string>(), PassageSource::user_document};
      if (text::trim(doc.text).empty()) throw InvalidArgument("document text is empty");
      if (d.contains("source")) {
        const auto& s = d.at("source");
        const auto src = s.is_string() ? parse_passage_source(s.get<std::string>()) : std::nullopt;
        if (!src) throw InvalidArgument("unknown document source");
        doc.source = *src;
      }
      docs.push_back(std::move(doc));
    }
    const bool replace = flag(j, "replace");
    const auto n = engine_.ingest(std::move(docs), replace);
    return {200, Json{{"passages", n}}.dump(), {}};
  }

  ApiResponse qa(std::string_view body) {
    const auto j = parse_body(body);
    if (!j.is_object()) throw InvalidArgument("request body must be a JSON object");
    detail::reject_unknown(j, {"tsv", "replace"});
    if (!j.contains("tsv") || !j.at("tsv").is_string()) throw InvalidArgument("tsv must be a string");
    auto pairs = parse_qa_tsv(j.at("tsv").get<std::string>());
    if (pairs.empty()) throw InvalidArgument("tsv holds no question/answer pairs");
    const auto n = engine_.load_qa(std::move(pairs), flag(j, "replace"));
    return {200, Json{{"pairs", n}}.dump(), {}};
  }

  static bool flag(const Json& j, const char* name) {
    if (!j.contains(name)) return false;
    if (!j.at(name).is_boolean()) throw InvalidArgument(std::string(name) + " must be a boolean");
    return j.at(name).get<bool>();
  }

  ApiResponse health() const {
    return {200, Json{{"status", "ok"}, {"models", engine_.registry().names()}}.dump(), {}};
  }

  ApiResponse route(std::string_view method, std::string_view path, std::string_view body) {
    struct Route {
      std::string_view path;
      std::string_view method;
    };
    static constexpr Route routes[] = {
        {"/api/health", "GET"},        {"/api/respond", "POST"}, {"/api/autocomplete", "POST"},
        {"/api/constrained", "POST"},  {"/api/knowledge", "POST"}, {"/api/qa", "POST"}};
    for (const auto& r : routes) {
      if (r.path != path) continue;
      if (r.method != method) return error(405, "bad_request", "method not allowed");
      if (path == "/api/health") return health();
      if (path == "/api/respond") return turn(body, Endpoint::respond);
      if (path == "/api/autocomplete") return turn(body, Endpoint::autocomplete);
      if (path == "/api/constrained") return turn(body, Endpoint::constrained);
      if (path == "/api/knowledge") return knowledge(body);
      return qa(body);
    }
    return error(404, "bad_request", "no such endpoint");
  }

  Engine& engine_;
};

}  // namespace kgen
