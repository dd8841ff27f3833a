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

#include <cmath>
#include <limits>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "kgen/pipelines/pipelines.hpp"

namespace kgen {

using Json = nlohmann::ordered_json;

/// Which request fields an endpoint accepts.
enum class Endpoint { respond, autocomplete, constrained };

inline constexpr std::size_t kMaxTopN = 100;

namespace detail {

inline void reject_unknown(const Json& j, std::initializer_list<const char*> allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, _] : j.items()) {
    if (!ok.count(k)) throw InvalidArgument("unknown field '" + k + "'");
  }
}

inline std::vector<std::string> string_list(const Json& j, const char* field) {
  if (!j.is_array()) throw InvalidArgument(std::string(field) + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw InvalidArgument(std::string(field) + " must be a list of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

/// JSON has no infinities; a -inf score is sent as the lowest finite double.
inline double finite(double x) {
  if (std::isnan(x)) return 0.0;
  if (std::isinf(x)) return x > 0 ? std::numeric_limits<double>::max() : std::numeric_limits<double>::lowest();
  return x;
}

inline double number(const Json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_number()) {
    throw InvalidArgument(std::string("missing or non-numeric '") + field + "'");
  }
  return j.at(field).get<double>();
}

}  // namespace detail

/// Strict request parsing: unknown fields, wrong types and out-of-range values
/// all throw InvalidArgument.
inline TurnRequest parse_turn_request(const Json& j, Endpoint endpoint) {
  if (!j.is_object()) throw InvalidArgument("request body must be a JSON object");
  if (endpoint == Endpoint::constrained) {
    detail::reject_unknown(j, {"context", "style_weight", "top_n", "sources", "constraints", "mode"});
  } else {
    detail::reject_unknown(j, {"context", "style_weight", "top_n", "sources"});
  }
  TurnRequest req;
  if (!j.contains("context")) throw InvalidArgument("missing field 'context'");
  req.context = detail::string_list(j.at("context"), "context");
  if (endpoint != Endpoint::respond && text::trim(text::join(req.context)).empty()) {
    throw InvalidArgument("context must hold a non-empty document prefix");
  }
  if (j.contains("style_weight")) {
    const auto& s = j.at("style_weight");
    if (!s.is_number()) throw InvalidArgument("style_weight must be a number");
    const double v = s.get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("style_weight must be in [0,1]");
    req.style_weight = v;
  }
  if (j.contains("top_n")) {
    const auto& t = j.at("top_n");
    if (!t.is_number_integer()) throw InvalidArgument("top_n must be an integer");
    const auto v = t.get<long long>();
    if (v < 1 || v > static_cast<long long>(kMaxTopN)) {
      throw InvalidArgument("top_n must be in [1," + std::to_string(kMaxTopN) + "]");
    }
    req.top_n = static_cast<std::size_t>(v);
  }
  if (j.contains("sources")) {
    for (const auto& s : detail::string_list(j.at("sources"), "sources")) {
      const auto src = parse_passage_source(s);
      if (!src) throw InvalidArgument("unknown source '" + s + "'");
      req.sources.insert(*src);
    }
  }
  if (j.contains("constraints")) {
    req.constraints = detail::string_list(j.at("constraints"), "constraints");
    for (const auto& c : req.constraints) {
      if (text::words(c).empty()) throw InvalidArgument("constraint '" + c + "' has no words");
    }
  }
  if (j.contains("mode")) {
    const auto& m = j.at("mode");
    if (!m.is_string()) throw InvalidArgument("mode must be \"hard\" or \"soft\"");
    const auto v = m.get<std::string>();
    if (v == "hard") {
      req.mode = ConstraintMode::hard;
    } else if (v == "soft") {
      req.mode = ConstraintMode::soft;
    } else {
      throw InvalidArgument("mode must be \"hard\" or \"soft\"");
    }
  }
  return req;
}

inline Json to_json(const ScoredHypothesis& s) {
  return {{"text", s.hypothesis.text},
          {"provenance", s.hypothesis.provenance},
          {"scores",
           {{"likelihood", detail::finite(s.scores.likelihood)},
            {"informativeness", detail::finite(s.scores.informativeness)},
            {"repetition", detail::finite(s.scores.repetition)},
            {"style", detail::finite(s.scores.style)}}},
          {"total", detail::finite(s.total)}};
}

inline Json to_json(const KnowledgePassage& p) {
  return {{"text", p.text}, {"source", std::string(to_string(p.source))},
          {"relevance", detail::finite(p.relevance)}};
}

inline Json to_json(const TurnResponse& r) {
  Json hyps = Json::array(), passages = Json::array(), timings = Json::object();
  for (const auto& h : r.hypotheses) hyps.push_back(to_json(h));
  for (const auto& p : r.passages) passages.push_back(to_json(p));
  for (const auto& [stage, ms] : r.timings_ms) timings[stage] = ms;
  return {{"hypotheses", std::move(hyps)},
          {"passages", std::move(passages)},
          {"qa_answer", r.qa_answer ? Json(*r.qa_answer) : Json(nullptr)},
          {"timings_ms", std::move(timings)}};
}

/// Inverse of to_json for the fields the wire format carries.
inline TurnResponse turn_response_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("response must be an object");
  detail::reject_unknown(j, {"hypotheses", "passages", "qa_answer", "timings_ms"});
  TurnResponse r;
  for (const auto& h : j.at("hypotheses")) {
    detail::reject_unknown(h, {"text", "provenance", "scores", "total"});
    ScoredHypothesis s;
    s.hypothesis.text = h.at("text").get<std::string>();
    s.hypothesis.provenance = h.at("provenance").get<std::string>();
    const auto& sc = h.at("scores");
    detail::reject_unknown(sc, {"likelihood", "informativeness", "repetition", "style"});
    s.scores = {detail::number(sc, "likelihood"), detail::number(sc, "informativeness"),
                detail::number(sc, "repetition"), detail::number(sc, "style")};
    s.total = detail::number(h, "total");
    r.hypotheses.push_back(std::move(s));
  }
  for (const auto& p : j.at("passages")) {
    detail::reject_unknown(p, {"text", "source", "relevance"});
    KnowledgePassage kp;
    kp.text = p.at("text").get<std::string>();
    const auto src = parse_passage_source(p.at("source").get<std::string>());
    if (!src) throw InvalidArgument("unknown passage source");
    kp.source = *src;
    kp.relevance = detail::number(p, "relevance");
    r.passages.push_back(std::move(kp));
  }
  const auto& qa = j.at("qa_answer");
  if (!qa.is_null()) r.qa_answer = qa.get<std::string>();
  for (const auto& [stage, ms] : j.at("timings_ms").items()) {
    if (!ms.is_number()) throw InvalidArgument("timings must be numbers");
    r.timings_ms.emplace_back(stage, ms.get<double>());
  }
  return r;
}

inline std::string error_body(std::string_view code, std::string_view message) {
  return Json{{"code", code}, {"message", message.empty() ? "unspecified error" : message}}.dump();
}

}  // namespace kgen
