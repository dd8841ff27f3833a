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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgen/decoding/beam_search.hpp"
#include "kgen/knowledge/document_store.hpp"
#include "kgen/ranking/ranker.hpp"
#include "kgen/style/synonyms.hpp"

namespace kgen {

/// One n-gram model to train at startup. `kind` is "lm" (one sentence per line;
/// tab-separated fields count as separate sentences) or "dialog"
/// (`utterance<TAB>response` per line).
struct ModelSpec {
  std::string name;
  std::string kind = "lm";
  std::vector<std::filesystem::path> corpora;
  int order = 3;
  double delta = 0.1;
};

struct DocumentSpec {
  std::filesystem::path path;
  PassageSource source = PassageSource::user_kb;
};

/// Engine configuration. Relative paths in the file resolve against the file's
/// directory. See README for the full schema.
struct EngineConfig {
  std::vector<ModelSpec> models;
  std::vector<std::string> conversational;
  std::string lm;
  std::string ranking_model;

  DecodeOptions decode{8, 20};
  RankerWeights weights;
  std::size_t repetition_n = 2;
  std::size_t top_n = 5;
  SynonymConfig synonyms;

  std::optional<std::filesystem::path> qa_corpus;
  double qa_threshold = 0.5;

  struct Style {
    bool enabled = false;
    std::filesystem::path stylized_corpus;
    std::filesystem::path neutral_corpus;
    std::filesystem::path lexicon;
    double default_weight = 0.5;
  } style;

  std::optional<std::filesystem::path> vectors;

  struct Knowledge {
    std::vector<DocumentSpec> documents;
    std::optional<std::filesystem::path> search_fixture;
    std::size_t top_k = 3;
    int grounded_order = 2;
    double grounded_delta = 0.1;
  } knowledge;

  struct Integration {
    bool interpolate = false;
    std::vector<double> weights{0.5, 0.5};
    bool prune = false;
    double alpha = 0.5;
    bool latent_interp = false;
    double latent_u = 0.5;
    std::size_t soft_keywords = 3;
  } integration;

  std::uint64_t seed = 0;
  bool timings = true;
  std::string cors_origin = "*";

  static EngineConfig from_json(const nlohmann::json& j, const std::filesystem::path& root);
  static EngineConfig load_file(const std::filesystem::path& path);
};

namespace detail {

inline void allow_keys(const nlohmann::json& j, const std::string& where,
                       std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : j.items()) {
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

template <class T>
void read(const nlohmann::json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

inline std::filesystem::path resolve(const std::filesystem::path& root, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : root / path;
}

inline std::optional<std::filesystem::path> read_path(const nlohmann::json& j, const char* key,
                                                      const std::filesystem::path& root,
                                                      const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  std::string s;
  read(j, key, s, where);
  if (s.empty()) throw ConfigError(where + "." + key + " is empty");
  return resolve(root, s);
}

}  // namespace detail

inline EngineConfig EngineConfig::from_json(const nlohmann::json& j,
                                            const std::filesystem::path& root) {
  using detail::allow_keys;
  using detail::read;
  using detail::read_path;
  EngineConfig c;
  allow_keys(j, "config",
             {"models", "conversational", "lm", "ranking_model", "decoding", "ranker", "synonyms",
              "qa", "style", "vectors", "knowledge", "integration", "seed", "timings", "cors_origin"});

  if (!j.contains("models") || !j.at("models").is_array() || j.at("models").empty()) {
    throw ConfigError("config.models must be a non-empty list");
  }
  for (const auto& m : j.at("models")) {
    allow_keys(m, "model", {"name", "kind", "corpus", "order", "delta"});
    ModelSpec spec;
    read(m, "name", spec.name, "model");
    read(m, "kind", spec.kind, "model");
    read(m, "order", spec.order, "model");
    read(m, "delta", spec.delta, "model");
    if (m.contains("corpus") && m.at("corpus").is_array()) {
      std::vector<std::string> paths;
      read(m, "corpus", paths, "model");
      for (const auto& p : paths) spec.corpora.push_back(detail::resolve(root, p));
    } else if (auto corpus = read_path(m, "corpus", root, "model")) {
      spec.corpora.push_back(*corpus);
    }
    if (spec.name.empty() || spec.corpora.empty()) {
      throw ConfigError("every model needs a name and a corpus");
    }
    if (spec.kind != "lm" && spec.kind != "dialog") {
      throw ConfigError("model '" + spec.name + "' has unknown kind '" + spec.kind + "'");
    }
    c.models.push_back(std::move(spec));
  }
  read(j, "conversational", c.conversational, "config");
  read(j, "lm", c.lm, "config");
  read(j, "ranking_model", c.ranking_model, "config");

  if (j.contains("decoding")) {
    const auto& d = j.at("decoding");
    allow_keys(d, "decoding", {"beam", "max_len"});
    read(d, "beam", c.decode.beam, "decoding");
    read(d, "max_len", c.decode.max_len, "decoding");
  }
  if (j.contains("ranker")) {
    const auto& r = j.at("ranker");
    allow_keys(r, "ranker", {"weights", "repetition_n", "top_n"});
    if (r.contains("weights")) {
      const auto& w = r.at("weights");
      allow_keys(w, "ranker.weights", {"likelihood", "informativeness", "repetition", "style"});
      read(w, "likelihood", c.weights.likelihood, "ranker.weights");
      read(w, "informativeness", c.weights.informativeness, "ranker.weights");
      read(w, "repetition", c.weights.repetition, "ranker.weights");
      read(w, "style", c.weights.style, "ranker.weights");
    }
    read(r, "repetition_n", c.repetition_n, "ranker");
    read(r, "top_n", c.top_n, "ranker");
  }
  if (j.contains("synonyms")) {
    const auto& s = j.at("synonyms");
    allow_keys(s, "synonyms", {"w_dict", "sim_threshold"});
    read(s, "w_dict", c.synonyms.w_dict, "synonyms");
    read(s, "sim_threshold", c.synonyms.sim_threshold, "synonyms");
  }
  if (j.contains("qa")) {
    const auto& q = j.at("qa");
    allow_keys(q, "qa", {"corpus", "threshold"});
    c.qa_corpus = read_path(q, "corpus", root, "qa");
    read(q, "threshold", c.qa_threshold, "qa");
  }
  if (j.contains("style")) {
    const auto& s = j.at("style");
    allow_keys(s, "style",
               {"enabled", "stylized_corpus", "neutral_corpus", "lexicon", "default_weight"});
    read(s, "enabled", c.style.enabled, "style");
    read(s, "default_weight", c.style.default_weight, "style");
    if (auto p = read_path(s, "stylized_corpus", root, "style")) c.style.stylized_corpus = *p;
    if (auto p = read_path(s, "neutral_corpus", root, "style")) c.style.neutral_corpus = *p;
    if (auto p = read_path(s, "lexicon", root, "style")) c.style.lexicon = *p;
  }
  c.vectors = read_path(j, "vectors", root, "config");
  if (j.contains("knowledge")) {
    const auto& k = j.at("knowledge");
    allow_keys(k, "knowledge",
               {"documents", "search_fixture", "top_k", "grounded_order", "grounded_delta"});
    if (k.contains("documents")) {
      if (!k.at("documents").is_array()) throw ConfigError("knowledge.documents must be a list");
      for (const auto& d : k.at("documents")) {
        allow_keys(d, "knowledge document", {"path", "source"});
        DocumentSpec doc;
        auto p = read_path(d, "path", root, "knowledge document");
        if (!p) throw ConfigError("knowledge document needs a path");
        doc.path = *p;
        std::string src = "user_document";
        read(d, "source", src, "knowledge document");
        auto parsed = parse_passage_source(src);
        if (!parsed) throw ConfigError("unknown passage source '" + src + "'");
        doc.source = *parsed;
        c.knowledge.documents.push_back(std::move(doc));
      }
    }
    c.knowledge.search_fixture = read_path(k, "search_fixture", root, "knowledge");
    read(k, "top_k", c.knowledge.top_k, "knowledge");
    read(k, "grounded_order", c.knowledge.grounded_order, "knowledge");
    read(k, "grounded_delta", c.knowledge.grounded_delta, "knowledge");
  }
  if (j.contains("integration")) {
    const auto& i = j.at("integration");
    allow_keys(i, "integration",
               {"interpolate", "weights", "prune", "alpha", "latent_interp", "latent_u",
                "soft_keywords"});
    read(i, "interpolate", c.integration.interpolate, "integration");
    read(i, "weights", c.integration.weights, "integration");
    read(i, "prune", c.integration.prune, "integration");
    read(i, "alpha", c.integration.alpha, "integration");
    read(i, "latent_interp", c.integration.latent_interp, "integration");
    read(i, "latent_u", c.integration.latent_u, "integration");
    read(i, "soft_keywords", c.integration.soft_keywords, "integration");
  }
  read(j, "seed", c.seed, "config");
  read(j, "timings", c.timings, "config");
  read(j, "cors_origin", c.cors_origin, "config");

  if (c.decode.beam < 1 || c.decode.max_len < 1) throw ConfigError("beam and max_len must be >= 1");
  if (c.top_n < 1 || c.repetition_n < 1) throw ConfigError("top_n and repetition_n must be >= 1");
  if (c.knowledge.top_k < 1) throw ConfigError("knowledge.top_k must be >= 1");
  if (c.integration.soft_keywords < 1) throw ConfigError("integration.soft_keywords must be >= 1");
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(c.style.default_weight) || !in_unit(c.integration.latent_u) ||
      !in_unit(c.integration.alpha)) {
    throw ConfigError("style.default_weight, integration.latent_u and integration.alpha must be in [0,1]");
  }
  if (c.integration.weights.size() != 2) {
    throw ConfigError("integration.weights must hold two entries (conversational, grounded)");
  }
  try {
    c.weights.check();
    c.synonyms.check();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

inline EngineConfig EngineConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j, path.parent_path());
}

}  // namespace kgen
