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

// Acceptance run: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kgen/decoding/grid_beam_search.hpp"
#include "kgen/knowledge/qa.hpp"
#include "kgen/service/api.hpp"
#include "support/oracles.hpp"
#include "support/rest_fixtures.hpp"
#include "support/schema.hpp"
#include "support/workspace.hpp"

using namespace kgen;
using kgen::testing::ScoredSequence;

namespace {

/// Collects failures for one criterion; only the first few are kept verbatim.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (messages_.size() < 3) messages_.push_back(what);
  }
  void note(std::string s) { notes_ = std::move(s); }

  bool passed() const { return failures_ == 0 && checks_ > 0; }
  std::string summary() const {
    std::ostringstream out;
    out << checks_ << " checks";
    if (!notes_.empty()) out << ", " << notes_;
    if (failures_) {
      out << ", " << failures_ << " failed";
      for (const auto& m : messages_) out << "\n       " << m;
    }
    return out.str();
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::vector<std::string> messages_;
  std::string notes_;
};

int failed = 0;

void criterion(const char* name, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("threw: ") + e.what());
  }
  const std::chrono::duration<double> s = std::chrono::steady_clock::now() - start;
  const bool ok = c.passed();
  failed += ok ? 0 : 1;
  std::printf("[%s] %s (%s; %.2fs)\n", ok ? "PASS" : "FAIL", name, c.summary().c_str(), s.count());
  std::fflush(stdout);
}

std::string seq_str(const TokenSequence& s) {
  std::string out;
  for (auto t : s) out += std::to_string(t) + " ";
  return out;
}

/// Decoder output against the sorted, truncated oracle list.
void compare(Check& c, const std::vector<Hypothesis>& got, std::vector<ScoredSequence> want,
             std::size_t beam, const std::string& label) {
  testing::sort_outcomes(want);
  if (want.size() > beam) want.resize(beam);
  c.expect(got.size() == want.size(), label + ": " + std::to_string(got.size()) + " hypotheses, oracle " +
                                          std::to_string(want.size()));
  for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) {
    c.expect(got[i].tokens == want[i].tokens, label + ": rank " + std::to_string(i) + " tokens " +
                                                  seq_str(got[i].tokens) + "vs " + seq_str(want[i].tokens));
    c.expect(std::abs(got[i].log_prob - want[i].log_prob) <= 1e-9,
             label + ": rank " + std::to_string(i) + " score differs");
  }
}

void gbs_satisfaction(Check& c) {
  std::mt19937_64 rng(2024);
  std::size_t hyps = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int inst = 0; inst < 1000; ++inst) {
    const std::size_t words = 2 + rng() % 6;
    auto vocab = testing::word_vocab(words);
    auto model = testing::random_ngram(rng, vocab);
    std::uniform_int_distribution<TokenId> tok(3, static_cast<TokenId>(vocab->size() - 1));
    std::vector<Constraint> cons(1 + rng() % 3);
    std::size_t need = 0;
    for (auto& k : cons) {
      for (std::size_t j = 1 + rng() % 2; j > 0; --j) k.phrase.push_back(tok(rng));
      need += k.phrase.size();
    }
    const DecodeOptions opt{1 + rng() % 6, need + rng() % 5};
    TokenSequence ctx;
    for (std::size_t j = rng() % 3; j > 0; --j) ctx.push_back(tok(rng));
    const auto out = grid_beam_search(*model, ctx, cons, opt);
    c.expect(!out.empty(), "instance " + std::to_string(inst) + " returned nothing");
    for (const auto& h : out) {
      ++hyps;
      for (const auto& k : cons) {
        c.expect(testing::contains_contiguous(h.tokens, k.phrase),
                 "instance " + std::to_string(inst) + ": " + seq_str(h.tokens) + "lacks " + seq_str(k.phrase));
      }
    }
  }
  const std::chrono::duration<double> s = std::chrono::steady_clock::now() - start;
  c.expect(s.count() < 60.0, "took " + std::to_string(s.count()) + "s");
  c.note("1000 instances, " + std::to_string(hyps) + " hypotheses");
}

void decoding_oracle(Check& c) {
  std::mt19937_64 rng(77);
  int models = 0;
  for (int trial = 0; trial < 160; ++trial) {
    // |V| = 4 (one word) up to max_len 4, |V| = 5 up to max_len 3
    const std::size_t words = trial % 2 == 0 ? 1 : 2;
    auto vocab = testing::word_vocab(words);
    auto model = testing::random_ngram(rng, vocab);
    const std::size_t L = 1 + rng() % (words == 1 ? 4 : 3);
    const std::size_t beam = static_cast<std::size_t>(std::pow(vocab->size(), L));
    TokenSequence ctx;
    for (std::size_t j = rng() % 2; j > 0; --j) ctx.push_back(static_cast<TokenId>(3 + rng() % words));
    auto step = [&](const TokenSequence& p) { return model->next_step(p).probs(); };
    const auto all = testing::enumerate_outcomes(step, vocab->size(), ctx, L);
    const std::string label = "model " + std::to_string(trial);
    compare(c, beam_search(*model, ctx, {beam, L}), all, beam, label + " beam");

    std::vector<Constraint> cons{{{static_cast<TokenId>(3 + rng() % words)}}};
    if (L >= 2 && rng() % 2) cons.push_back({{static_cast<TokenId>(3 + rng() % words)}});
    std::vector<TokenSequence> phrases;
    for (const auto& k : cons) phrases.push_back(k.phrase);
    auto filtered = all;
    std::erase_if(filtered, [&](const auto& o) { return !testing::has_disjoint_placement(o.tokens, phrases); });
    compare(c, grid_beam_search(*model, ctx, cons, {beam, L}), filtered, beam, label + " gbs");
    ++models;
  }
  c.note(std::to_string(models) + " models");
}

void token_interpolation(Check& c) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t v = 2 + rng() % 60, k = 1 + rng() % 4;
    std::vector<TokenDistribution> dists;
    for (std::size_t m = 0; m < k; ++m) {
      std::vector<double> p(v);
      double s = 0.0;
      for (auto& x : p) s += x = (rng() % 5 == 0) ? 0.0 : u(rng);
      if (s == 0.0) p[0] = s = 1.0;
      for (auto& x : p) x /= s;
      dists.emplace_back(std::move(p));
    }
    std::vector<double> w(k);
    double ws = 0.0;
    for (auto& x : w) ws += x = u(rng);
    for (auto& x : w) x /= ws;
    const auto mixed = interpolate_distributions(dists, w);
    c.expect(mixed.valid(), "case " + std::to_string(trial) + " not normalized");
    if (k >= 2) {
      std::vector<double> one(k, 0.0);
      one[0] = 1.0;
      c.expect(interpolate_distributions(dists, one) == dists[0], "weights [1,0,...] changed the first model");
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    auto vocab = testing::word_vocab(2 + rng() % 4);
    GeneratorPtr m = testing::random_ngram(rng, vocab);
    const DecodeOptions opt{1 + rng() % 6, 1 + rng() % 7};
    const double a = u(rng);
    const std::vector<GeneratorPtr> dup{m, m};
    auto mixed = interpolated_beam_search(dup, std::vector<double>{a, 1.0 - a}, {}, opt);
    for (auto& h : mixed) h.provenance = m->name();
    c.expect(mixed == beam_search(*m, {}, opt), "duplicate-model decode differs at weight " + std::to_string(a));
  }
  c.note("10000 mixtures, 100 duplicate-model decodes");
}

void similarity_formula(Check& c) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    WordVectors wv;
    const std::size_t dim = 1 + rng() % 8;
    std::vector<double> a(dim), b(dim);
    for (auto& x : a) x = g(rng);
    for (auto& x : b) x = trial % 7 == 0 ? 0.0 : g(rng);
    wv.add("a", a);
    wv.add("b", b);
    StyleLexicon lex;
    const bool listed = rng() % 2;
    if (listed) lex.add("a", "b");
    const double w = u(rng);
    const double s = word_similarity("a", "b", wv, lex, {w, 0.6});
    c.expect(s >= -1.0 && s <= 1.0, "similarity " + std::to_string(s) + " out of range");
    c.expect(word_similarity("a", "b", wv, lex, {0.0, 0.6}) == cosine(a, b), "w_dict 0 is not the cosine");
    c.expect(word_similarity("a", "b", wv, lex, {1.0, 0.6}) == (listed ? 1.0 : 0.0),
             "w_dict 1 is not the dictionary indicator");
  }
  WordVectors wv;
  wv.add("cookie", {1.0, 0.0});
  wv.add("biscuit", {0.0, 1.0});
  StyleLexicon lex;
  lex.add("cookie", "biscuit");
  c.expect(word_similarity("cookie", "biscuit", wv, lex, {0.5, 0.6}) == 0.5, "orthogonal + dictionary hit is not 0.5");
}

void latent_identities(Check& c) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> x(-100.0, 100.0), u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 1 + rng() % 32;
    LatentVector a(d), b(d);
    for (auto& v : a) v = x(rng);
    for (auto& v : b) v = x(rng);
    const double s = u(rng), t = u(rng);
    const auto at1 = interpolate_latent(a, b, 1.0), at0 = interpolate_latent(a, b, 0.0);
    const auto lhs = interpolate_latent(interpolate_latent(a, b, s), b, t);
    const auto rhs = interpolate_latent(a, b, s * t);
    const auto mid = interpolate_latent(a, b, s);
    for (std::size_t i = 0; i < d; ++i) {
      c.expect(std::abs(at1[i] - a[i]) <= 1e-12, "u=1 endpoint");
      c.expect(std::abs(at0[i] - b[i]) <= 1e-12, "u=0 endpoint");
      c.expect(std::abs(lhs[i] - rhs[i]) <= 1e-12 * (1.0 + std::abs(rhs[i])), "composition");
      c.expect(std::abs(mid[i] - (s * a[i] + (1.0 - s) * b[i])) <= 1e-12 * (1.0 + std::abs(mid[i])), "affine form");
    }
  }
  // 100 sentences over random vectors; every member must retrieve itself
  auto wv = std::make_shared<WordVectors>();
  std::normal_distribution<double> g;
  for (int w = 0; w < 300; ++w) {
    std::vector<double> v(16);
    for (auto& e : v) e = g(rng);
    wv->add("w" + std::to_string(w), v);
  }
  std::vector<std::string> corpus;
  std::set<std::string> seen;
  while (corpus.size() < 100) {
    std::string s;
    for (std::size_t j = 3 + rng() % 6; j > 0; --j) s += "w" + std::to_string(rng() % 300) + " ";
    if (seen.insert(s).second) corpus.push_back(s);
  }
  const BaselineCodec codec(corpus, wv);
  std::set<LatentVector> encodings;
  for (const auto& s : corpus) encodings.insert(codec.encode(s));
  c.expect(encodings.size() == corpus.size(), "synthetic encodings are not distinct");
  const SentenceIndex index(corpus, codec);
  for (const auto& s : corpus) {
    for (double uu : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      c.expect(soft_retrieval(s, index, codec, uu).text == s, "'" + s + "' did not retrieve itself");
    }
  }
  c.note("2000 vector pairs, 100-sentence corpus");
}

struct RankWorld {
  VocabularyPtr vocab = std::make_shared<const Vocabulary>(
      std::vector<std::string>{"holmes", "watson", "smokes", "a", "pipe", "the", "case", "moriarty", "tea"});
  NGramModel lm = train_ngram({"holmes smokes a pipe", "watson smokes a pipe", "the case"}, 2, 0.1, vocab, "lm");
  DocumentStore store = ingest({{"holmes smokes\n\nwatson writes\n\nthe case\n\nthe pipe", PassageSource::user_kb}});
  StyleClassifier clf{{{"pipe", 1.5}, {"case", -0.5}, {"tea", 0.7}}, 0.1};

  std::vector<Hypothesis> random_set(std::mt19937_64& rng) const {
    std::vector<Hypothesis> out;
    for (std::size_t i = 1 + rng() % 15; i > 0; --i) {
      std::string s;
      for (std::size_t j = 1 + rng() % 7; j > 0; --j) s += vocab->token(static_cast<TokenId>(3 + rng() % 9)) + " ";
      out.push_back(make_hypothesis(tokenize(s, *vocab), -static_cast<double>(rng() % 20), "lm", *vocab));
    }
    return out;
  }
};

void ranker(Check& c) {
  c.expect(repetition_score(std::vector<std::string>{"a", "a", "a", "a"}, 2) == 1.0 / 3.0,
           "repetition of 'a a a a' is not 1/3");
  RankWorld w;
  const RankingContext ctx{&w.lm, &w.store, &w.clf, {}, 2};
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> wd(0.0, 3.0), scale(0.01, 100.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto hyps = w.random_set(rng);
    const RankerWeights base{wd(rng), wd(rng), wd(rng), wd(rng)};
    const double k = scale(rng);
    const RankerWeights scaled{k * base.likelihood, k * base.informativeness, k * base.repetition, k * base.style};
    const auto a = rank(hyps, base, ctx, 100), b = rank(hyps, scaled, ctx, 100);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].hypothesis == b[i].hypothesis;
    c.expect(same, "set " + std::to_string(trial) + " reordered by scale " + std::to_string(k));

    std::vector<Hypothesis> again;
    for (const auto& s : a) again.push_back(s.hypothesis);
    const auto twice = rank(again, base, ctx, 100);
    bool idem = twice.size() == a.size();
    for (std::size_t i = 0; idem && i < a.size(); ++i) {
      idem = twice[i].hypothesis == a[i].hypothesis && twice[i].total == a[i].total;
    }
    c.expect(idem, "set " + std::to_string(trial) + " changed when re-ranked");
  }
  c.note("1000 candidate sets");
}

std::vector<std::string> synthetic_corpus(std::mt19937_64& rng, const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s;
    for (std::size_t j = 3 + rng() % 8; j > 0; --j) s += prefix + std::to_string(rng() % 40) + " ";
    out.push_back(s);
  }
  return out;
}

void style_classifier(Check& c) {
  std::mt19937_64 rng(19);
  const auto stylized = synthetic_corpus(rng, "brit", 200), neutral = synthetic_corpus(rng, "plain", 200);
  const auto clf = train_style_classifier(stylized, neutral);
  std::size_t correct = 0;
  for (const auto& s : stylized) correct += clf.intensity(s) > 0.5;
  for (const auto& s : neutral) correct += clf.intensity(s) < 0.5;
  const double acc = static_cast<double>(correct) / 400.0;
  c.expect(acc >= 0.99, "training accuracy " + std::to_string(acc));
  const auto same = synthetic_corpus(rng, "w", 200);
  const auto flat = train_style_classifier(same, same);
  double worst = 0.0;
  for (const auto& s : same) worst = std::max(worst, std::abs(flat.intensity(s) - 0.5));
  c.expect(worst <= 0.05, "identical corpora drift " + std::to_string(worst));
  char buf[96];
  std::snprintf(buf, sizeof buf, "accuracy %.4f, max |intensity-0.5| %.4f", acc, worst);
  c.note(buf);
}

void knowledge_properties(Check& c) {
  std::mt19937_64 rng(23);
  const std::vector<std::string> words{"holmes", "watson", "violin", "london", "the", "of",
                                       "baker", "street", "moriarty", "falls"};
  auto sentence = [&] {
    std::string s;
    for (std::size_t i = 1 + rng() % 12; i > 0; --i) s += words[rng() % words.size()] + " ";
    return s;
  };
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<SourceText> docs;
    for (std::size_t i = rng() % 12; i > 0; --i) docs.push_back({sentence(), PassageSource::user_kb});
    const auto store = ingest(docs);
    auto in = store.passages();
    if (trial % 4 == 0) {
      for (std::size_t i = 0; i < in.size(); i += 2) in[i].source_rank = static_cast<int>(in.size() - i);
    }
    const auto out = rank_passages(sentence(), in, store);
    auto key = [](const KnowledgePassage& p) { return p.text + "#" + std::to_string(p.source_rank.value_or(-1)); };
    std::multiset<std::string> a, b;
    for (const auto& p : in) a.insert(key(p));
    for (const auto& p : out) b.insert(key(p));
    c.expect(a == b, "rank_passages is not a permutation");
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& p : out) {
      if (p.source_rank) continue;
      c.expect(p.relevance <= prev, "relevance not descending");
      prev = p.relevance;
    }
  }
  const std::vector<QAPair> qa{{"what is your name", "Sherlock Holmes"}, {"where do you live", "221B Baker Street"}};
  c.expect(qa_retrieve("where do you live", qa, 1.0) == std::optional<std::string>("221B Baker Street"), "qa exact match");
  c.expect(qa_retrieve("What is your NAME?", qa, 1.0) == std::optional<std::string>("Sherlock Holmes"),
           "qa exact match after normalization");
  for (double th : {1e-9, 0.1, 0.5, 1.0}) {
    c.expect(!qa_retrieve("zebra crossing", qa, th).has_value(), "qa zero overlap answered");
  }

  const std::vector<std::string> pieces{"Holmes", "the", "Baker", "street", ",", ".", "of", "London's",
                                        "  ", "violin", "\n", "and", "WATSON", "-", "'tis", "221b", "a"};
  const auto store = ingest({{"Holmes played the violin.\n\nWatson wrote.", PassageSource::user_kb}});
  std::size_t phrases = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::string s;
    for (std::size_t i = rng() % 30; i > 0; --i) {
      s += pieces[rng() % pieces.size()];
      if (rng() % 3) s += ' ';
    }
    const auto lowered = text::lower(s);
    for (const auto& k : extract_keyphrases(s, store, 8)) {
      ++phrases;
      c.expect(lowered.find(k) != std::string::npos, "'" + k + "' not in '" + s + "'");
    }
  }
  c.note("500 stores, " + std::to_string(phrases) + " fuzzed keyphrases");
}

TurnRequest request(std::string context) {
  TurnRequest r;
  r.context = {std::move(context)};
  return r;
}

void end_to_end(Check& c) {
  auto quiet = [](nlohmann::json& j) { j["timings"] = false; };
  const auto a = testing::demo_engine(quiet), b = testing::demo_engine(quiet);
  const std::vector<std::string> chats{"hello", "where do you live", "what is your name", "tell me about moriarty"};
  const std::vector<std::string> prefixes{"The police inspector arrived", "Holmes played the violin",
                                          "It was a quiet evening and"};
  for (const auto& q : chats) {
    c.expect(to_json(sherlock_respond(*a, request(q))).dump() == to_json(sherlock_respond(*b, request(q))).dump(),
             "respond differs for '" + q + "'");
  }
  for (const auto& p : prefixes) {
    c.expect(to_json(autocomplete(*a, request(p))).dump() == to_json(autocomplete(*b, request(p))).dump(),
             "autocomplete differs for '" + p + "'");
  }
  double worst = 0.0;
  auto timed = [&](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = fn();
    const std::chrono::duration<double> s = std::chrono::steady_clock::now() - start;
    worst = std::max(worst, s.count());
    c.expect(!r.hypotheses.empty(), "a turn produced no hypotheses");
  };
  for (const auto& q : chats) timed([&] { return sherlock_respond(*a, request(q)); });
  for (const auto& p : prefixes) {
    timed([&] { return autocomplete(*a, request(p)); });
    auto req = request(p);
    req.constraints = {"violin"};
    timed([&] { return constrained_suggest(*a, req); });
  }
  c.expect(worst < 2.0, "slowest turn " + std::to_string(worst) + "s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "slowest turn %.3fs", worst);
  c.note(buf);
}

void rest_contract(Check& c) {
  const auto engine = testing::demo_engine();
  Api api(*engine);
  auto valid = [&](const char* schema, const std::string& body, const std::string& what) {
    const auto errors = testing::schema_errors(schema, nlohmann::json::parse(body));
    c.expect(errors.empty(), what + ": " + (errors.empty() ? "" : errors.front()));
  };
  auto ok = [&](const char* method, const char* path, const std::string& body, const char* schema) {
    const auto r = api.handle(method, path, body);
    c.expect(r.status == 200, std::string(path) + " returned " + std::to_string(r.status) + ": " + r.body);
    valid(schema, r.body, path);
    return Json::parse(r.body);
  };
  ok("GET", "/api/health", "", "health.schema.json");
  ok("POST", "/api/respond", R"({"context":["hello"],"top_n":3})", "turn_response.schema.json");
  ok("POST", "/api/respond", R"({"context":["hello","where do you live"],"style_weight":1,"sources":["user_kb"]})",
     "turn_response.schema.json");
  ok("POST", "/api/autocomplete", R"({"context":["The police inspector arrived"]})", "turn_response.schema.json");
  ok("POST", "/api/constrained", R"({"context":["It was late"],"constraints":["violin"]})", "turn_response.schema.json");
  ok("POST", "/api/constrained", R"({"context":["It was late"],"constraints":["violin"],"mode":"soft"})",
     "turn_response.schema.json");
  ok("POST", "/api/qa", R"({"tsv":"what is your dog called\tToby.\n"})", "count_response.schema.json");

  const auto& table = testing::bad_requests();
  c.expect(table.size() >= 20, "fewer than 20 bad-request fixtures");
  for (const auto& t : table) {
    const auto r = api.handle("POST", t.path, t.body);
    c.expect(r.status == t.status, std::string(t.body) + " returned " + std::to_string(r.status));
    valid("error.schema.json", r.body, t.body);
    c.expect(Json::parse(r.body)["code"] == t.code, std::string(t.body) + " gave code " + r.body);
  }

  const std::string fact = "The zeppelin landed on the roof of the Diogenes Club at dawn.";
  ok("POST", "/api/knowledge", Json{{"documents", {{{"text", fact}}}}}.dump(), "count_response.schema.json");
  const auto j = ok("POST", "/api/respond", R"({"context":["where did the zeppelin land"]})", "turn_response.schema.json");
  bool cited = false;
  for (const auto& p : j["passages"]) cited = cited || p["text"] == fact;
  c.expect(cited, "ingested passage not cited in the next turn");
  c.note(std::to_string(table.size()) + " bad-request fixtures");
}

}  // namespace

int main() {
  criterion("GBS constraint satisfaction", gbs_satisfaction);
  criterion("Decoding oracle equivalence", decoding_oracle);
  criterion("Token interpolation", token_interpolation);
  criterion("Synonym similarity formula", similarity_formula);
  criterion("Latent interpolation and soft_retrieval fixed point", latent_identities);
  criterion("Ranker", ranker);
  criterion("Style classifier", style_classifier);
  criterion("Knowledge properties", knowledge_properties);
  criterion("End-to-end determinism and latency", end_to_end);
  criterion("REST contract", rest_contract);
  std::printf("%s: %d criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
