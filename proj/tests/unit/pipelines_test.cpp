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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <thread>

#include "kgen/service/json_codec.hpp"
#include "support/workspace.hpp"

using namespace kgen;
using kgen::testing::TempDir;
using nlohmann::json;

namespace {

const char* kDialog =
    "hello\tgood morning to you .\n"
    "hello\tgood evening , sir .\n"
    "who are you\ti am the night porter .\n"
    "where is the station\tthe station is down the road .\n";

const char* kLm =
    "the train left the station at noon .\n"
    "the porter carried the bags to the train .\n"
    "the night was cold and dark .\n";

/// A dialog model and an LM with every optional stage off.
struct MiniWorld {
  TempDir dir;
  json cfg;

  MiniWorld() {
    dir.write("dialog.tsv", kDialog);
    dir.write("lm.txt", kLm);
    cfg = {{"models",
            {{{"name", "porter"}, {"kind", "dialog"}, {"corpus", "dialog.tsv"}, {"order", 3}, {"delta", 0.01}},
             {{"name", "lm"}, {"kind", "lm"}, {"corpus", "lm.txt"}, {"order", 2}, {"delta", 0.01}}}},
           {"decoding", {{"beam", 4}, {"max_len", 10}}},
           {"timings", false}};
  }

  std::unique_ptr<Engine> engine() const {
    return std::make_unique<Engine>(EngineConfig::from_json(cfg, dir.path()));
  }
};

TurnRequest turn(std::vector<std::string> context, std::size_t top_n = 100) {
  TurnRequest r;
  r.context = std::move(context);
  r.top_n = top_n;
  return r;
}

std::set<std::string> provenances(const TurnResponse& r) {
  std::set<std::string> out;
  for (const auto& h : r.hypotheses) out.insert(h.hypothesis.provenance);
  return out;
}

bool has_word(const std::string& text, const std::string& word) {
  const auto ws = text::words(text);
  return std::find(ws.begin(), ws.end(), word) != ws.end();
}

bool contains_phrase(const std::string& text, const std::string& phrase) {
  const auto ws = text::words(text);
  const auto ph = text::words(phrase);
  return std::search(ws.begin(), ws.end(), ph.begin(), ph.end()) != ws.end();
}

std::string dump(const TurnResponse& r) { return to_json(r).dump(); }

/// Shared read-only demo engine with timings off so responses are comparable.
class DemoPipeline : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    engine_ = kgen::testing::demo_engine([](json& j) { j["timings"] = false; }).release();
  }
  static void TearDownTestSuite() {
    delete engine_;
    engine_ = nullptr;
  }
  static const Engine& engine() { return *engine_; }

  static Engine* engine_;
};
Engine* DemoPipeline::engine_ = nullptr;

}  // namespace

TEST(EngineConfig, RejectsUnknownKeys) {
  MiniWorld w;
  w.cfg["beam_width"] = 3;
  EXPECT_THROW(w.engine(), ConfigError);
  MiniWorld w2;
  w2.cfg["decoding"]["temperature"] = 1.0;
  EXPECT_THROW(w2.engine(), ConfigError);
}

TEST(EngineConfig, MissingCorpusIsConfigError) {
  MiniWorld w;
  w.cfg["models"][1]["corpus"] = "nowhere.txt";
  EXPECT_THROW(w.engine(), ConfigError);
}

TEST(EngineConfig, UnknownModelReferences) {
  MiniWorld w;
  w.cfg["conversational"] = {"ghost"};
  EXPECT_THROW(w.engine(), ConfigError);
  MiniWorld w2;
  w2.cfg["ranking_model"] = "ghost";
  EXPECT_THROW(w2.engine(), ConfigError);
}

TEST(EngineConfig, StyleNeedsItsAssets) {
  MiniWorld w;
  w.cfg["style"] = {{"enabled", true}};
  EXPECT_THROW(w.engine(), ConfigError);
  MiniWorld w2;
  w2.cfg["integration"] = {{"latent_interp", true}};
  EXPECT_THROW(w2.engine(), ConfigError);
}

TEST(EngineConfig, RangeAndTypeChecks) {
  for (auto edit : std::vector<std::function<void(json&)>>{
           [](json& j) { j["models"] = json::array(); },
           [](json& j) { j["decoding"]["beam"] = 0; },
           [](json& j) { j["decoding"]["beam"] = "wide"; },
           [](json& j) { j["style"] = {{"default_weight", 1.5}}; },
           [](json& j) { j["integration"] = {{"weights", {1.0}}}; },
           [](json& j) { j["ranker"] = {{"weights", {{"style", -1.0}}}}; },
           [](json& j) { j["models"][0]["kind"] = "translator"; },
           [](json& j) { j["knowledge"] = {{"documents", {{{"path", "a.txt"}, {"source", "gossip"}}}}}; },
       }) {
    MiniWorld w;
    edit(w.cfg);
    EXPECT_THROW(w.engine(), ConfigError) << w.cfg.dump();
  }
}

TEST(EngineConfig, DefaultsPickModelsByKind) {
  MiniWorld w;
  const auto e = w.engine();
  EXPECT_EQ(e->config().conversational, std::vector<std::string>{"porter"});
  EXPECT_EQ(e->config().lm, "lm");
  EXPECT_EQ(e->config().ranking_model, "lm");
  EXPECT_TRUE(e->is_dialog("porter"));
  EXPECT_FALSE(e->is_dialog("lm"));
}

TEST(EngineConfig, LoadFileResolvesRelativePaths) {
  MiniWorld w;
  const auto path = w.dir.write("config.json", w.cfg.dump());
  const auto e = Engine::load(path);
  EXPECT_EQ(e->registry().names().size(), 2u);
  EXPECT_THROW(Engine::load(w.dir.path() / "absent.json"), ConfigError);
  const auto bad = w.dir.write("bad.json", "{not json");
  EXPECT_THROW(Engine::load(bad), ConfigError);
}

TEST(Engine, DialogContextUsesKnownKeyword) {
  MiniWorld w;
  const auto e = w.engine();
  const TokenId sep = e->vocab()->id(kTurnSeparator);
  EXPECT_EQ(e->context_for("porter", "say, where is the station", ""),
            (TokenSequence{e->vocab()->id("station"), sep}));
  EXPECT_EQ(e->context_for("porter", "zzz qqq", ""), TokenSequence{sep});
  EXPECT_EQ(e->context_for("lm", "", "It was late. the train"), e->word_tokens("train"));
  EXPECT_EQ(e->context_for("lm", "", "the porter"), e->word_tokens("porter"));
  EXPECT_TRUE(e->context_for("lm", "", "the zebra").empty()) << "unseen tails are dropped";
  EXPECT_TRUE(e->context_for("lm", "", "It was late.").empty());
}

TEST(SherlockRespond, AllOptionalStagesOffGivesBeamSearchOnly) {
  MiniWorld w;
  const auto e = w.engine();
  const auto r = sherlock_respond(*e, turn({"hello"}));
  const auto beams = beam_search(*e->registry().get("porter"), e->context_for("porter", "hello", ""),
                                 e->config().decode);
  std::set<std::string> expected;
  for (const auto& h : beams) {
    if (!text::trim(h.text).empty() && h.text.find("<unk>") == std::string::npos) expected.insert(h.text);
  }
  std::set<std::string> got;
  for (const auto& h : r.hypotheses) got.insert(h.hypothesis.text);
  EXPECT_EQ(got, expected);
  EXPECT_EQ(provenances(r), std::set<std::string>{"porter"});
  EXPECT_TRUE(r.passages.empty());
  EXPECT_FALSE(r.qa_answer);
  EXPECT_TRUE(r.timings_ms.empty());
}

TEST(SherlockRespond, ExactQaMatchIsSurfacedAndRanked) {
  MiniWorld w;
  w.dir.write("qa.tsv", "who are you\tThe night porter of this station.\n");
  w.cfg["qa"] = {{"corpus", "qa.tsv"}, {"threshold", 0.9}};
  const auto e = w.engine();
  const auto r = sherlock_respond(*e, turn({"hello", "who are you"}));
  ASSERT_TRUE(r.qa_answer);
  EXPECT_EQ(*r.qa_answer, "The night porter of this station.");
  EXPECT_TRUE(provenances(r).count("qa"));
  EXPECT_FALSE(sherlock_respond(*e, turn({"hello"})).qa_answer);
}

TEST(SherlockRespond, SeededPassageYieldsGroundedHypothesis) {
  MiniWorld w;
  w.dir.write("timetable.txt",
              "The last train to York leaves the station at midnight.\n\n"
              "Porters wear blue caps.");
  w.cfg["knowledge"] = {{"documents", {{{"path", "timetable.txt"}}}}};
  const auto e = w.engine();
  const auto r = sherlock_respond(*e, turn({"when does the last train to york leave"}));
  ASSERT_FALSE(r.passages.empty());
  EXPECT_EQ(r.passages.front().text, "The last train to York leaves the station at midnight.");
  bool grounded = false;
  for (const auto& h : r.hypotheses) {
    if (h.hypothesis.provenance == "grounded" && has_word(h.hypothesis.text, "midnight")) grounded = true;
  }
  EXPECT_TRUE(grounded);
}

TEST(SherlockRespond, TopNAndOrdering) {
  const MiniWorld w;
  const auto e = w.engine();
  const auto r = sherlock_respond(*e, turn({"hello"}, 2));
  EXPECT_LE(r.hypotheses.size(), 2u);
  const auto all = sherlock_respond(*e, turn({"hello"}));
  for (std::size_t i = 1; i < all.hypotheses.size(); ++i) {
    EXPECT_GE(all.hypotheses[i - 1].total, all.hypotheses[i].total);
  }
}

TEST(SherlockRespond, EmptyContextStillAnswers) {
  const MiniWorld w;
  const auto e = w.engine();
  EXPECT_NO_THROW(sherlock_respond(*e, turn({})));
}

TEST(Autocomplete, KnowledgeOffGivesLmOnly) {
  const MiniWorld w;
  const auto e = w.engine();
  const auto r = autocomplete(*e, turn({"The night"}));
  ASSERT_FALSE(r.hypotheses.empty());
  EXPECT_EQ(provenances(r), std::set<std::string>{"lm"});
  EXPECT_TRUE(r.passages.empty());
}

TEST(Autocomplete, RejectsBlankPrefix) {
  const MiniWorld w;
  const auto e = w.engine();
  EXPECT_THROW(autocomplete(*e, turn({"   "})), InvalidArgument);
  EXPECT_THROW(autocomplete(*e, turn({})), InvalidArgument);
}

TEST(Autocomplete, LatentEndpointDecodesTopLmHypothesis) {
  const auto e = kgen::testing::demo_engine([](json& j) {
    j["integration"]["latent_u"] = 1.0;
    j["style"]["enabled"] = false;
    j["timings"] = false;
  });
  const std::string prefix = "Holmes took out his violin";
  const auto r = autocomplete(*e, turn({prefix}));
  const auto lm_hyps = beam_search(*e->lm(), e->context_for(e->config().lm, "", prefix), e->config().decode);
  ASSERT_FALSE(lm_hyps.empty());
  const auto expected = e->codec()->decode(e->codec()->encode(lm_hyps.front().text));
  bool found = false;
  for (const auto& h : r.hypotheses) {
    if (h.hypothesis.provenance == "latent_interp") {
      found = true;
      EXPECT_EQ(h.hypothesis.text, expected);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Settle, ValidatesRequestRanges) {
  const MiniWorld w;
  const auto e = w.engine();
  auto r = turn({"hello"});
  r.style_weight = 1.5;
  EXPECT_THROW(sherlock_respond(*e, r), InvalidArgument);
  r.style_weight = std::nullopt;
  r.top_n = 0;
  EXPECT_THROW(sherlock_respond(*e, r), InvalidArgument);
  EXPECT_THROW(sherlock_respond(*e, turn({std::string(20001, 'a')})), InvalidArgument);
}

TEST_F(DemoPipeline, HardConstraintsAppearInEveryHypothesis) {
  for (const auto& constraints : std::vector<std::vector<std::string>>{
           {"violin"}, {"baker street"}, {"letter", "window"}}) {
    auto req = turn({"It was a quiet evening and"});
    req.constraints = constraints;
    req.style_weight = 0.0;
    const auto r = constrained_suggest(engine(), req);
    ASSERT_FALSE(r.hypotheses.empty());
    for (const auto& h : r.hypotheses) {
      EXPECT_EQ(h.hypothesis.provenance, "gbs");
      for (const auto& c : constraints) {
        EXPECT_TRUE(contains_phrase(h.hypothesis.text, c))
            << h.hypothesis.text << " lacks " << c;
      }
    }
  }
}

TEST_F(DemoPipeline, KeyphraseConstraintFromTopPassage) {
  auto req = turn({"Holmes played the violin"});
  const auto plain = autocomplete(engine(), req);
  ASSERT_FALSE(plain.passages.empty());
  const auto phrases = extract_keyphrases(plain.passages.front().text, engine().knowledge()->store, 1);
  ASSERT_FALSE(phrases.empty());
  req.constraints = {phrases.front()};
  req.style_weight = 0.0;
  const auto r = constrained_suggest(engine(), req);
  ASSERT_FALSE(r.hypotheses.empty());
  for (const auto& h : r.hypotheses) {
    EXPECT_TRUE(contains_phrase(h.hypothesis.text, phrases.front()))
        << h.hypothesis.text;
  }
}

TEST_F(DemoPipeline, StyledConstraintUsesStylizedSynonym) {
  auto req = turn({"For tea we had"});
  req.constraints = {"cookie"};
  req.style_weight = 1.0;
  const auto styled = constrained_suggest(engine(), req);
  ASSERT_FALSE(styled.hypotheses.empty());
  for (const auto& h : styled.hypotheses) {
    EXPECT_TRUE(has_word(h.hypothesis.text, "biscuit")) << h.hypothesis.text;
    EXPECT_FALSE(has_word(h.hypothesis.text, "cookie")) << h.hypothesis.text;
  }
  req.style_weight = 0.0;
  for (const auto& h : constrained_suggest(engine(), req).hypotheses) {
    EXPECT_TRUE(has_word(h.hypothesis.text, "cookie")) << h.hypothesis.text;
  }
}

TEST_F(DemoPipeline, EmptyConstraintsMatchAutocomplete) {
  auto req = turn({"The inspector arrived"});
  req.mode = ConstraintMode::hard;
  EXPECT_EQ(dump(constrained_suggest(engine(), req)), dump(autocomplete(engine(), req)));
  req.mode = ConstraintMode::soft;
  EXPECT_EQ(dump(constrained_suggest(engine(), req)), dump(autocomplete(engine(), req)));
}

TEST_F(DemoPipeline, InfeasibleHardConstraints) {
  auto req = turn({"The inspector arrived"});
  req.constraints = {"xylophonequux"};
  EXPECT_THROW(constrained_suggest(engine(), req), InfeasibleConstraints);
  std::string long_phrase;
  for (int i = 0; i < 25; ++i) long_phrase += "the ";
  req.constraints = {long_phrase};
  EXPECT_THROW(constrained_suggest(engine(), req), InfeasibleConstraints);
  req.constraints = {"!!"};
  EXPECT_THROW(constrained_suggest(engine(), req), InvalidArgument);
}

TEST_F(DemoPipeline, SoftModeAddsLabelledStandIn) {
  auto req = turn({"The inspector arrived"});
  req.constraints = {"violin music"};
  req.mode = ConstraintMode::soft;
  const auto r = constrained_suggest(engine(), req);
  EXPECT_TRUE(provenances(r).count("soft_constraint"));
  EXPECT_FALSE(provenances(r).count("gbs"));
}

TEST_F(DemoPipeline, ProvenanceComesFromClosedSet) {
  const auto names = engine().registry().names();
  const std::set<std::string> fixed{"grounded", "qa", "soft_edit", "soft_retrieval",
                                    "latent_interp", "gbs", "soft_constraint"};
  auto check = [&](const TurnResponse& r) {
    for (const auto& h : r.hypotheses) {
      const auto& p = h.hypothesis.provenance;
      const bool ok = fixed.count(p) || std::find(names.begin(), names.end(), p) != names.end() ||
                      (p.rfind("interp(", 0) == 0 && p.back() == ')');
      EXPECT_TRUE(ok) << p;
    }
  };
  for (double s : {0.0, 0.5, 1.0}) {
    auto req = turn({"hello", "where do you live"});
    req.style_weight = s;
    check(sherlock_respond(engine(), req));
    req.context = {"Holmes played the violin"};
    check(autocomplete(engine(), req));
    req.constraints = {"violin"};
    check(constrained_suggest(engine(), req));
    req.mode = ConstraintMode::soft;
    check(constrained_suggest(engine(), req));
  }
}

TEST_F(DemoPipeline, ResponsesAreSortedAndStyleOptional) {
  auto req = turn({"who are you"});
  req.style_weight = 0.0;
  const auto plain = sherlock_respond(engine(), req);
  for (const auto& h : plain.hypotheses) {
    EXPECT_NE(h.hypothesis.provenance, "soft_edit");
    EXPECT_NE(h.hypothesis.provenance, "soft_retrieval");
    EXPECT_EQ(h.scores.style, 0.0);
  }
  req.style_weight = 0.8;
  const auto styled = sherlock_respond(engine(), req);
  const auto p = provenances(styled);
  EXPECT_TRUE(p.count("soft_edit") || p.count("soft_retrieval"));
  for (std::size_t i = 1; i < styled.hypotheses.size(); ++i) {
    EXPECT_GE(styled.hypotheses[i - 1].total, styled.hypotheses[i].total);
  }
}

TEST_F(DemoPipeline, SourceSelectionFiltersPassages) {
  auto req = turn({"tell me about the violin"});
  req.sources = {PassageSource::user_kb};
  for (const auto& p : sherlock_respond(engine(), req).passages) {
    EXPECT_EQ(p.source, PassageSource::user_kb);
  }
}

TEST(Determinism, TwoEnginesGiveIdenticalJson) {
  auto off = [](json& j) { j["timings"] = false; };
  const auto a = kgen::testing::demo_engine(off);
  const auto b = kgen::testing::demo_engine(off);
  for (const auto& ctx : std::vector<std::string>{"hello", "where do you live", "what is your name"}) {
    EXPECT_EQ(dump(sherlock_respond(*a, turn({ctx}))), dump(sherlock_respond(*b, turn({ctx}))));
  }
  auto req = turn({"The police inspector arrived"});
  EXPECT_EQ(dump(autocomplete(*a, req)), dump(autocomplete(*b, req)));
  req.constraints = {"violin"};
  req.mode = ConstraintMode::soft;
  EXPECT_EQ(dump(constrained_suggest(*a, req)), dump(constrained_suggest(*b, req)));
}

TEST(Timings, StagesReportedInRunOrder) {
  const auto e = kgen::testing::demo_engine();
  std::vector<std::string> stages;
  for (const auto& [s, ms] : sherlock_respond(*e, turn({"where do you live"})).timings_ms) {
    EXPECT_GE(ms, 0.0);
    stages.push_back(s);
  }
  EXPECT_EQ(stages, (std::vector<std::string>{"generate", "retrieve", "integrate", "qa", "style", "rank"}));
  stages.clear();
  for (const auto& [s, ms] : autocomplete(*e, turn({"Holmes played the violin"})).timings_ms) {
    stages.push_back(s);
  }
  EXPECT_EQ(stages, (std::vector<std::string>{"generate", "retrieve", "latent_interp", "style", "rank"}));
}

// Toggling a stage changes the candidate pool but never what another stage
// produced: shared texts keep their raw scores and log-probs.
TEST(StageIndependence, TogglingStagesLeavesOtherCandidatesAlone) {
  auto base = [](json& j) {
    j["timings"] = false;
    j["style"]["enabled"] = false;
  };
  const auto full = kgen::testing::demo_engine(base);
  const auto bare = kgen::testing::demo_engine([&](json& j) {
    base(j);
    j["integration"]["interpolate"] = false;
    j["integration"]["prune"] = false;
    j.erase("qa");
  });
  const auto req = turn({"where do you live"}, 1000);
  const auto a = sherlock_respond(*full, req);
  const auto b = sherlock_respond(*bare, req);
  std::map<std::string, const ScoredHypothesis*> by_text;
  for (const auto& h : a.hypotheses) by_text[h.hypothesis.text] = &h;
  std::size_t shared = 0;
  for (const auto& h : b.hypotheses) {
    const auto it = by_text.find(h.hypothesis.text);
    if (it == by_text.end()) continue;
    ++shared;
    EXPECT_EQ(it->second->scores, h.scores) << h.hypothesis.text;
    if (it->second->hypothesis.provenance == h.hypothesis.provenance) {
      EXPECT_EQ(it->second->hypothesis.log_prob, h.hypothesis.log_prob);
    }
  }
  EXPECT_GT(shared, 0u);
  EXPECT_EQ(dump(TurnResponse{{}, a.passages, {}, {}, {}}), dump(TurnResponse{{}, b.passages, {}, {}, {}}));
}

TEST(Ingestion, NewPassagesAreRetrievedAndReplaceDropsOld) {
  MiniWorld w;
  w.dir.write("a.txt", "Porters wear blue caps.");
  w.cfg["knowledge"] = {{"documents", {{{"path", "a.txt"}}}}};
  const auto e = w.engine();
  const auto before = e->knowledge();
  EXPECT_EQ(before->store.size(), 1u);
  EXPECT_EQ(e->ingest({{"The night train carries the mail to York.", PassageSource::user_document}}), 2u);
  const auto r = sherlock_respond(*e, turn({"what does the night train carry"}));
  ASSERT_FALSE(r.passages.empty());
  EXPECT_EQ(r.passages.front().text, "The night train carries the mail to York.");
  EXPECT_EQ(before->store.size(), 1u) << "snapshots are immutable";
  EXPECT_EQ(e->ingest({{"Tickets cost a shilling.", PassageSource::user_kb}}, true), 1u);
  EXPECT_EQ(e->knowledge()->store.passages().front().text, "Tickets cost a shilling.");
  EXPECT_EQ(e->load_qa({{"how much is a ticket", "A shilling."}}), 1u);
  EXPECT_EQ(e->load_qa({{"where", "Here."}}, false), 2u);
  EXPECT_EQ(e->load_qa({{"where", "Here."}}, true), 1u);
}

TEST(Ingestion, ConcurrentTurnsSeeWholeSnapshots) {
  const MiniWorld w;
  const auto e = w.engine();
  std::atomic<bool> done{false};
  std::atomic<int> turns{0};
  std::vector<std::thread> readers;
  for (int t = 0; t < 3; ++t) {
    readers.emplace_back([&] {
      while (!done) {
        const auto r = sherlock_respond(*e, turn({"where is the yellow train"}));
        // every ingest round adds two passages that mention the train
        EXPECT_LE(r.passages.size(), e->config().knowledge.top_k);
        ++turns;
      }
    });
  }
  for (int i = 0; i < 20; ++i) {
    e->ingest({{"The yellow train number " + std::to_string(i) + " waits.\n\nIt is late.",
                PassageSource::user_document}});
  }
  while (turns < 10) std::this_thread::yield();
  done = true;
  for (auto& t : readers) t.join();
  EXPECT_EQ(e->knowledge()->store.size(), 40u);
}
