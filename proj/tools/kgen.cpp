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

#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "kgen/service/server.hpp"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

std::unique_ptr<kgen::Engine> load_engine(const std::string& path, std::optional<std::uint64_t> seed) {
  auto cfg = kgen::EngineConfig::load_file(path);
  if (seed) cfg.seed = *seed;
  return std::make_unique<kgen::Engine>(std::move(cfg));
}

// One line per hypothesis:
//   #<rank> <total> [<provenance>] <text>  (lik=<l> inf=<i> rep=<r> sty=<s>)
// then the passages and the QA answer, if any.
void print_turn(const kgen::TurnResponse& r, std::ostream& out) {
  char buf[128];
  int rank = 0;
  for (const auto& h : r.hypotheses) {
    std::snprintf(buf, sizeof buf, "#%d %.4f [", ++rank, h.total);
    out << buf << h.hypothesis.provenance << "] " << h.hypothesis.text;
    std::snprintf(buf, sizeof buf, "  (lik=%.3f inf=%.3f rep=%.3f sty=%.3f)", h.scores.likelihood,
                  h.scores.informativeness, h.scores.repetition, h.scores.style);
    out << buf << '\n';
  }
  if (r.hypotheses.empty()) out << "(no hypotheses)\n";
  for (const auto& p : r.passages) {
    std::snprintf(buf, sizeof buf, "  passage %.3f [", p.relevance);
    out << buf << kgen::to_string(p.source) << "] " << p.text << '\n';
  }
  if (r.qa_answer) out << "  qa: " << *r.qa_answer << '\n';
  for (const auto& w : r.warnings) out << "  warning: " << w << '\n';
  out.flush();
}

int run_repl(kgen::Engine& engine, const std::string& pipeline) {
  std::vector<std::string> history;
  std::string line;
  const bool interactive = isatty(fileno(stdin));
  auto prompt = [&] {
    if (interactive) std::cout << "> " << std::flush;
  };
  prompt();
  while (std::getline(std::cin, line)) {
    const std::string cmd = kgen::text::trim(line);
    if (cmd.empty()) {
      prompt();
      continue;
    }
    if (cmd == ":quit" || cmd == ":q") return 0;
    try {
      if (cmd.rfind(":knowledge", 0) == 0) {
        const std::string path = kgen::text::trim(cmd.substr(10));
        std::ifstream in(path);
        if (path.empty() || !in) {
          std::cout << "error: cannot read '" << path << "'\n";
        } else {
          std::stringstream ss;
          ss << in.rdbuf();
          const auto n = engine.ingest({{ss.str(), kgen::PassageSource::user_document}});
          std::cout << "knowledge store now holds " << n << " passages\n";
        }
      } else if (cmd[0] == ':') {
        std::cout << "commands: :quit, :knowledge <path>\n";
      } else {
        kgen::TurnRequest req;
        if (pipeline == "sherlock") {
          history.push_back(cmd);
          req.context = history;
          print_turn(kgen::sherlock_respond(engine, req), std::cout);
        } else {
          req.context = {cmd};
          print_turn(kgen::autocomplete(engine, req), std::cout);
        }
      }
    } catch (const kgen::Error& e) {
      std::cout << "error: " << e.what() << '\n';
    }
    prompt();
  }
  return 0;
}

int run_serve(kgen::Engine& engine, const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw kgen::InvalidArgument("--bind expects HOST:PORT");
  const std::string host = bind.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw kgen::InvalidArgument("--bind port is not a number");
  }
  kgen::Api api(engine);
  kgen::HttpServer server(api, engine.config().cors_origin);
  const int bound = server.bind(host, port);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&] {
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
  });
  std::clog << "listening on " << host << ':' << bound << std::endl;
  server.listen();
  g_stop = true;
  watcher.join();
  std::clog << "shut down" << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-grounded, style-controlled text generation"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::uint64_t> seed;
  std::string pipeline = "sherlock";
  std::string bind = "127.0.0.1:8080";

  auto* repl = app.add_subcommand("repl", "interactive session on stdin");
  repl->add_option("--config", config, "engine config file")->required();
  repl->add_option("--pipeline", pipeline, "sherlock or autocomplete")
      ->check(CLI::IsMember({"sherlock", "autocomplete"}));
  repl->add_option("--seed", seed, "override the config seed");

  auto* serve = app.add_subcommand("serve", "run the REST API");
  serve->add_option("--config", config, "engine config file")->required();
  serve->add_option("--bind", bind, "HOST:PORT to listen on");
  serve->add_option("--seed", seed, "override the config seed");

  CLI11_PARSE(app, argc, argv);

  try {
    auto engine = load_engine(config, seed);
    if (*repl) return run_repl(*engine, pipeline);
    return run_serve(*engine, bind);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
