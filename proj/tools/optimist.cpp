#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <pthread.h>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "optimist/agent.hpp"
#include "optimist/graph_files.hpp"
#include "optimist/replay.hpp"
#include "optimist/service.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace optimist;

namespace {

// Defaults from the JSON file named by OPTIMIST_CONFIG:
//   {"agent": {...agent config...}, "host": "127.0.0.1", "port": 8080}
struct Defaults {
  AgentConfig agent;
  std::string host = "127.0.0.1";
  int port = 8080;
};

Defaults load_defaults() {
  Defaults d;
  const char* path = std::getenv("OPTIMIST_CONFIG");
  if (!path || !*path) return d;
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string("OPTIMIST_CONFIG: cannot read ") + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("OPTIMIST_CONFIG: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("OPTIMIST_CONFIG: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "agent") {
      d.agent = config_from_json(value);
    } else if (key == "host") {
      d.host = value.get<std::string>();
    } else if (key == "port") {
      d.port = value.get<int>();
    } else {
      throw std::runtime_error("OPTIMIST_CONFIG: unknown key " + key);
    }
  }
  return d;
}

std::vector<Conjecture> read_known(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  // A bare array, a GET /theorems body or a session file.
  if (j.is_object() && j.contains("conjectures")) j = j.at("conjectures");
  if (j.is_object() && j.contains("known_theorems")) j = j.at("known_theorems");
  if (!j.is_array()) throw std::runtime_error(path.string() + ": expected an array of conjectures");
  std::vector<Conjecture> out;
  for (const auto& c : j) out.push_back(conjecture_from_json(c));
  return out;
}

struct AgentFlags {
  std::string smokey;
  std::optional<std::size_t> min_touch;
  std::optional<int> ceiling;
  std::optional<unsigned> threads;

  void add(CLI::App* app) {
    app->add_option("--smokey", smokey, "weak or strong")->check(CLI::IsMember({"weak", "strong"}));
    app->add_option("--min-touch", min_touch, "drop conjectures with touch below this");
    app->add_option("--ceiling", ceiling, "largest order accepted for brute-force invariants");
    app->add_option("--threads", threads, "fitting threads");
  }

  AgentConfig apply(AgentConfig c) const {
    if (!smokey.empty()) c.smokey = parse_smokey_mode(smokey);
    if (min_touch) c.min_touch = *min_touch;
    if (ceiling) c.ceiling = *ceiling;
    if (threads) c.threads = *threads;
    return c;
  }
};

int run_conjecture(const fs::path& graphs_path, const std::string& target, const AgentFlags& flags,
                   const std::string& known_path, const std::string& out_path) {
  auto defaults = load_defaults();
  auto graphs = read_graphs(graphs_path);
  std::vector<Conjecture> known;
  if (!known_path.empty()) known = read_known(known_path);
  Agent agent = Agent::init(graphs, flags.apply(defaults.agent), known);
  std::cout << agent.write_on_the_wall(target);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << pools_json(target, agent.pools().at(target)).dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write " + out_path);
  }
  return 0;
}

int run_serve(const std::string& session_path, const std::string& init_graphs, std::optional<int> port,
              const std::string& host, const AgentFlags& flags) {
  auto defaults = load_defaults();
  std::optional<Agent> agent;
  std::error_code ec;
  if (!session_path.empty() && fs::exists(session_path, ec)) {
    if (!init_graphs.empty()) throw std::runtime_error("session file exists; refusing to overwrite it with --init");
    agent = load_session(session_path);
  } else if (!init_graphs.empty()) {
    auto graphs = read_graphs(init_graphs);
    agent = Agent::init(graphs, flags.apply(defaults.agent));
  } else {
    throw std::runtime_error("need an existing --session file or --init <graphs>");
  }

  ServiceOptions options;
  options.host = host.empty() ? defaults.host : host;
  options.port = port.value_or(defaults.port);
  options.session_path = session_path;

  // Signals are taken by a dedicated thread so the server can be stopped
  // outside of a signal handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  SessionService service(std::move(agent), options);
  int bound = service.bind();
  std::cerr << "serving on " << options.host << ":" << bound << std::endl;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    service.stop();
  });
  service.listen();
  if (!session_path.empty()) {
    save_session(*service.snapshot(), session_path);
    std::cerr << "saved " << session_path << std::endl;
  }
  // The waiter is still blocked unless a signal stopped the server.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

int run_replay_command(const std::string& script_path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (script_path != "-") {
    file.open(script_path);
    if (!file) throw std::runtime_error("cannot read " + script_path);
    in = &file;
  }
  auto result = run_replay(*in);
  std::cout << format_replay(result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimist: linear conjectures on graph invariants"};
  app.require_subcommand(1);

  auto* conjecture = app.add_subcommand("conjecture", "fit and print the conjectures for one target");
  std::string graphs_path, target, known_path, out_path;
  AgentFlags conjecture_flags;
  conjecture->add_option("--graphs", graphs_path, "graph directory, .g6 or .json file")->required();
  conjecture->add_option("--target", target, "numeric invariant to bound")->required();
  conjecture->add_option("--known", known_path, "JSON file of known theorems");
  conjecture->add_option("--out", out_path, "write the pools as JSON");
  conjecture_flags.add(conjecture);

  auto* serve = app.add_subcommand("serve", "serve one session over HTTP");
  std::string session_path, init_graphs, host;
  std::optional<int> port;
  AgentFlags serve_flags;
  serve->add_option("--session", session_path, "session file, loaded if present and saved on shutdown");
  serve->add_option("--init", init_graphs, "start a fresh session from these graphs");
  serve->add_option("--port", port, "0 picks a free port");
  serve->add_option("--host", host, "bind address");
  serve_flags.add(serve);

  auto* replay = app.add_subcommand("replay", "run a JSON-lines event script");
  std::string script_path;
  replay->add_option("--script", script_path, "script file, - for stdin")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*conjecture) return run_conjecture(graphs_path, target, conjecture_flags, known_path, out_path);
    if (*serve) return run_serve(session_path, init_graphs, port, host, serve_flags);
    if (*replay) return run_replay_command(script_path);
  } catch (const std::exception& e) {
    std::cerr << "optimist: " << e.what() << std::endl;
    return 1;
  }
  return 1;
}
