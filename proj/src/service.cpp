#include "optimist/service.hpp"

#include <sys/socket.h>

#include "httplib.h"
#include "optimist/graph.hpp"

namespace optimist {

using nlohmann::json;

MutationQueue::MutationQueue() : worker_([this] { work(); }) {}

MutationQueue::~MutationQueue() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  worker_.join();
}

void MutationQueue::run(std::function<void()> job) {
  std::mutex done_mutex;
  std::condition_variable done_cv;
  bool done = false;
  std::exception_ptr error;
  {
    std::lock_guard lock(mutex_);
    if (stopping_) throw ServiceError("mutation queue is shut down");
    jobs_.push_back([&] {
      try {
        job();
      } catch (...) {
        error = std::current_exception();
      }
      std::lock_guard done_lock(done_mutex);
      done = true;
      done_cv.notify_one();
    });
  }
  wake_.notify_one();
  std::unique_lock done_lock(done_mutex);
  done_cv.wait(done_lock, [&] { return done; });
  if (error) std::rethrow_exception(error);
}

void MutationQueue::work() {
  for (;;) {
    std::function<void()> job;
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stopping_ || !jobs_.empty(); });
      if (jobs_.empty()) return;
      job = std::move(jobs_.front());
      jobs_.pop_front();
    }
    job();
  }
}

namespace {

struct HttpError : std::runtime_error {
  HttpError(int status, const std::string& message) : std::runtime_error(message), status(status) {}
  int status;
};

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", "application/json");
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw HttpError(400, std::string("request body is not valid JSON: ") + e.what());
  }
}

// Name of the graph whose arrival falsified pooled conjecture `id`, if any.
std::optional<std::string> falsified_by(const Agent& agent, const std::string& id) {
  for (const auto& e : agent.log()) {
    if (e.kind != "graph_added") continue;
    for (const auto& f : e.detail.at("falsified")) {
      if (f == id) return e.detail.at("name").get<std::string>();
    }
  }
  return std::nullopt;
}

json event_json(const Event& e) { return {{"seq", e.seq}, {"kind", e.kind}, {"detail", e.detail}}; }

}  // namespace

json state_json(const Agent& agent) {
  json names = json::array();
  for (const auto& row : agent.table().rows()) names.push_back(row.name);
  json targets = json::object();
  for (const auto& [target, lists] : agent.pools()) {
    targets[target] = {{"upper", lists.upper.size()}, {"lower", lists.lower.size()}};
  }
  return {{"graphs", agent.table().size()},
          {"graph_names", names},
          {"invariants", agent.table().numeric_columns()},
          {"properties", agent.table().boolean_columns()},
          {"targets", targets},
          {"known_theorems", agent.known_theorems().size()},
          {"events", agent.log().size()},
          {"config", to_json(agent.config())}};
}

json pools_json(const std::string& target, const ConjectureLists& lists) {
  json upper = json::array();
  json lower = json::array();
  for (const auto& c : lists.upper) upper.push_back(to_json(c));
  for (const auto& c : lists.lower) lower.push_back(to_json(c));
  return {{"target", target}, {"upper", upper}, {"lower", lower}};
}

SessionService::SessionService(std::optional<Agent> agent, ServiceOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  if (agent) current_ = std::make_shared<const Agent>(std::move(*agent));
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  server_->set_payload_max_length(1 << 20);
  routes();
}

SessionService::~SessionService() { stop(); }

std::shared_ptr<const Agent> SessionService::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return current_;
}

void SessionService::publish(std::shared_ptr<const Agent> next) {
  std::lock_guard lock(snapshot_mutex_);
  current_ = std::move(next);
}

int SessionService::bind() {
  if (options_.port == 0) {
    bound_port_ = server_->bind_to_any_port(options_.host);
  } else if (server_->bind_to_port(options_.host, options_.port)) {
    bound_port_ = options_.port;
  }
  if (bound_port_ < 0) {
    throw ServiceError("cannot bind " + options_.host + ":" + std::to_string(options_.port));
  }
  return bound_port_;
}

void SessionService::listen() {
  if (bound_port_ < 0) throw ServiceError("listen() called before bind()");
  server_->listen_after_bind();
}

void SessionService::stop() {
  if (server_) server_->stop();
}

void SessionService::routes() {
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;
  auto guarded = [](Handler h) {
    return [h](const httplib::Request& req, httplib::Response& res) {
      try {
        h(req, res);
      } catch (const HttpError& e) {
        send(res, e.status, {{"error", e.what()}});
      } catch (const std::exception& e) {
        send(res, 500, {{"error", e.what()}});
      }
    };
  };
  auto session = [this] {
    auto a = snapshot();
    if (!a) throw HttpError(503, "no session loaded");
    return a;
  };
  // Copies the snapshot on the queue thread, applies `op` and publishes the
  // copy; an exception discards it.
  auto mutate = [this](const std::function<json(Agent&)>& op) {
    json out;
    queue_.run([&] {
      auto base = snapshot();
      if (!base) throw HttpError(503, "no session loaded");
      auto next = std::make_shared<Agent>(*base);
      out = op(*next);
      publish(std::move(next));
    });
    return out;
  };

  server_->Get("/state", guarded([=, this](const httplib::Request&, httplib::Response& res) {
    send(res, 200, state_json(*session()));
  }));

  server_->Get(R"(/conjectures/([^/]+))", guarded([=, this](const httplib::Request& req, httplib::Response& res) {
    const std::string target = req.matches[1];
    auto a = session();
    if (!a->table().has_numeric(target)) throw HttpError(404, "unknown target invariant: " + target);
    auto it = a->pools().find(target);
    if (it != a->pools().end()) {
      send(res, 200, pools_json(target, it->second));
      return;
    }
    send(res, 200, mutate([&](Agent& next) {
      auto pooled = next.pools().find(target);
      return pools_json(target, pooled != next.pools().end() ? pooled->second : next.conjecture(target));
    }));
  }));

  server_->Post("/graphs", guarded([=, this](const httplib::Request& req, httplib::Response& res) {
    session();
    std::optional<Graph> g;
    try {
      g = graph_from_payload(parse_body(req));
    } catch (const GraphError& e) {
      throw HttpError(400, std::string("malformed graph: ") + e.what());
    } catch (const json::exception& e) {
      throw HttpError(400, std::string("malformed graph: ") + e.what());
    }
    send(res, 200, mutate([&](Agent& next) {
      UpdateReport report;
      try {
        report = next.add_counterexample(*g);
      } catch (const CeilingError& e) {
        throw HttpError(422, e.what());
      }
      return json{{"name", report.graph_name},
                  {"graph6", encode_graph6(*g)},
                  {"removed", report.falsified},
                  {"dropped", report.dropped},
                  {"added", report.added},
                  {"graphs", next.table().size()}};
    }));
  }));

  server_->Post("/theorems", guarded([=, this](const httplib::Request& req, httplib::Response& res) {
    session();
    json body = parse_body(req);
    if (!body.is_object() || !body.contains("conjecture_id") || !body.at("conjecture_id").is_string()) {
      throw HttpError(400, "body must be {\"conjecture_id\": \"...\"}");
    }
    const auto id = body.at("conjecture_id").get<std::string>();
    send(res, 200, mutate([&](Agent& next) {
      auto c = next.find_in_pools(id);
      if (!c) {
        if (auto by = falsified_by(next, id)) throw HttpError(409, "conjecture " + id + " was falsified by " + *by);
        throw HttpError(404, "no pooled conjecture has id " + id);
      }
      UpdateReport report;
      try {
        report = next.learn_theorems({*c});
      } catch (const AgentError& e) {
        throw HttpError(409, e.what());
      }
      return json{{"learned", to_json(*c)},
                  {"removed", report.dropped},
                  {"added", report.added},
                  {"in_pools", next.find_in_pools(id).has_value()},
                  {"known_theorems", next.known_theorems().size()}};
    }));
  }));

  server_->Get("/theorems", guarded([=, this](const httplib::Request&, httplib::Response& res) {
    auto a = session();
    json texts = json::array();
    json full = json::array();
    for (const auto& t : a->known_theorems()) {
      texts.push_back(render(t));
      full.push_back(to_json(t));
    }
    send(res, 200, {{"theorems", texts}, {"conjectures", full}});
  }));

  server_->Get("/log", guarded([=, this](const httplib::Request&, httplib::Response& res) {
    auto a = session();
    json log = json::array();
    for (const auto& e : a->log()) log.push_back(event_json(e));
    send(res, 200, {{"log", log}});
  }));

  server_->Post("/save", guarded([=, this](const httplib::Request&, httplib::Response& res) {
    session();
    if (options_.session_path.empty()) throw HttpError(409, "no session file configured");
    json out;
    // On the queue so that saves never interleave with a mutation.
    queue_.run([&] {
      auto a = snapshot();
      try {
        save_session(*a, options_.session_path);
      } catch (const AgentError& e) {
        throw HttpError(500, e.what());
      }
      out = {{"saved", options_.session_path.string()}, {"graphs", a->table().size()}};
    });
    send(res, 200, out);
  }));
}

}  // namespace optimist
