#pragma once

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "optimist/agent.hpp"

namespace httplib {
class Server;
}

namespace optimist {

class ServiceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // Target of POST /save; empty disables saving.
  std::filesystem::path session_path;
};

// Runs jobs one at a time on a dedicated thread, in submission order.
class MutationQueue {
 public:
  MutationQueue();
  ~MutationQueue();
  MutationQueue(const MutationQueue&) = delete;
  MutationQueue& operator=(const MutationQueue&) = delete;

  // Blocks until the job has run; rethrows whatever it threw.
  void run(std::function<void()> job);

 private:
  void work();

  std::mutex mutex_;
  std::condition_variable wake_;
  std::deque<std::function<void()>> jobs_;
  bool stopping_ = false;
  std::thread worker_;
};

// HTTP/JSON front end for one agent. Readers work on an immutable snapshot;
// every mutation copies the current snapshot on the queue thread, applies the
// change and publishes the copy only if nothing threw.
//
//   GET  /state                  503 without a session
//   GET  /conjectures/{target}   404 unknown target; generates missing pools
//   POST /graphs                 400 malformed graph, 422 over the ceiling;
//                                "removed" lists the falsified ids, "dropped"
//                                the ones filtered out while still valid
//   POST /theorems               {"conjecture_id"}; 404 not pooled, 409 if a
//                                counterexample removed it
//   GET  /theorems, GET /log
//   POST /save                   writes the session file
class SessionService {
 public:
  explicit SessionService(std::optional<Agent> agent, ServiceOptions options = {});
  ~SessionService();
  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  // Throws ServiceError when the address cannot be bound. Returns the port.
  int bind();
  // Serves until stop(). Requires bind().
  void listen();
  void stop();

  std::shared_ptr<const Agent> snapshot() const;
  const ServiceOptions& options() const { return options_; }

 private:
  void routes();
  void publish(std::shared_ptr<const Agent> next);

  ServiceOptions options_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Agent> current_;
  MutationQueue queue_;
  std::unique_ptr<httplib::Server> server_;
  int bound_port_ = -1;
};

// Response bodies, shared with tests and the CLI.
nlohmann::json state_json(const Agent& agent);
nlohmann::json pools_json(const std::string& target, const ConjectureLists& lists);

}  // namespace optimist
