#pragma once

// Deterministic stand-in for a completion endpoint and the sidecar's
// /toxicity route. Used by the test suites and the mock server tool.

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "storycmp/toxicity.hpp"

namespace httplib {
class Server;
}

namespace storycmp::mock {

struct MockOptions {
  // Completion text; "{PROMPT}" is replaced by the request prompt.
  std::string completion = "STORY";
  // The first N requests to any POST route answer HTTP 500.
  int fail_first = 0;
  // Enables POST /toxicity backed by the lexicon.
  std::optional<ToxicityLexicon> lexicon;
  // Overrides every /toxicity score with this value (tests protocol checks).
  std::optional<double> forced_score;
};

class MockServer {
 public:
  explicit MockServer(MockOptions options = {});
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  // Binds 127.0.0.1 on `port` (0 picks a free one) and serves in a
  // background thread.
  void start(int port = 0);
  // Blocks serving on the calling thread.
  void listen(const std::string& host, int port);
  void stop();

  int port() const { return port_; }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int requests() const { return requests_.load(); }

 private:
  void install_routes();

  MockOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
};

}  // namespace storycmp::mock
