#include "mock_server.hpp"

#include "httplib.h"
#include "json.hpp"
#include "storycmp/corpus_io.hpp"
#include "storycmp/error.hpp"
#include "storycmp/genharness.hpp"

namespace storycmp::mock {

using nlohmann::json;

MockServer::MockServer(MockOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

MockServer::~MockServer() { stop(); }

void MockServer::install_routes() {
  auto should_fail = [this] { return requests_.fetch_add(1) < options_.fail_first; };

  server_->Post("/generate", [this, should_fail](const httplib::Request& req,
                                                  httplib::Response& res) {
    if (should_fail()) {
      res.status = 500;
      res.set_content(R"({"error":"injected failure"})", "application/json");
      return;
    }
    CompletionRequest parsed;
    try {
      parsed = parse_completion_request(req.body);
    } catch (const Error& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
      return;
    }
    std::string text = options_.completion;
    if (auto at = text.find("{PROMPT}"); at != std::string::npos)
      text.replace(at, 8, parsed.prompt);
    res.set_content(completion_response_json(text), "application/json");
  });

  server_->Post("/toxicity", [this, should_fail](const httplib::Request& req,
                                                  httplib::Response& res) {
    if (should_fail()) {
      res.status = 500;
      return;
    }
    if (!options_.lexicon && !options_.forced_score) {
      res.status = 404;
      return;
    }
    json doc;
    try {
      doc = json::parse(req.body);
    } catch (const json::exception&) {
      res.status = 400;
      return;
    }
    if (!doc.contains("sentences") || !doc["sentences"].is_array() || doc["sentences"].empty()) {
      res.status = 400;
      return;
    }
    json scores = json::array();
    for (const auto& s : doc["sentences"]) {
      json row;
      if (options_.forced_score) {
        for (auto c : kToxicityCategories) row[std::string(to_string(c))] = *options_.forced_score;
      } else {
        const auto sc = score_sentence_lexicon(s.get<std::string>(), *options_.lexicon);
        for (auto c : kToxicityCategories) row[std::string(to_string(c))] = sc[c];
      }
      scores.push_back(std::move(row));
    }
    res.set_content(json{{"scores", scores}}.dump(), "application/json");
  });

  // Naive right-branching parse: every token attaches to its successor, the
  // last token is the root.
  server_->Post("/parse", [should_fail](const httplib::Request& req, httplib::Response& res) {
    if (should_fail()) {
      res.status = 500;
      return;
    }
    json doc;
    try {
      doc = json::parse(req.body);
    } catch (const json::exception&) {
      res.status = 400;
      return;
    }
    const std::string text = doc.value("text", std::string());
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
      res.status = 400;
      return;
    }
    std::vector<ConlluSentence> sentences;
    for (const auto& s : segment_sentences(text)) {
      auto words = tokenize(s);
      if (words.empty()) continue;
      ConlluSentence sentence;
      for (std::size_t i = 0; i < words.size(); ++i) {
        ConlluToken t;
        t.id = static_cast<int>(i + 1);
        t.form = words[i];
        t.head = i + 1 == words.size() ? 0 : static_cast<int>(i + 2);
        t.deprel = t.head == 0 ? "root" : "dep";
        sentence.tokens.push_back(std::move(t));
      }
      sentences.push_back(std::move(sentence));
    }
    res.set_content(json{{"story_id", doc.value("story_id", std::string())},
                         {"conllu", serialize_conllu(sentences)}}
                        .dump(),
                    "application/json");
  });

  server_->Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok","models":{"completion":"mock","toxicity":"lexicon"}})",
                    "application/json");
  });
}

void MockServer::start(int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port("127.0.0.1");
  } else {
    if (!server_->bind_to_port("127.0.0.1", port))
      throw RemoteError("mock server cannot bind port " + std::to_string(port));
    port_ = port;
  }
  if (port_ <= 0) throw RemoteError("mock server failed to bind");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void MockServer::listen(const std::string& host, int port) {
  port_ = port;
  if (!server_->listen(host, port))
    throw RemoteError("mock server cannot listen on " + host + ":" + std::to_string(port));
}

void MockServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace storycmp::mock
