// Deterministic mock for the completion endpoint (and, with a lexicon, the
// sidecar's /toxicity and /parse routes).
//
//   mock_completion_server --port 8080 [--text STORY] [--lexicon lex.tsv]

#include <iostream>

#include "CLI11.hpp"
#include "mock_server.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Mock completion endpoint"};
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string text = "STORY";
  std::string lexicon;
  app.add_option("--port", port);
  app.add_option("--host", host);
  app.add_option("--text", text, "Completion text; {PROMPT} echoes the prompt");
  app.add_option("--lexicon", lexicon, "Serve /toxicity from this lexicon")->check(CLI::ExistingFile);
  CLI11_PARSE(app, argc, argv);

  try {
    storycmp::mock::MockOptions options;
    options.completion = text;
    if (!lexicon.empty()) options.lexicon = storycmp::ToxicityLexicon::load(lexicon);
    storycmp::mock::MockServer server(std::move(options));
    std::cerr << "listening on " << host << ':' << port << '\n';
    server.listen(host, port);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
