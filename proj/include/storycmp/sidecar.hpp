#pragma once

// Client side of the optional NLP sidecar's HTTP contract. The toxicity
// route lives with the scorer in toxicity.hpp.
//
//   POST /parse   {"story_id": str, "text": str} -> {"story_id": str, "conllu": str}
//   GET  /health  200 {"status": ..., "models": {...}} | 503 while loading

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "storycmp/corpus_io.hpp"
#include "storycmp/error.hpp"

namespace storycmp {

// Returns the validated parse. Throws RemoteError on transport failure or a
// non-200 status, ProtocolError when the payload is malformed, names another
// story, or its CoNLL-U fails validation.
std::vector<ConlluSentence> parse_remote(const std::string& story_id, const std::string& text,
                                         const std::string& endpoint,
                                         std::string* raw_conllu = nullptr,
                                         Diagnostics* diag = nullptr);

// Writes `<out_dir>/<story id>.conllu` for every story. Returns the count.
std::size_t parse_corpus_remote(const Corpus& corpus, const std::string& endpoint,
                                const std::filesystem::path& out_dir,
                                Diagnostics* diag = nullptr);

struct SidecarHealth {
  bool ready = false;                         // false on 503
  std::map<std::string, std::string> models;  // model role -> version
};

SidecarHealth sidecar_health(const std::string& endpoint);

}  // namespace storycmp
