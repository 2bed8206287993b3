#include "storycmp/sidecar.hpp"

#include "http_client.hpp"
#include "json.hpp"

namespace storycmp {

using nlohmann::json;

std::vector<ConlluSentence> parse_remote(const std::string& story_id, const std::string& text,
                                         const std::string& endpoint, std::string* raw_conllu,
                                         Diagnostics* diag) {
  const json body = {{"story_id", story_id}, {"text", text}};
  const auto res = http::post_json(endpoint, "/parse", body.dump());
  if (res.status != 200)
    throw RemoteError("parser at " + endpoint + " returned HTTP " + std::to_string(res.status) +
                      " for story '" + story_id + "'");
  json doc;
  try {
    doc = json::parse(res.body);
  } catch (const json::parse_error& e) {
    throw ProtocolError("parse response is not JSON: " + std::string(e.what()));
  }
  if (!doc.is_object() || !doc.contains("conllu") || !doc["conllu"].is_string())
    throw ProtocolError("parse response lacks a string 'conllu' field");
  if (doc.value("story_id", story_id) != story_id)
    throw ProtocolError("parse response names story '" + doc["story_id"].get<std::string>() +
                        "', expected '" + story_id + "'");
  std::string conllu = doc["conllu"].get<std::string>();
  std::vector<ConlluSentence> sentences;
  try {
    sentences = parse_conllu(conllu, story_id, diag);
  } catch (const ParseError& e) {
    throw ProtocolError("parser returned invalid CoNLL-U for '" + story_id + "': " + e.what());
  }
  if (sentences.empty())
    throw ProtocolError("parser returned no sentences for '" + story_id + "'");
  if (raw_conllu) *raw_conllu = std::move(conllu);
  return sentences;
}

std::size_t parse_corpus_remote(const Corpus& corpus, const std::string& endpoint,
                                const std::filesystem::path& out_dir, Diagnostics* diag) {
  std::size_t n = 0;
  for (const auto& story : corpus.stories) {
    std::string raw;
    parse_remote(story.id, story.text, endpoint, &raw, diag);
    write_text_file(out_dir / (story.id + ".conllu"), raw);
    ++n;
  }
  return n;
}

SidecarHealth sidecar_health(const std::string& endpoint) {
  const auto res = http::get(endpoint, "/health");
  SidecarHealth h;
  if (res.status == 503) return h;
  if (res.status != 200)
    throw RemoteError("sidecar health at " + endpoint + " returned HTTP " +
                      std::to_string(res.status));
  try {
    const json doc = json::parse(res.body);
    h.ready = true;
    if (doc.contains("models"))
      for (const auto& [k, v] : doc["models"].items())
        h.models[k] = v.is_string() ? v.get<std::string>() : v.dump();
  } catch (const json::exception& e) {
    throw ProtocolError("health response is not JSON: " + std::string(e.what()));
  }
  return h;
}

}  // namespace storycmp
