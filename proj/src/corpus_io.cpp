#include "storycmp/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace storycmp {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Category c) {
  switch (c) {
    case Category::old: return "old";
    case Category::modern: return "modern";
    case Category::generated: return "generated";
  }
  return "old";
}

Category parse_category(std::string_view s) {
  if (s == "old") return Category::old;
  if (s == "modern") return Category::modern;
  if (s == "generated") return Category::generated;
  throw ValidationError("unknown category '" + std::string(s) + "'");
}

const Story* Corpus::find(std::string_view id) const {
  for (const auto& s : stories)
    if (s.id == id) return &s;
  return nullptr;
}

namespace {

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  });
}

}  // namespace

void validate_story(const Story& story) {
  if (story.id.empty()) throw ValidationError("story with empty id");
  if (is_blank(story.text))
    throw ValidationError("story '" + story.id + "' has empty text");
  if (story.category == Category::generated &&
      !story.provenance.contains("model"))
    throw ValidationError("generated story '" + story.id +
                          "' lacks a 'model' provenance entry");
}

void validate_corpus(const Corpus& corpus) {
  if (corpus.label.empty()) throw ValidationError("corpus label is empty");
  std::set<std::string_view> seen;
  for (const auto& story : corpus.stories) {
    validate_story(story);
    if (!seen.insert(story.id).second)
      throw ValidationError("duplicate story id '" + story.id + "' in corpus '" +
                            corpus.label + "'");
  }
}

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    char32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates, out of range.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF))
      return false;
    i += len;
  }
  return true;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError(path.string(), "read failed");
  std::string content = buf.str();
  if (!is_valid_utf8(content))
    throw ValidationError("file is not valid UTF-8: " + path.string());
  return content;
}

void write_text_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(path.parent_path().string(), "cannot create directory");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open file for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError(path.string(), "write failed");
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

Corpus load_corpus(const fs::path& manifest) {
  const std::string raw = read_text_file(manifest);
  json doc;
  try {
    doc = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw ParseError(0, "manifest " + manifest.string() + ": " + e.what());
  }

  Corpus corpus;
  try {
    corpus.label = doc.at("label").get<std::string>();
    const fs::path base = manifest.parent_path();
    for (const auto& entry : doc.at("stories")) {
      Story story;
      story.id = entry.at("id").get<std::string>();
      story.title = entry.value("title", "");
      story.category = parse_category(entry.at("category").get<std::string>());
      if (entry.contains("provenance"))
        story.provenance =
            entry.at("provenance").get<std::map<std::string, std::string>>();
      fs::path text_path = entry.at("path").get<std::string>();
      if (text_path.is_relative()) text_path = base / text_path;
      story.text = read_text_file(text_path);
      corpus.stories.push_back(std::move(story));
    }
  } catch (const json::exception& e) {
    throw ValidationError("manifest " + manifest.string() + ": " + e.what());
  }
  validate_corpus(corpus);
  return corpus;
}

namespace {

std::string file_stem_for(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

}  // namespace

fs::path write_corpus(const Corpus& corpus, const fs::path& manifest,
                      const std::string& texts_dir) {
  const fs::path base = manifest.parent_path();
  json stories = json::array();
  std::set<std::string> used;
  for (const auto& story : corpus.stories) {
    std::string stem = file_stem_for(story.id);
    // Sanitizing can collide distinct ids.
    for (int n = 1; !used.insert(stem).second; ++n)
      stem = file_stem_for(story.id) + "~" + std::to_string(n);
    const std::string rel = (fs::path(texts_dir) / (stem + ".txt")).generic_string();
    write_text_file(base / rel, story.text);
    json entry = {{"id", story.id},
                  {"title", story.title},
                  {"category", std::string(to_string(story.category))},
                  {"path", rel},
                  {"provenance", story.provenance}};
    stories.push_back(std::move(entry));
  }
  const json doc = {{"label", corpus.label}, {"stories", std::move(stories)}};
  write_text_file(manifest, doc.dump(2) + "\n");
  return manifest;
}

ParseMap load_conllu_dir(const Corpus& corpus, const fs::path& dir,
                         Diagnostics* diag) {
  ParseMap parses;
  for (const auto& story : corpus.stories) {
    const fs::path path = dir / (story.id + ".conllu");
    if (!fs::exists(path)) continue;
    const std::string content = read_text_file(path);
    try {
      parses.emplace(story.id, parse_conllu(content, story.id, diag));
    } catch (const ParseError& e) {
      throw ParseError(0, path.string() + ": " + e.what());
    }
  }
  return parses;
}

}  // namespace storycmp
