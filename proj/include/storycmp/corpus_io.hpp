#pragma once

// Story corpora: manifests, sentence segmentation, word tokenization and
// CoNLL-U dependency annotations.

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "storycmp/error.hpp"

namespace storycmp {

enum class Category { old, modern, generated };

std::string_view to_string(Category c);
// Throws ValidationError for anything but "old", "modern", "generated".
Category parse_category(std::string_view s);

struct Story {
  std::string id;
  std::string title;
  Category category = Category::old;
  std::string text;
  std::map<std::string, std::string> provenance;
};

struct Corpus {
  std::string label;
  std::vector<Story> stories;

  const Story* find(std::string_view id) const;
};

// Checks the Story/Corpus invariants; throws ValidationError on the first
// violation.
void validate_story(const Story& story);
void validate_corpus(const Corpus& corpus);

// Reads a JSON manifest:
//   {"label": "...", "stories": [{"id", "title", "category", "path",
//                                 "provenance": {...}}]}
// Story paths are resolved relative to the manifest's directory.
Corpus load_corpus(const std::filesystem::path& manifest);

// Writes `corpus` as a manifest plus one text file per story under
// `texts_dir` (relative to the manifest). Returns the manifest path.
std::filesystem::path write_corpus(const Corpus& corpus,
                                   const std::filesystem::path& manifest,
                                   const std::string& texts_dir = "texts");

bool is_valid_utf8(std::string_view s);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// ---------------------------------------------------------------------------
// Segmentation and tokenization

struct SegmentOptions {
  // Tokens that end in '.' but never close a sentence.
  std::vector<std::string> abbreviations{"Mr.", "Mrs.", "Ms.", "Dr.", "St.",
                                         "Jr.", "Sr.", "Prof.", "Mt."};
  // A blank line (paragraph break) also ends a sentence. Titles and headings
  // in story texts rarely carry terminal punctuation.
  bool split_on_blank_lines = true;
};

// Splits on '.', '!' or '?' (plus any closing quotes or brackets) followed by
// whitespace and a capital letter, unless the word ending in '.' is a known
// abbreviation. Each segment is trimmed and its internal whitespace runs are
// collapsed to a single space.
std::vector<std::string> segment_sentences(std::string_view text,
                                           const SegmentOptions& options = {});

// Whitespace split, then leading/trailing punctuation stripped from each
// token. Internal apostrophes and hyphens survive; empty tokens are dropped.
std::vector<std::string> tokenize(std::string_view sentence);

// Whitespace-delimited tokens of `text`, views into it.
std::vector<std::string_view> whitespace_tokens(std::string_view text);

std::string to_lower_ascii(std::string_view s);

// ---------------------------------------------------------------------------
// CoNLL-U

struct ConlluToken {
  int id = 0;
  std::string form;
  std::string lemma = "_";
  std::string upos = "_";
  std::string xpos = "_";
  std::string feats = "_";
  int head = 0;
  std::string deprel = "_";
  std::string deps = "_";
  std::string misc = "_";

  bool operator==(const ConlluToken&) const = default;
};

struct ConlluSentence {
  std::vector<ConlluToken> tokens;
  std::string source_story_id;
  std::size_t sentence_index = 0;

  bool operator==(const ConlluSentence&) const = default;
};

// One sentence per blank-line-delimited block. Comment lines, multiword
// ranges ("3-4") and empty nodes ("5.1") are dropped. Throws ParseError with
// the offending line number for rows without exactly 10 columns, for
// non-integer ids or heads, for non-contiguous ids and for heads beyond the
// last token. Multiple roots only produce a warning.
std::vector<ConlluSentence> parse_conllu(std::istream& in,
                                         std::string_view source_story_id = {},
                                         Diagnostics* diag = nullptr);
std::vector<ConlluSentence> parse_conllu(std::string_view text,
                                         std::string_view source_story_id = {},
                                         Diagnostics* diag = nullptr);

std::string serialize_conllu(const std::vector<ConlluSentence>& sentences);

using ParseMap = std::map<std::string, std::vector<ConlluSentence>>;

// Loads `<dir>/<story id>.conllu` for every story that has one. Stories
// without a file are absent from the result.
ParseMap load_conllu_dir(const Corpus& corpus, const std::filesystem::path& dir,
                         Diagnostics* diag = nullptr);

}  // namespace storycmp
