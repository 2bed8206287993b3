#include <charconv>
#include <sstream>

#include "storycmp/corpus_io.hpp"

namespace storycmp {

namespace {

constexpr std::size_t kColumns = 10;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

class SentenceBuilder {
 public:
  SentenceBuilder(std::string_view story_id, Diagnostics* diag)
      : story_id_(story_id), diag_(diag) {}

  void add(ConlluToken token, std::size_t line) {
    if (current_.tokens.empty()) first_line_ = line;
    const int expected = static_cast<int>(current_.tokens.size()) + 1;
    if (token.id != expected)
      throw ParseError(line, "token id " + std::to_string(token.id) +
                                 " breaks contiguous numbering (expected " +
                                 std::to_string(expected) + ")");
    heads_.push_back(line);
    current_.tokens.push_back(std::move(token));
  }

  void finish(std::vector<ConlluSentence>& out) {
    if (current_.tokens.empty()) return;
    const int n = static_cast<int>(current_.tokens.size());
    int roots = 0;
    for (std::size_t i = 0; i < current_.tokens.size(); ++i) {
      const auto& t = current_.tokens[i];
      if (t.head > n)
        throw ParseError(heads_[i], "head " + std::to_string(t.head) +
                                        " exceeds sentence length " +
                                        std::to_string(n));
      if (t.head == 0) ++roots;
    }
    if (roots != 1)
      warn(diag_, "conllu: sentence starting at line " +
                      std::to_string(first_line_) +
                      (story_id_.empty() ? "" : " of story '" + std::string(story_id_) + "'") +
                      " has " + std::to_string(roots) + " roots");
    current_.source_story_id = std::string(story_id_);
    current_.sentence_index = out.size();
    out.push_back(std::move(current_));
    current_ = {};
    heads_.clear();
  }

 private:
  std::string_view story_id_;
  Diagnostics* diag_;
  ConlluSentence current_;
  std::vector<std::size_t> heads_;
  std::size_t first_line_ = 0;
};

}  // namespace

std::vector<ConlluSentence> parse_conllu(std::istream& in,
                                         std::string_view source_story_id,
                                         Diagnostics* diag) {
  std::vector<ConlluSentence> out;
  SentenceBuilder builder(source_story_id, diag);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      builder.finish(out);
      continue;
    }
    if (line.front() == '#') continue;

    const auto cols = split_tabs(line);
    if (cols.size() != kColumns)
      throw ParseError(line_no, "expected 10 tab-separated columns, found " +
                                    std::to_string(cols.size()));
    const std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos ||
        id.find('.') != std::string_view::npos) {
      // Multiword range or empty node; validate the shape, then drop.
      const char sep = id.find('-') != std::string_view::npos ? '-' : '.';
      const auto pos = id.find(sep);
      int a = 0, b = 0;
      if (!parse_int(id.substr(0, pos), a) || !parse_int(id.substr(pos + 1), b))
        throw ParseError(line_no, "malformed token id '" + std::string(id) + "'");
      continue;
    }

    ConlluToken token;
    if (!parse_int(id, token.id) || token.id < 1)
      throw ParseError(line_no, "non-integer token id '" + std::string(id) + "'");
    if (!parse_int(cols[6], token.head) || token.head < 0)
      throw ParseError(line_no, "non-integer head '" + std::string(cols[6]) + "'");
    token.form = cols[1];
    token.lemma = cols[2];
    token.upos = cols[3];
    token.xpos = cols[4];
    token.feats = cols[5];
    token.deprel = cols[7];
    token.deps = cols[8];
    token.misc = cols[9];
    builder.add(std::move(token), line_no);
  }
  builder.finish(out);
  return out;
}

std::vector<ConlluSentence> parse_conllu(std::string_view text,
                                         std::string_view source_story_id,
                                         Diagnostics* diag) {
  std::istringstream in{std::string(text)};
  return parse_conllu(in, source_story_id, diag);
}

std::string serialize_conllu(const std::vector<ConlluSentence>& sentences) {
  std::string out;
  for (const auto& sentence : sentences) {
    for (const auto& t : sentence.tokens) {
      out += std::to_string(t.id);
      for (const std::string* col : {&t.form, &t.lemma, &t.upos, &t.xpos, &t.feats}) {
        out += '\t';
        out += *col;
      }
      out += '\t';
      out += std::to_string(t.head);
      for (const std::string* col : {&t.deprel, &t.deps, &t.misc}) {
        out += '\t';
        out += *col;
      }
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

}  // namespace storycmp
