#include <algorithm>
#include <cctype>

#include "storycmp/corpus_io.hpp"

namespace storycmp {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool starts_with_at(std::string_view s, std::size_t pos, std::string_view p) {
  return s.substr(pos, p.size()) == p;
}

// Byte length of a closing quote/bracket at `pos`, 0 if none.
std::size_t closer_len(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return 0;
  const char c = s[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  if (starts_with_at(s, pos, "”") || starts_with_at(s, pos, "’")) return 3;
  return 0;
}

std::size_t opener_len(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return 0;
  const char c = s[pos];
  if (c == '"' || c == '\'' || c == '(' || c == '[') return 1;
  if (starts_with_at(s, pos, "“") || starts_with_at(s, pos, "‘")) return 3;
  return 0;
}

// Word ending at `dot` (inclusive), without leading openers.
std::string_view word_ending_at(std::string_view s, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0 && !is_space(s[start - 1])) --start;
  std::string_view word = s.substr(start, dot - start + 1);
  while (std::size_t n = opener_len(word, 0)) word.remove_prefix(n);
  return word;
}

std::string normalize_segment(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

// Position just past a blank line starting at the '\n' at `pos`, or npos.
std::size_t blank_line_end(std::string_view s, std::size_t pos) {
  std::size_t k = pos + 1;
  while (k < s.size() && (s[k] == ' ' || s[k] == '\t' || s[k] == '\r')) ++k;
  if (k < s.size() && s[k] == '\n') return k + 1;
  return std::string_view::npos;
}

// UTF-8 punctuation commonly found around words in prose: general
// punctuation (curly quotes, dashes, ellipsis), guillemets, inverted marks.
std::size_t leading_punct_len(std::string_view t) {
  if (t.empty()) return 0;
  const auto c = static_cast<unsigned char>(t[0]);
  if (c < 0x80) return (c > 0x20 && c < 0x7F && !std::isalnum(c)) ? 1 : 0;
  if (t.size() >= 3 && c == 0xE2 &&
      (static_cast<unsigned char>(t[1]) == 0x80 ||
       static_cast<unsigned char>(t[1]) == 0x81))
    return 3;
  if (t.size() >= 2 && c == 0xC2) {
    const auto d = static_cast<unsigned char>(t[1]);
    if (d == 0xAB || d == 0xBB || d == 0xA1 || d == 0xBF) return 2;
  }
  return 0;
}

std::size_t trailing_punct_len(std::string_view t) {
  if (t.empty()) return 0;
  const auto c = static_cast<unsigned char>(t.back());
  if (c < 0x80) return (c > 0x20 && c < 0x7F && !std::isalnum(c)) ? 1 : 0;
  if (t.size() >= 3) {
    const auto a = static_cast<unsigned char>(t[t.size() - 3]);
    const auto b = static_cast<unsigned char>(t[t.size() - 2]);
    if (a == 0xE2 && (b == 0x80 || b == 0x81)) return 3;
  }
  if (t.size() >= 2 && static_cast<unsigned char>(t[t.size() - 2]) == 0xC2) {
    if (c == 0xAB || c == 0xBB || c == 0xA1 || c == 0xBF) return 2;
  }
  return 0;
}

}  // namespace

std::vector<std::string> segment_sentences(std::string_view text,
                                           const SegmentOptions& options) {
  std::vector<std::string> out;
  auto emit = [&](std::size_t from, std::size_t to) {
    std::string seg = normalize_segment(text.substr(from, to - from));
    if (!seg.empty()) out.push_back(std::move(seg));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n' && options.split_on_blank_lines) {
      if (std::size_t end = blank_line_end(text, i); end != std::string_view::npos) {
        emit(start, i);
        start = end;
        i = end;
        continue;
      }
    }
    if (!is_terminal(c)) {
      ++i;
      continue;
    }

    std::size_t j = i + 1;
    for (;;) {
      if (j < text.size() && is_terminal(text[j])) {
        ++j;
      } else if (std::size_t n = closer_len(text, j)) {
        j += n;
      } else {
        break;
      }
    }
    std::size_t k = j;
    while (k < text.size() && is_space(text[k])) ++k;
    if (k == j || k == text.size()) {
      i = j;
      continue;
    }
    std::size_t m = k;
    while (std::size_t n = opener_len(text, m)) m += n;
    const bool capital = m < text.size() && text[m] >= 'A' && text[m] <= 'Z';
    bool abbreviation = false;
    if (capital && c == '.' && j == i + 1) {
      const auto word = word_ending_at(text, i);
      abbreviation = std::find(options.abbreviations.begin(),
                               options.abbreviations.end(),
                               word) != options.abbreviations.end();
    }
    if (capital && !abbreviation) {
      emit(start, j);
      start = j;
    }
    i = j;
  }
  emit(start, text.size());
  return out;
}

std::vector<std::string_view> whitespace_tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  for (std::string_view tok : whitespace_tokens(sentence)) {
    while (std::size_t n = leading_punct_len(tok)) tok.remove_prefix(n);
    while (std::size_t n = trailing_punct_len(tok)) tok.remove_suffix(n);
    if (!tok.empty()) out.emplace_back(tok);
  }
  return out;
}

}  // namespace storycmp
