#include "storycmp/textstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "storycmp/error.hpp"

namespace storycmp {

namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_ascii_letter(char c) { return c >= 'a' && c <= 'z'; }

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::size_t count_syllables(std::string_view word) {
  if (word.empty()) throw ArgumentError("count_syllables: empty word");
  std::string w(word.size(), '\0');
  std::transform(word.begin(), word.end(), w.begin(), lower);

  std::size_t count = 0;
  bool in_run = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !in_run) ++count;
    in_run = v;
  }

  const std::size_t n = w.size();
  bool dropped_e = false;
  if (count > 1 && n >= 2 && w[n - 1] == 'e' && !is_vowel(w[n - 2])) {
    --count;
    dropped_e = true;
  }
  // "table", "little": the final e is voiced after consonant + l.
  if (dropped_e && n > 2 && w[n - 2] == 'l' && is_ascii_letter(w[n - 3]) &&
      !is_vowel(w[n - 3]))
    ++count;
  return std::max<std::size_t>(count, 1);
}

double fres(const DocumentStats& stats) {
  if (stats.total_sentences == 0) throw ArgumentError("fres: zero sentences");
  if (stats.total_words == 0) throw ArgumentError("fres: zero words");
  const double words = static_cast<double>(stats.total_words);
  const double words_per_sentence = words / static_cast<double>(stats.total_sentences);
  const double syllables_per_word = static_cast<double>(stats.total_syllables) / words;
  return 206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word;
}

std::vector<double> fres_in_range(std::span<const double> scores) {
  std::vector<double> out;
  std::copy_if(scores.begin(), scores.end(), std::back_inserter(out),
               [](double s) { return s >= 0.0 && s <= 100.0; });
  return out;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw ArgumentError("quantile of empty data");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

DistributionSummary summarize(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("summary of empty data");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  DistributionSummary s;
  s.n = values.size();
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
           static_cast<double>(sorted.size());

  const double iqr = s.q3 - s.q1;
  const double lo = s.q1 - 1.5 * iqr;
  const double hi = s.q3 + 1.5 * iqr;
  for (double v : values) {
    if (v < lo || v > hi)
      ++s.outlier_count;
    else
      s.values_retained.push_back(v);
  }
  return s;
}

DistributionSummary sentence_length_summary(std::span<const std::size_t> lengths) {
  std::vector<double> v(lengths.begin(), lengths.end());
  return summarize(v);
}

}  // namespace storycmp
