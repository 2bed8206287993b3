#pragma once

// Readability and sentence-length statistics.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace storycmp {

struct DocumentStats {
  std::size_t total_sentences = 0;
  std::size_t total_words = 0;
  std::size_t total_syllables = 0;

  bool operator==(const DocumentStats&) const = default;
};

// Five-number summary plus the IQR-fence outlier split.
struct DistributionSummary {
  std::size_t n = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  double mean = 0;
  std::size_t outlier_count = 0;
  std::vector<double> values_retained;  // input order
};

// Vowel-run syllable heuristic (a, e, i, o, u, y), with the silent-e and
// consonant+"le" adjustments. Always >= 1. Throws ArgumentError on "".
std::size_t count_syllables(std::string_view word);

// Flesch reading ease:
//   206.835 - 1.015 * words/sentences - 84.6 * syllables/words
// Not clamped; prose with very short words scores above 100.
double fres(const DocumentStats& stats);

// Scores within the well-defined [0, 100] band, order preserved.
std::vector<double> fres_in_range(std::span<const double> scores);

// Quantile by linear interpolation between closest ranks of sorted data
// (h = (n - 1) * p).
double quantile_sorted(std::span<const double> sorted, double p);

// Quartiles, then values outside [q1 - 1.5 IQR, q3 + 1.5 IQR] counted as
// outliers. Throws ArgumentError on empty input.
DistributionSummary summarize(std::span<const double> values);
DistributionSummary sentence_length_summary(std::span<const std::size_t> lengths);

}  // namespace storycmp
