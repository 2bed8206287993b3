#pragma once

// Per-sentence toxicity scores over six categories and their binned
// percentage histograms.

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace storycmp {

enum class ToxicityCategory {
  toxic,
  severe_toxic,
  obscene,
  threat,
  insult,
  identity_hate,
};

inline constexpr std::size_t kToxicityCategoryCount = 6;
inline constexpr std::array<ToxicityCategory, kToxicityCategoryCount> kToxicityCategories{
    ToxicityCategory::toxic,  ToxicityCategory::severe_toxic,
    ToxicityCategory::obscene, ToxicityCategory::threat,
    ToxicityCategory::insult, ToxicityCategory::identity_hate};

// Wire names: "toxic", "severe_toxic", "obscene", "threat", "insult",
// "identity_hate".
std::string_view to_string(ToxicityCategory c);
std::optional<ToxicityCategory> parse_toxicity_category(std::string_view s);

struct ToxicityScores {
  std::array<double, kToxicityCategoryCount> values{};

  double operator[](ToxicityCategory c) const { return values[static_cast<std::size_t>(c)]; }
  double& operator[](ToxicityCategory c) { return values[static_cast<std::size_t>(c)]; }
  bool operator==(const ToxicityScores&) const = default;
};

inline constexpr std::size_t kToxicityBins = 10;

struct ToxicityHistogram {
  ToxicityCategory category = ToxicityCategory::toxic;
  std::array<double, kToxicityBins> bins{};  // percentages
  std::size_t sentence_count = 0;
};

class ToxicityLexicon {
 public:
  using Weights = std::array<double, kToxicityCategoryCount>;

  // Throws ArgumentError for an empty or non-lowercase term, or a weight
  // outside [0, 1].
  void add(std::string term, const Weights& weights);
  const Weights* find(std::string_view term) const;
  std::size_t size() const { return entries_.size(); }

  // Line format: term<TAB>category=weight[,category=weight...]
  // Blank lines and '#' comments are skipped. Throws ParseError with the line
  // number on malformed rows.
  static ToxicityLexicon load(const std::filesystem::path& path);
  static ToxicityLexicon parse(std::string_view text);

 private:
  std::map<std::string, Weights, std::less<>> entries_;
};

// score = 1 - prod(1 - w_i) over matched tokens, per category. Tokens come
// from tokenize() and are lowercased before lookup.
ToxicityScores score_sentence_lexicon(std::string_view sentence,
                                      const ToxicityLexicon& lexicon);

// Remote scorer speaking the sidecar /toxicity contract:
//   POST /toxicity {"sentences": [...]}
//   200 {"scores": [{"toxic": x, "severe_toxic": x, ...}, ...]}
// `endpoint` is a base URL such as "http://127.0.0.1:8085".
struct RemoteScorerOptions {
  std::size_t batch_size = 64;
  std::size_t max_in_flight = 4;
  int timeout_seconds = 60;
};

ToxicityScores score_sentence_remote(std::string_view sentence,
                                     const std::string& endpoint);
// Results come back in input order regardless of request interleaving.
std::vector<ToxicityScores> score_sentences_remote(
    std::span<const std::string> sentences, const std::string& endpoint,
    const RemoteScorerOptions& options = {});

// Ten bins of width 0.1, half-open except the last, which is closed at 1.0.
// Throws ArgumentError for a score outside [0, 1].
std::size_t toxicity_bin(double score);
ToxicityHistogram bin_scores(std::span<const double> scores, ToxicityCategory category);
std::array<ToxicityHistogram, kToxicityCategoryCount> bin_all(
    std::span<const ToxicityScores> scores);

struct HistogramRow {
  std::string label;  // "[0.1,0.2)" ... "[0.9,1.0]"
  double percent = 0;
};

std::vector<HistogramRow> render_histogram(const ToxicityHistogram& h, bool omit_first_bin);

}  // namespace storycmp
