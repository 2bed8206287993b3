#pragma once

// Topic modeling: preprocessing, LDA by collapsed Gibbs sampling, keyword
// extraction and cross-model topic overlap.

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "storycmp/corpus_io.hpp"
#include "storycmp/error.hpp"

namespace storycmp {

using TermSet = std::set<std::string, std::less<>>;

// One lowercase term per line; '#' starts a comment line.
TermSet load_term_list(const std::filesystem::path& path);
TermSet parse_term_list(std::string_view text);

struct PreprocessOptions {
  std::size_t min_token_length = 3;
  // A capitalized token whose lowercase form occurs uncapitalized fewer than
  // this many times in the corpus is treated as a name. 0 disables the check.
  std::size_t min_lowercase_occurrences = 1;
};

struct PreprocessedDocs {
  std::vector<std::string> vocabulary;           // first-appearance order
  std::vector<std::vector<std::uint32_t>> docs;  // one per story, corpus order
  std::vector<std::string> doc_ids;
  std::size_t removed_stopwords = 0;
  std::size_t removed_names = 0;
  std::size_t removed_short = 0;
};

// Throws ArgumentError on an empty stopword list and Error when nothing
// survives filtering. Documents left empty are kept and reported through
// `diag`.
PreprocessedDocs preprocess(const Corpus& corpus, const TermSet& stopwords,
                            const TermSet& names, const PreprocessOptions& options = {},
                            Diagnostics* diag = nullptr);

struct LdaParams {
  std::size_t topics = 4;
  double alpha = 0;  // 0 selects 50 / topics
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::uint64_t seed = 42;

  double effective_alpha() const { return alpha > 0 ? alpha : 50.0 / static_cast<double>(topics); }
};

struct TopicModel {
  std::size_t topics = 0;
  double alpha = 0;
  double beta = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  std::vector<std::string> vocabulary;
  std::vector<std::vector<double>> phi;    // topics x vocabulary
  std::vector<std::vector<double>> theta;  // documents x topics
};

// Collapsed Gibbs sampling; point estimates from the final chain state with
// prior smoothing. Single-threaded and deterministic for a given seed.
// Throws ArgumentError for fewer than 2 topics, zero iterations or fewer
// non-empty documents than topics.
TopicModel fit_lda(const PreprocessedDocs& docs, const LdaParams& params);

// Highest-probability terms of `topic`; ties go to the lower vocabulary index.
std::vector<std::string> top_keywords(const TopicModel& model, std::size_t topic,
                                      std::size_t n);

struct TopicOverlap {
  std::vector<std::vector<double>> grid;  // [topic in A][topic in B], Jaccard
  std::size_t most_shared_a = 0, most_shared_b = 0;
  std::vector<std::string> most_shared_words;  // intersection
  std::size_t least_shared_a = 0, least_shared_b = 0;
  std::vector<std::string> least_shared_words;  // symmetric difference
};

// Jaccard similarity of top-n keyword sets for every topic pair. Ties for the
// extreme cells resolve to the first cell in row-major order.
TopicOverlap topic_overlap(const TopicModel& a, const TopicModel& b, std::size_t n = 10);

// JSON dump with topics, priors, seed, iterations, vocabulary, phi and theta.
void save_topic_model(const TopicModel& model, const std::filesystem::path& path);
TopicModel load_topic_model(const std::filesystem::path& path);

}  // namespace storycmp
