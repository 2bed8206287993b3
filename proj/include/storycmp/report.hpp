#pragma once

// Pipeline orchestration over configured corpora and the comparison report
// it produces: sentence length, readability, toxicity, topic overlap and
// structural overlap.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "storycmp/corpus_io.hpp"
#include "storycmp/error.hpp"
#include "storycmp/structure.hpp"
#include "storycmp/textstats.hpp"
#include "storycmp/topics.hpp"
#include "storycmp/toxicity.hpp"

namespace storycmp {

inline constexpr const char* kToxicityEndpointEnv = "STORYCMP_TOXICITY_ENDPOINT";
inline constexpr const char* kCompletionEndpointEnv = "STORYCMP_COMPLETION_ENDPOINT";

struct CorpusInput {
  std::filesystem::path manifest;
  std::optional<std::filesystem::path> conllu_dir;
};

enum class ToxicityScorer { lexicon, remote };

struct PipelineConfig {
  std::vector<CorpusInput> corpora;
  std::optional<std::filesystem::path> lexicon;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> names;

  bool sentence_length = true;
  bool fres = true;
  bool toxicity = true;
  bool topics = true;
  bool structure = true;

  LdaParams lda;
  std::size_t topic_top_n = 10;
  PreprocessOptions preprocess;
  int wl_iterations = kDefaultWlIterations;

  ToxicityScorer scorer = ToxicityScorer::lexicon;
  std::string toxicity_endpoint;
  bool fallback_to_lexicon = false;

  SegmentOptions segmentation;
};

// JSON config; relative paths resolve against the config file's directory.
// STORYCMP_TOXICITY_ENDPOINT, when set, overrides the toxicity endpoint.
// Throws ConfigError for unreadable or malformed configs.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
PipelineConfig parse_pipeline_config(std::string_view json_text,
                                     const std::filesystem::path& base_dir);

struct SkipRecord {
  std::string section;
  std::string corpus;  // empty when the whole section was skipped
  std::string reason;
};

struct CorpusInfo {
  std::string label;
  std::size_t stories = 0;
  std::size_t sentences = 0;
};

struct SentenceLengthEntry {
  std::string corpus;
  DistributionSummary summary;
};

struct FresEntry {
  std::string corpus;
  std::vector<std::string> story_ids;
  std::vector<double> scores;
  DistributionSummary all;
  std::optional<DistributionSummary> in_range;
};

struct ToxicityEntry {
  std::string corpus;
  std::size_t sentence_count = 0;
  std::array<ToxicityHistogram, kToxicityCategoryCount> histograms;
};

struct TopicModelEntry {
  std::string corpus;
  std::vector<std::vector<std::string>> keywords;  // per topic
};

struct TopicPairEntry {
  std::string corpus_a, corpus_b;
  TopicOverlap overlap;
};

struct TopicSection {
  std::size_t topics = 0;
  std::size_t top_n = 0;
  std::vector<TopicModelEntry> models;
  std::vector<TopicPairEntry> pairs;  // every i < j in corpus order
};

struct StructureProfileEntry {
  std::string corpus;
  std::size_t sentence_count = 0;
  std::size_t distinct = 0;
};

struct StructureSection {
  int wl_iterations = kDefaultWlIterations;
  std::vector<StructureProfileEntry> profiles;
  // [row][col] over `profiles`; directional[i][j] = 100 |Hi n Hj| / |Hi|.
  std::vector<std::vector<double>> jaccard;
  std::vector<std::vector<double>> directional;
};

struct ComparisonReport {
  std::vector<CorpusInfo> corpora;
  std::optional<std::vector<SentenceLengthEntry>> sentence_length;
  std::optional<std::vector<FresEntry>> fres;
  std::optional<std::vector<ToxicityEntry>> toxicity;
  std::optional<TopicSection> topic_overlap;
  std::optional<StructureSection> structural_overlap;
  std::vector<SkipRecord> skipped;

  bool has_skips() const { return !skipped.empty(); }
};

// Loads every corpus and runs the enabled analyses. Analyses lacking inputs
// are skipped with a recorded reason. Throws ConfigError when fewer than two
// corpora are configured.
ComparisonReport run_pipeline(const PipelineConfig& config, Diagnostics* diag = nullptr);
ComparisonReport run_pipeline(const std::filesystem::path& config_path,
                              Diagnostics* diag = nullptr);

enum class ReportFormat { json, csv_bundle };

ReportFormat parse_report_format(std::string_view s);

std::string report_to_json(const ComparisonReport& report);

// json: `<out_dir>/report.json`. csv_bundle: one CSV per section plus
// skipped.csv. Returns the files written.
std::vector<std::filesystem::path> emit(const ComparisonReport& report, ReportFormat format,
                                        const std::filesystem::path& out_dir);

}  // namespace storycmp
