#pragma once

// Data-parallel inner loops of the pipeline. Each kernel has an OpenMP
// version used by the pipeline and a serial reference kept for tests and
// the benchmark; both must produce identical output.

#include <span>
#include <string>
#include <vector>

#include "storycmp/corpus_io.hpp"
#include "storycmp/structure.hpp"
#include "storycmp/textstats.hpp"
#include "storycmp/toxicity.hpp"

namespace storycmp::kernels {

struct StoryMeasures {
  std::vector<std::string> sentences;
  std::vector<std::size_t> sentence_lengths;  // word tokens per sentence
  DocumentStats stats;

  bool operator==(const StoryMeasures&) const = default;
};

StoryMeasures measure_story(const Story& story, const SegmentOptions& options = {});

std::vector<StoryMeasures> measure_stories_serial(std::span<const Story> stories,
                                                  const SegmentOptions& options = {});
std::vector<StoryMeasures> measure_stories_omp(std::span<const Story> stories,
                                               const SegmentOptions& options = {});

std::vector<std::string> hash_graphs_serial(std::span<const DependencyGraph> graphs,
                                            int iterations);
std::vector<std::string> hash_graphs_omp(std::span<const DependencyGraph> graphs,
                                         int iterations);

std::vector<ToxicityScores> score_lexicon_serial(std::span<const std::string> sentences,
                                                 const ToxicityLexicon& lexicon);
std::vector<ToxicityScores> score_lexicon_omp(std::span<const std::string> sentences,
                                              const ToxicityLexicon& lexicon);

}  // namespace storycmp::kernels

