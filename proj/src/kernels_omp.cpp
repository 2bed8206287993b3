#include <omp.h>

#include <cstdint>

#include "storycmp/kernels.hpp"

namespace storycmp::kernels {

// Each iteration writes only its own output slot, so results match the
// serial kernels exactly and in order.

std::vector<StoryMeasures> measure_stories_omp(std::span<const Story> stories,
                                               const SegmentOptions& options) {
  std::vector<StoryMeasures> out(stories.size());
  const auto n = static_cast<std::int64_t>(stories.size());
  // Story lengths vary by orders of magnitude.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) out[i] = measure_story(stories[i], options);
  return out;
}

std::vector<std::string> hash_graphs_omp(std::span<const DependencyGraph> graphs,
                                         int iterations) {
  std::vector<std::string> out(graphs.size());
  const auto n = static_cast<std::int64_t>(graphs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = wl_hash(graphs[i], iterations);
  return out;
}

std::vector<ToxicityScores> score_lexicon_omp(std::span<const std::string> sentences,
                                              const ToxicityLexicon& lexicon) {
  std::vector<ToxicityScores> out(sentences.size());
  const auto n = static_cast<std::int64_t>(sentences.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = score_sentence_lexicon(sentences[i], lexicon);
  return out;
}

}  // namespace storycmp::kernels
