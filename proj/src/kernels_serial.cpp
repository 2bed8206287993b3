#include "storycmp/kernels.hpp"

namespace storycmp::kernels {

StoryMeasures measure_story(const Story& story, const SegmentOptions& options) {
  StoryMeasures m;
  m.sentences = segment_sentences(story.text, options);
  m.sentence_lengths.reserve(m.sentences.size());
  m.stats.total_sentences = m.sentences.size();
  for (const auto& sentence : m.sentences) {
    const auto words = tokenize(sentence);
    m.sentence_lengths.push_back(words.size());
    m.stats.total_words += words.size();
    for (const auto& w : words) m.stats.total_syllables += count_syllables(w);
  }
  return m;
}

std::vector<StoryMeasures> measure_stories_serial(std::span<const Story> stories,
                                                  const SegmentOptions& options) {
  std::vector<StoryMeasures> out;
  out.reserve(stories.size());
  for (const auto& story : stories) out.push_back(measure_story(story, options));
  return out;
}

std::vector<std::string> hash_graphs_serial(std::span<const DependencyGraph> graphs,
                                            int iterations) {
  std::vector<std::string> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) out.push_back(wl_hash(g, iterations));
  return out;
}

std::vector<ToxicityScores> score_lexicon_serial(std::span<const std::string> sentences,
                                                 const ToxicityLexicon& lexicon) {
  std::vector<ToxicityScores> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(score_sentence_lexicon(s, lexicon));
  return out;
}

}  // namespace storycmp::kernels
