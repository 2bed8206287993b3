#pragma once

// Dependency parses reduced to unlabeled directed graphs, Weisfeiler-Lehman
// hashing, and corpus-level hash overlap.

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "storycmp/corpus_io.hpp"
#include "storycmp/error.hpp"

namespace storycmp {

struct DependencyGraph {
  std::size_t node_count = 0;
  // (head, dependent), 0-based token indices, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// One node per token and an edge head -> dependent for every non-root
// token. Word forms, labels and the synthetic root are discarded. Self-loops
// are dropped and non-tree shapes kept, both with a warning. Throws
// ArgumentError for an empty sentence.
DependencyGraph graph_from_conllu(const ConlluSentence& sentence, Diagnostics* diag = nullptr);

// Throws ValidationError if an endpoint is out of range or an edge is a
// self-loop.
void validate_graph(const DependencyGraph& graph);

inline constexpr int kDefaultWlIterations = 3;

// Directed WL hash: nodes start labeled (in-degree, out-degree); each round
// relabels a node with the digest of its label and the sorted label multisets
// of its predecessors and successors. The result digests the node count and
// the sorted final labels. Digests are truncated SHA-256, rendered as 32
// lowercase hex characters.
std::string wl_hash(const DependencyGraph& graph, int iterations = kDefaultWlIterations);

struct HashProfile {
  std::string corpus_label;
  std::size_t sentence_count = 0;
  std::map<std::string, std::size_t> multiplicity;

  std::size_t distinct() const { return multiplicity.size(); }
  void add(const std::string& hash, std::size_t count = 1);
  // Commutative merge.
  void merge(const HashProfile& other);
};

// Hashes every sentence of every story. Throws ArgumentError naming the first
// story without parses, or when the corpus has no sentences at all.
HashProfile corpus_hash_profile(const Corpus& corpus, const ParseMap& parses,
                                int iterations = kDefaultWlIterations,
                                Diagnostics* diag = nullptr);

struct OverlapRatios {
  double jaccard = 0;     // 100 |A n B| / |A u B|
  double a_in_b = 0;      // 100 |A n B| / |A|
  double b_in_a = 0;      // 100 |A n B| / |B|
  std::size_t shared = 0;
};

// Percent Jaccard overlap of the distinct hash sets. Throws ArgumentError
// for an empty profile.
double structural_overlap(const HashProfile& a, const HashProfile& b);
OverlapRatios structural_overlap_ratios(const HashProfile& a, const HashProfile& b);

// "hash<TAB>count" lines in hash order.
std::string serialize_hash_profile(const HashProfile& profile);
HashProfile parse_hash_profile(std::string_view text, std::string label = {});
void save_hash_profile(const HashProfile& profile, const std::filesystem::path& path);
HashProfile load_hash_profile(const std::filesystem::path& path, std::string label = {});

}  // namespace storycmp
