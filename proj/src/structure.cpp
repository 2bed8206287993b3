#include "storycmp/structure.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <charconv>

#include "storycmp/kernels.hpp"

namespace storycmp {

namespace {

// Each token has one head, so with a single root the graph is a tree exactly
// when no head chain cycles.
bool heads_reach_root(const ConlluSentence& sentence) {
  const std::size_t n = sentence.tokens.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t v = i, steps = 0;
    while (sentence.tokens[v].head != 0 && steps++ <= n)
      v = static_cast<std::size_t>(sentence.tokens[v].head - 1);
    if (sentence.tokens[v].head != 0) return false;
  }
  return true;
}

}  // namespace

DependencyGraph graph_from_conllu(const ConlluSentence& sentence, Diagnostics* diag) {
  if (sentence.tokens.empty()) throw ArgumentError("graph_from_conllu: empty sentence");
  DependencyGraph g;
  g.node_count = sentence.tokens.size();
  std::size_t roots = 0;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const int head = sentence.tokens[i].head;
    if (head == 0) {
      ++roots;
      continue;
    }
    const auto h = static_cast<std::size_t>(head - 1);
    if (h >= g.node_count)
      throw ValidationError("head " + std::to_string(head) + " beyond sentence length");
    if (h == i) {
      warn(diag, "structure: dropped self-loop at token " + std::to_string(i + 1) +
                     " of sentence " + std::to_string(sentence.sentence_index) + " in story '" +
                     sentence.source_story_id + "'");
      continue;
    }
    g.edges.emplace_back(h, i);
  }
  std::sort(g.edges.begin(), g.edges.end());
  if (roots != 1 || g.edges.size() + 1 != g.node_count || !heads_reach_root(sentence))
    warn(diag, "structure: sentence " + std::to_string(sentence.sentence_index) + " in story '" +
                   sentence.source_story_id + "' is not a tree (" +
                   std::to_string(g.edges.size()) + " edges, " + std::to_string(g.node_count) +
                   " nodes); hashing as-is");
  return g;
}

void validate_graph(const DependencyGraph& graph) {
  for (const auto& [h, d] : graph.edges) {
    if (h >= graph.node_count || d >= graph.node_count)
      throw ValidationError("edge endpoint out of range");
    if (h == d) throw ValidationError("self-loop");
  }
}

namespace {

std::string digest(const std::string& data) {
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(32);
  for (int i = 0; i < 16; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xF];
  }
  return out;
}

void append_sorted(std::string& buf, std::vector<const std::string*>& labels) {
  std::sort(labels.begin(), labels.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  for (const auto* l : labels) {
    buf += *l;
    buf += ',';
  }
}

}  // namespace

std::string wl_hash(const DependencyGraph& graph, int iterations) {
  const std::size_t n = graph.node_count;
  std::vector<std::vector<std::size_t>> preds(n), succs(n);
  for (const auto& [h, d] : graph.edges) {
    succs[h].push_back(d);
    preds[d].push_back(h);
  }

  std::vector<std::string> labels(n);
  for (std::size_t v = 0; v < n; ++v)
    labels[v] = std::to_string(preds[v].size()) + ":" + std::to_string(succs[v].size());

  std::vector<std::string> next(n);
  std::vector<const std::string*> scratch;
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t v = 0; v < n; ++v) {
      std::string buf = labels[v];
      buf += "|in:";
      scratch.clear();
      for (auto u : preds[v]) scratch.push_back(&labels[u]);
      append_sorted(buf, scratch);
      buf += "|out:";
      scratch.clear();
      for (auto u : succs[v]) scratch.push_back(&labels[u]);
      append_sorted(buf, scratch);
      next[v] = digest(buf);
    }
    labels.swap(next);
  }

  std::sort(labels.begin(), labels.end());
  std::string buf = "n=" + std::to_string(n) + "|";
  for (const auto& l : labels) {
    buf += l;
    buf += ',';
  }
  return digest(buf);
}

// ---------------------------------------------------------------------------
// Profiles

void HashProfile::add(const std::string& hash, std::size_t count) {
  multiplicity[hash] += count;
  sentence_count += count;
}

void HashProfile::merge(const HashProfile& other) {
  for (const auto& [h, c] : other.multiplicity) add(h, c);
}

HashProfile corpus_hash_profile(const Corpus& corpus, const ParseMap& parses, int iterations,
                                Diagnostics* diag) {
  std::vector<DependencyGraph> graphs;
  for (const auto& story : corpus.stories) {
    auto it = parses.find(story.id);
    if (it == parses.end())
      throw ArgumentError("story '" + story.id + "' of corpus '" + corpus.label +
                          "' has no dependency parses");
    for (const auto& sentence : it->second) graphs.push_back(graph_from_conllu(sentence, diag));
  }
  if (graphs.empty())
    throw ArgumentError("corpus '" + corpus.label + "' has no parsed sentences");

  HashProfile profile;
  profile.corpus_label = corpus.label;
  for (const auto& h : kernels::hash_graphs_omp(graphs, iterations)) profile.add(h);
  return profile;
}

OverlapRatios structural_overlap_ratios(const HashProfile& a, const HashProfile& b) {
  if (a.multiplicity.empty() || b.multiplicity.empty())
    throw ArgumentError("structural_overlap: empty hash profile");
  std::size_t shared = 0;
  auto ia = a.multiplicity.begin();
  auto ib = b.multiplicity.begin();
  while (ia != a.multiplicity.end() && ib != b.multiplicity.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      ++shared;
      ++ia;
      ++ib;
    }
  }
  const auto na = static_cast<double>(a.distinct());
  const auto nb = static_cast<double>(b.distinct());
  const auto s = static_cast<double>(shared);
  OverlapRatios r;
  r.shared = shared;
  r.jaccard = 100.0 * s / (na + nb - s);
  r.a_in_b = 100.0 * s / na;
  r.b_in_a = 100.0 * s / nb;
  return r;
}

double structural_overlap(const HashProfile& a, const HashProfile& b) {
  return structural_overlap_ratios(a, b).jaccard;
}

std::string serialize_hash_profile(const HashProfile& profile) {
  std::string out;
  for (const auto& [h, c] : profile.multiplicity) {
    out += h;
    out += '\t';
    out += std::to_string(c);
    out += '\n';
  }
  return out;
}

HashProfile parse_hash_profile(std::string_view text, std::string label) {
  HashProfile p;
  p.corpus_label = std::move(label);
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0)
      throw ParseError(line_no, "expected hash<TAB>count");
    std::size_t count = 0;
    const auto num = line.substr(tab + 1);
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), count);
    if (ec != std::errc() || ptr != num.data() + num.size() || count == 0)
      throw ParseError(line_no, "bad count '" + std::string(num) + "'");
    p.add(std::string(line.substr(0, tab)), count);
  }
  return p;
}

void save_hash_profile(const HashProfile& profile, const std::filesystem::path& path) {
  write_text_file(path, serialize_hash_profile(profile));
}

HashProfile load_hash_profile(const std::filesystem::path& path, std::string label) {
  return parse_hash_profile(read_text_file(path), std::move(label));
}

}  // namespace storycmp
