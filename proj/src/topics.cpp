#include "storycmp/topics.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "json.hpp"

namespace storycmp {

using nlohmann::json;

TermSet parse_term_list(std::string_view text) {
  TermSet terms;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    terms.insert(to_lower_ascii(line));
  }
  return terms;
}

TermSet load_term_list(const std::filesystem::path& path) {
  return parse_term_list(read_text_file(path));
}

// ---------------------------------------------------------------------------
// Preprocessing

namespace {

bool has_letter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || static_cast<unsigned char>(c) >= 0x80;
  });
}

bool is_capitalized(std::string_view s) { return !s.empty() && s[0] >= 'A' && s[0] <= 'Z'; }

bool is_all_lower(std::string_view s) {
  return std::none_of(s.begin(), s.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

std::string_view strip_possessive(std::string_view s) {
  for (std::string_view suffix : {std::string_view("'s"), std::string_view("’s")}) {
    if (s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix)
      return s.substr(0, s.size() - suffix.size());
  }
  return s;
}

}  // namespace

PreprocessedDocs preprocess(const Corpus& corpus, const TermSet& stopwords, const TermSet& names,
                            const PreprocessOptions& options, Diagnostics* diag) {
  if (stopwords.empty()) throw ArgumentError("preprocess: stopword list is empty");

  std::vector<std::vector<std::string>> raw_docs;
  raw_docs.reserve(corpus.stories.size());
  std::unordered_map<std::string, std::size_t> lowercase_uses;
  for (const auto& story : corpus.stories) {
    auto& tokens = raw_docs.emplace_back();
    for (const auto& sentence : segment_sentences(story.text))
      for (auto& token : tokenize(sentence)) {
        std::string t(strip_possessive(token));
        if (is_all_lower(t)) ++lowercase_uses[t];
        tokens.push_back(std::move(t));
      }
  }

  PreprocessedDocs out;
  std::unordered_map<std::string, std::uint32_t> index;
  std::size_t kept = 0;
  for (std::size_t d = 0; d < raw_docs.size(); ++d) {
    auto& ids = out.docs.emplace_back();
    out.doc_ids.push_back(corpus.stories[d].id);
    for (const auto& token : raw_docs[d]) {
      if (!has_letter(token)) continue;
      const std::string lower = to_lower_ascii(token);
      if (stopwords.contains(lower)) {
        ++out.removed_stopwords;
        continue;
      }
      if (names.contains(lower)) {
        ++out.removed_names;
        continue;
      }
      if (lower.size() < options.min_token_length) {
        ++out.removed_short;
        continue;
      }
      if (options.min_lowercase_occurrences > 0 && is_capitalized(token)) {
        auto it = lowercase_uses.find(lower);
        const std::size_t uses = it == lowercase_uses.end() ? 0 : it->second;
        if (uses < options.min_lowercase_occurrences) {
          ++out.removed_names;
          continue;
        }
      }
      auto [it, inserted] = index.try_emplace(lower, static_cast<std::uint32_t>(out.vocabulary.size()));
      if (inserted) out.vocabulary.push_back(lower);
      ids.push_back(it->second);
      ++kept;
    }
    if (ids.empty())
      warn(diag, "topics: story '" + corpus.stories[d].id + "' has no tokens after preprocessing");
  }
  if (kept == 0)
    throw Error("preprocessing removed every token of corpus '" + corpus.label + "'");
  return out;
}

// ---------------------------------------------------------------------------
// LDA

namespace {

// mt19937_64 output is fixed by the standard; the distributions in <random>
// are not, so draws are derived from raw output.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TopicModel fit_lda(const PreprocessedDocs& docs, const LdaParams& params) {
  const std::size_t K = params.topics;
  if (K < 2) throw ArgumentError("fit_lda: need at least 2 topics");
  if (params.iterations < 1) throw ArgumentError("fit_lda: need at least 1 iteration");
  if (!(params.beta > 0)) throw ArgumentError("fit_lda: beta must be positive");
  const double alpha = params.effective_alpha();
  const double beta = params.beta;
  const std::size_t non_empty = static_cast<std::size_t>(std::count_if(
      docs.docs.begin(), docs.docs.end(), [](const auto& d) { return !d.empty(); }));
  if (non_empty < K)
    throw ArgumentError("fit_lda: " + std::to_string(non_empty) + " non-empty documents for " +
                        std::to_string(K) + " topics");

  const std::size_t V = docs.vocabulary.size();
  const std::size_t D = docs.docs.size();
  const double v_beta = static_cast<double>(V) * beta;

  std::mt19937_64 rng(params.seed);
  std::vector<std::vector<std::uint32_t>> z(D);
  std::vector<std::uint32_t> doc_topic(D * K, 0);
  std::vector<std::uint32_t> topic_word(K * V, 0);
  std::vector<std::uint32_t> topic_total(K, 0);

  for (std::size_t d = 0; d < D; ++d) {
    z[d].resize(docs.docs[d].size());
    for (std::size_t i = 0; i < docs.docs[d].size(); ++i) {
      const auto k = static_cast<std::uint32_t>(rng() % K);
      const auto w = docs.docs[d][i];
      z[d][i] = k;
      ++doc_topic[d * K + k];
      ++topic_word[k * V + w];
      ++topic_total[k];
    }
  }

  std::vector<double> cumulative(K);
  for (std::size_t iter = 0; iter < params.iterations; ++iter) {
    for (std::size_t d = 0; d < D; ++d) {
      for (std::size_t i = 0; i < docs.docs[d].size(); ++i) {
        const auto w = docs.docs[d][i];
        std::uint32_t k = z[d][i];
        --doc_topic[d * K + k];
        --topic_word[k * V + w];
        --topic_total[k];

        double total = 0;
        for (std::size_t t = 0; t < K; ++t) {
          total += (doc_topic[d * K + t] + alpha) * (topic_word[t * V + w] + beta) /
                   (topic_total[t] + v_beta);
          cumulative[t] = total;
        }
        const double u = uniform01(rng) * total;
        k = static_cast<std::uint32_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        if (k >= K) k = static_cast<std::uint32_t>(K - 1);

        z[d][i] = k;
        ++doc_topic[d * K + k];
        ++topic_word[k * V + w];
        ++topic_total[k];
      }
    }
  }

  TopicModel model;
  model.topics = K;
  model.alpha = alpha;
  model.beta = beta;
  model.seed = params.seed;
  model.iterations = params.iterations;
  model.vocabulary = docs.vocabulary;
  model.phi.assign(K, std::vector<double>(V));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t w = 0; w < V; ++w)
      model.phi[k][w] = (topic_word[k * V + w] + beta) / (topic_total[k] + v_beta);
  model.theta.assign(D, std::vector<double>(K));
  const double k_alpha = static_cast<double>(K) * alpha;
  for (std::size_t d = 0; d < D; ++d)
    for (std::size_t k = 0; k < K; ++k)
      model.theta[d][k] =
          (doc_topic[d * K + k] + alpha) / (static_cast<double>(docs.docs[d].size()) + k_alpha);
  return model;
}

std::vector<std::string> top_keywords(const TopicModel& model, std::size_t topic, std::size_t n) {
  if (topic >= model.topics) throw ArgumentError("top_keywords: topic index out of range");
  const auto& row = model.phi[topic];
  if (n > row.size()) throw ArgumentError("top_keywords: n exceeds vocabulary size");
  std::vector<std::size_t> order(row.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (row[a] != row[b]) return row[a] > row[b];
                      return a < b;
                    });
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(model.vocabulary[order[i]]);
  return out;
}

// ---------------------------------------------------------------------------
// Overlap

TopicOverlap topic_overlap(const TopicModel& a, const TopicModel& b, std::size_t n) {
  auto keywords = [n](const TopicModel& m) {
    std::vector<std::vector<std::string>> out;
    const std::size_t take = std::min(n, m.vocabulary.size());
    for (std::size_t k = 0; k < m.topics; ++k) out.push_back(top_keywords(m, k, take));
    return out;
  };
  const auto ka = keywords(a);
  const auto kb = keywords(b);
  auto contains = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };

  TopicOverlap out;
  out.grid.assign(a.topics, std::vector<double>(b.topics, 0.0));
  double best = -1, worst = 2;
  for (std::size_t i = 0; i < a.topics; ++i) {
    for (std::size_t j = 0; j < b.topics; ++j) {
      std::size_t shared = 0;
      for (const auto& w : ka[i]) shared += contains(kb[j], w) ? 1 : 0;
      const std::size_t uni = ka[i].size() + kb[j].size() - shared;
      const double value = uni == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(uni);
      out.grid[i][j] = value;
      if (value > best) {
        best = value;
        out.most_shared_a = i;
        out.most_shared_b = j;
      }
      if (value < worst) {
        worst = value;
        out.least_shared_a = i;
        out.least_shared_b = j;
      }
    }
  }

  if (a.topics > 0 && b.topics > 0) {
    for (const auto& w : ka[out.most_shared_a])
      if (contains(kb[out.most_shared_b], w)) out.most_shared_words.push_back(w);
    const auto& la = ka[out.least_shared_a];
    const auto& lb = kb[out.least_shared_b];
    for (const auto& w : la)
      if (!contains(lb, w)) out.least_shared_words.push_back(w);
    for (const auto& w : lb)
      if (!contains(la, w)) out.least_shared_words.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistence

void save_topic_model(const TopicModel& model, const std::filesystem::path& path) {
  const json doc = {{"topics", model.topics},   {"alpha", model.alpha},
                    {"beta", model.beta},       {"seed", model.seed},
                    {"iterations", model.iterations}, {"vocabulary", model.vocabulary},
                    {"phi", model.phi},         {"theta", model.theta}};
  write_text_file(path, doc.dump(1) + "\n");
}

TopicModel load_topic_model(const std::filesystem::path& path) {
  try {
    const json doc = json::parse(read_text_file(path));
    TopicModel m;
    m.topics = doc.at("topics").get<std::size_t>();
    m.alpha = doc.at("alpha").get<double>();
    m.beta = doc.at("beta").get<double>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.iterations = doc.at("iterations").get<std::size_t>();
    m.vocabulary = doc.at("vocabulary").get<std::vector<std::string>>();
    m.phi = doc.at("phi").get<std::vector<std::vector<double>>>();
    m.theta = doc.value("theta", std::vector<std::vector<double>>{});
    if (m.phi.size() != m.topics)
      throw ValidationError("phi has " + std::to_string(m.phi.size()) + " rows for " +
                            std::to_string(m.topics) + " topics");
    for (const auto& row : m.phi)
      if (row.size() != m.vocabulary.size())
        throw ValidationError("phi row length differs from vocabulary size");
    return m;
  } catch (const json::exception& e) {
    throw ParseError(0, "topic model " + path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError("topic model " + path.string() + ": " + e.what());
  }
}

}  // namespace storycmp
