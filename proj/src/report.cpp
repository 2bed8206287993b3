#include "storycmp/report.hpp"

#include <cstdlib>
#include <set>

#include "json.hpp"
#include "storycmp/kernels.hpp"

namespace storycmp {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Config

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_relative() ? base / path : path;
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

PipelineConfig parse_pipeline_config(std::string_view json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  PipelineConfig cfg;
  try {
    reject_unknown_keys(doc,
                        {"corpora", "resources", "analyses", "topics", "structure", "toxicity",
                         "segmentation", "seed"},
                        "config");
    for (const auto& c : doc.at("corpora")) {
      CorpusInput in;
      in.manifest = resolve(base_dir, c.at("manifest").get<std::string>());
      if (c.contains("conllu_dir") && !c["conllu_dir"].is_null())
        in.conllu_dir = resolve(base_dir, c["conllu_dir"].get<std::string>());
      cfg.corpora.push_back(std::move(in));
    }

    if (doc.contains("resources")) {
      const auto& r = doc["resources"];
      reject_unknown_keys(r, {"lexicon", "stopwords", "names"}, "resources");
      if (r.contains("lexicon")) cfg.lexicon = resolve(base_dir, r["lexicon"].get<std::string>());
      if (r.contains("stopwords"))
        cfg.stopwords = resolve(base_dir, r["stopwords"].get<std::string>());
      if (r.contains("names")) cfg.names = resolve(base_dir, r["names"].get<std::string>());
    }

    if (doc.contains("analyses")) {
      const auto& a = doc["analyses"];
      reject_unknown_keys(a, {"sentence_length", "fres", "toxicity", "topics", "structure"},
                          "analyses");
      cfg.sentence_length = a.value("sentence_length", true);
      cfg.fres = a.value("fres", true);
      cfg.toxicity = a.value("toxicity", true);
      cfg.topics = a.value("topics", true);
      cfg.structure = a.value("structure", true);
    }

    cfg.lda.seed = doc.value("seed", cfg.lda.seed);
    if (doc.contains("topics")) {
      const auto& t = doc["topics"];
      reject_unknown_keys(t,
                          {"k", "alpha", "beta", "iterations", "top_n", "seed",
                           "min_token_length", "min_lowercase_occurrences"},
                          "topics");
      cfg.lda.topics = t.value("k", cfg.lda.topics);
      cfg.lda.alpha = t.value("alpha", cfg.lda.alpha);
      cfg.lda.beta = t.value("beta", cfg.lda.beta);
      cfg.lda.iterations = t.value("iterations", cfg.lda.iterations);
      cfg.lda.seed = t.value("seed", cfg.lda.seed);
      cfg.topic_top_n = t.value("top_n", cfg.topic_top_n);
      cfg.preprocess.min_token_length =
          t.value("min_token_length", cfg.preprocess.min_token_length);
      cfg.preprocess.min_lowercase_occurrences =
          t.value("min_lowercase_occurrences", cfg.preprocess.min_lowercase_occurrences);
    }

    if (doc.contains("structure")) {
      const auto& s = doc["structure"];
      reject_unknown_keys(s, {"wl_iterations"}, "structure");
      cfg.wl_iterations = s.value("wl_iterations", cfg.wl_iterations);
      if (cfg.wl_iterations < 1) throw ConfigError("structure.wl_iterations must be >= 1");
    }

    if (doc.contains("toxicity")) {
      const auto& t = doc["toxicity"];
      reject_unknown_keys(t, {"scorer", "endpoint", "fallback_to_lexicon"}, "toxicity");
      const std::string scorer = t.value("scorer", std::string("lexicon"));
      if (scorer == "lexicon")
        cfg.scorer = ToxicityScorer::lexicon;
      else if (scorer == "remote")
        cfg.scorer = ToxicityScorer::remote;
      else
        throw ConfigError("toxicity.scorer must be 'lexicon' or 'remote'");
      cfg.toxicity_endpoint = t.value("endpoint", std::string());
      cfg.fallback_to_lexicon = t.value("fallback_to_lexicon", false);
    }

    if (doc.contains("segmentation")) {
      const auto& s = doc["segmentation"];
      reject_unknown_keys(s, {"abbreviations", "split_on_blank_lines"}, "segmentation");
      if (s.contains("abbreviations"))
        cfg.segmentation.abbreviations = s["abbreviations"].get<std::vector<std::string>>();
      cfg.segmentation.split_on_blank_lines =
          s.value("split_on_blank_lines", cfg.segmentation.split_on_blank_lines);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (const char* env = std::getenv(kToxicityEndpointEnv); env && *env)
    cfg.toxicity_endpoint = env;
  return cfg;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  return parse_pipeline_config(text, path.parent_path());
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

struct LoadedCorpus {
  Corpus corpus;
  std::optional<fs::path> conllu_dir;
  std::vector<kernels::StoryMeasures> measures;
};

std::vector<double> all_lengths(const LoadedCorpus& c) {
  std::vector<double> out;
  for (const auto& m : c.measures)
    for (auto n : m.sentence_lengths) out.push_back(static_cast<double>(n));
  return out;
}

std::vector<std::string> all_sentences(const LoadedCorpus& c) {
  std::vector<std::string> out;
  for (const auto& m : c.measures) out.insert(out.end(), m.sentences.begin(), m.sentences.end());
  return out;
}

void run_text_sections(const PipelineConfig& cfg, const std::vector<LoadedCorpus>& corpora,
                       ComparisonReport& report, Diagnostics* diag) {
  if (cfg.sentence_length) {
    auto& section = report.sentence_length.emplace();
    for (const auto& c : corpora) {
      const auto lengths = all_lengths(c);
      if (lengths.empty()) {
        report.skipped.push_back({"sentence_length", c.corpus.label, "corpus has no sentences"});
        continue;
      }
      section.push_back({c.corpus.label, summarize(lengths)});
    }
  }

  if (cfg.fres) {
    auto& section = report.fres.emplace();
    for (const auto& c : corpora) {
      FresEntry e;
      e.corpus = c.corpus.label;
      for (std::size_t i = 0; i < c.measures.size(); ++i) {
        const auto& stats = c.measures[i].stats;
        if (stats.total_words == 0 || stats.total_sentences == 0) {
          warn(diag, "fres: story '" + c.corpus.stories[i].id + "' has no words; skipped");
          continue;
        }
        e.story_ids.push_back(c.corpus.stories[i].id);
        e.scores.push_back(fres(stats));
      }
      if (e.scores.empty()) {
        report.skipped.push_back({"fres", c.corpus.label, "no story has any words"});
        continue;
      }
      e.all = summarize(e.scores);
      const auto in_range = fres_in_range(e.scores);
      if (!in_range.empty()) e.in_range = summarize(in_range);
      section.push_back(std::move(e));
    }
  }
}

void run_toxicity(const PipelineConfig& cfg, const std::vector<LoadedCorpus>& corpora,
                  ComparisonReport& report, Diagnostics* diag) {
  std::optional<ToxicityLexicon> lexicon;
  if (cfg.lexicon) lexicon = ToxicityLexicon::load(*cfg.lexicon);

  if (cfg.scorer == ToxicityScorer::lexicon && !lexicon) {
    report.skipped.push_back({"toxicity", "", "no lexicon configured for the lexicon scorer"});
    return;
  }
  if (cfg.scorer == ToxicityScorer::remote && cfg.toxicity_endpoint.empty()) {
    report.skipped.push_back({"toxicity", "", "remote scorer selected but no endpoint configured"});
    return;
  }

  auto& section = report.toxicity.emplace();
  for (const auto& c : corpora) {
    const auto sentences = all_sentences(c);
    std::vector<ToxicityScores> scores;
    if (cfg.scorer == ToxicityScorer::remote) {
      try {
        scores = score_sentences_remote(sentences, cfg.toxicity_endpoint);
      } catch (const Error& e) {
        if (!(cfg.fallback_to_lexicon && lexicon)) {
          report.skipped.push_back({"toxicity", c.corpus.label, e.what()});
          continue;
        }
        warn(diag, std::string("toxicity: remote scorer failed, using lexicon: ") + e.what());
        scores = kernels::score_lexicon_omp(sentences, *lexicon);
      }
    } else {
      scores = kernels::score_lexicon_omp(sentences, *lexicon);
    }
    section.push_back({c.corpus.label, sentences.size(), bin_all(scores)});
  }
}

void run_topics(const PipelineConfig& cfg, const std::vector<LoadedCorpus>& corpora,
                ComparisonReport& report, Diagnostics* diag) {
  if (!cfg.stopwords) {
    report.skipped.push_back({"topic_overlap", "", "no stopword list configured"});
    return;
  }
  const TermSet stopwords = load_term_list(*cfg.stopwords);
  const TermSet names = cfg.names ? load_term_list(*cfg.names) : TermSet{};

  const auto n = static_cast<std::int64_t>(corpora.size());
  std::vector<std::optional<TopicModel>> models(corpora.size());
  std::vector<std::string> failures(corpora.size());
  std::vector<Diagnostics> local(corpora.size());
  // One independent chain per corpus; each chain stays sequential.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      const auto docs = preprocess(corpora[i].corpus, stopwords, names, cfg.preprocess, &local[i]);
      models[i] = fit_lda(docs, cfg.lda);
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  }

  TopicSection section;
  section.topics = cfg.lda.topics;
  section.top_n = cfg.topic_top_n;
  std::vector<std::size_t> fitted;
  for (std::size_t i = 0; i < corpora.size(); ++i) {
    for (auto& w : local[i].warnings) warn(diag, std::move(w));
    if (!models[i]) {
      report.skipped.push_back({"topic_overlap", corpora[i].corpus.label, failures[i]});
      continue;
    }
    TopicModelEntry entry{corpora[i].corpus.label, {}};
    const std::size_t take = std::min(cfg.topic_top_n, models[i]->vocabulary.size());
    for (std::size_t k = 0; k < models[i]->topics; ++k)
      entry.keywords.push_back(top_keywords(*models[i], k, take));
    section.models.push_back(std::move(entry));
    fitted.push_back(i);
  }
  if (fitted.size() < 2) {
    report.skipped.push_back({"topic_overlap", "", "fewer than two corpora produced a topic model"});
    return;
  }
  for (std::size_t a = 0; a < fitted.size(); ++a)
    for (std::size_t b = a + 1; b < fitted.size(); ++b)
      section.pairs.push_back({corpora[fitted[a]].corpus.label, corpora[fitted[b]].corpus.label,
                               topic_overlap(*models[fitted[a]], *models[fitted[b]],
                                             cfg.topic_top_n)});
  report.topic_overlap = std::move(section);
}

void run_structure(const PipelineConfig& cfg, const std::vector<LoadedCorpus>& corpora,
                   ComparisonReport& report, Diagnostics* diag) {
  std::vector<HashProfile> profiles;
  for (const auto& c : corpora) {
    if (!c.conllu_dir) {
      report.skipped.push_back({"structural_overlap", c.corpus.label, "no CoNLL-U directory configured"});
      continue;
    }
    try {
      const auto parses = load_conllu_dir(c.corpus, *c.conllu_dir, diag);
      profiles.push_back(corpus_hash_profile(c.corpus, parses, cfg.wl_iterations, diag));
    } catch (const Error& e) {
      report.skipped.push_back({"structural_overlap", c.corpus.label, e.what()});
    }
  }
  if (profiles.size() < 2) {
    report.skipped.push_back(
        {"structural_overlap", "", "fewer than two corpora have dependency parses"});
    return;
  }

  StructureSection section;
  section.wl_iterations = cfg.wl_iterations;
  const std::size_t n = profiles.size();
  section.jaccard.assign(n, std::vector<double>(n, 0.0));
  section.directional.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    section.profiles.push_back(
        {profiles[i].corpus_label, profiles[i].sentence_count, profiles[i].distinct()});
    for (std::size_t j = 0; j < n; ++j) {
      const auto r = structural_overlap_ratios(profiles[i], profiles[j]);
      section.jaccard[i][j] = r.jaccard;
      section.directional[i][j] = r.a_in_b;
    }
  }
  report.structural_overlap = std::move(section);
}

}  // namespace

ComparisonReport run_pipeline(const PipelineConfig& cfg, Diagnostics* diag) {
  if (cfg.corpora.size() < 2)
    throw ConfigError("comparison needs at least two corpora, config lists " +
                      std::to_string(cfg.corpora.size()));

  ComparisonReport report;
  std::vector<LoadedCorpus> corpora;
  std::set<std::string> labels;
  for (const auto& input : cfg.corpora) {
    Corpus corpus;
    try {
      corpus = load_corpus(input.manifest);
    } catch (const Error& e) {
      warn(diag, std::string("corpus skipped: ") + e.what());
      report.skipped.push_back({"corpora", input.manifest.string(), e.what()});
      continue;
    }
    if (!labels.insert(corpus.label).second)
      throw ConfigError("two corpora share the label '" + corpus.label + "'");
    LoadedCorpus c{std::move(corpus), input.conllu_dir, {}};
    c.measures = kernels::measure_stories_omp(c.corpus.stories, cfg.segmentation);
    corpora.push_back(std::move(c));
  }
  if (corpora.size() < 2)
    throw ConfigError("only " + std::to_string(corpora.size()) +
                      " corpora loaded; comparison needs at least two");

  for (const auto& c : corpora) {
    CorpusInfo info{c.corpus.label, c.corpus.stories.size(), 0};
    for (const auto& m : c.measures) info.sentences += m.sentences.size();
    report.corpora.push_back(std::move(info));
  }

  run_text_sections(cfg, corpora, report, diag);
  if (cfg.toxicity) run_toxicity(cfg, corpora, report, diag);
  if (cfg.topics) run_topics(cfg, corpora, report, diag);
  if (cfg.structure) run_structure(cfg, corpora, report, diag);
  return report;
}

ComparisonReport run_pipeline(const fs::path& config_path, Diagnostics* diag) {
  return run_pipeline(load_pipeline_config(config_path), diag);
}

}  // namespace storycmp
