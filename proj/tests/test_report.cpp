#include <gtest/gtest.h>

#include <cstdlib>

#include "json.hpp"
#include "storycmp/report.hpp"
#include "support.hpp"

using namespace storycmp;
using nlohmann::json;
using testing_support::fixtures;
using testing_support::TempDir;

namespace {

PipelineConfig fast_config(const char* name = "pipeline.json") {
  auto cfg = load_pipeline_config(fixtures() / name);
  cfg.lda.iterations = 50;
  return cfg;
}

}  // namespace

TEST(PipelineConfig, LoadsAndResolvesPaths) {
  const auto cfg = load_pipeline_config(fixtures() / "pipeline.json");
  ASSERT_EQ(cfg.corpora.size(), 3u);
  EXPECT_EQ(cfg.corpora[0].manifest, fixtures() / "corpora/old/manifest.json");
  ASSERT_TRUE(cfg.corpora[0].conllu_dir.has_value());
  EXPECT_EQ(cfg.lda.topics, 3u);
  EXPECT_EQ(cfg.lda.iterations, 200u);
  EXPECT_EQ(cfg.topic_top_n, 8u);
  EXPECT_EQ(cfg.lda.seed, 42u);
  EXPECT_EQ(cfg.scorer, ToxicityScorer::lexicon);
  ASSERT_TRUE(cfg.lexicon.has_value());
  EXPECT_TRUE(std::filesystem::exists(*cfg.lexicon));
}

TEST(PipelineConfig, RejectsMalformedInput) {
  EXPECT_THROW(parse_pipeline_config("[", "."), ConfigError);
  EXPECT_THROW(parse_pipeline_config("[]", "."), ConfigError);
  EXPECT_THROW(parse_pipeline_config(R"({"corpora": [], "bogus": 1})", "."), ConfigError);
  EXPECT_THROW(parse_pipeline_config(R"({"corpora": [], "topics": {"kk": 3}})", "."), ConfigError);
  EXPECT_THROW(parse_pipeline_config(R"({"corpora": [], "toxicity": {"scorer": "x"}})", "."),
               ConfigError);
  EXPECT_THROW(parse_pipeline_config(R"({"corpora": [{"conllu_dir": "x"}]})", "."), ConfigError);
  EXPECT_THROW(load_pipeline_config("/nonexistent/config.json"), ConfigError);
}

TEST(PipelineConfig, EnvironmentOverridesToxicityEndpoint) {
  ::setenv(kToxicityEndpointEnv, "http://env:1", 1);
  const auto cfg = parse_pipeline_config(
      R"({"corpora": [], "toxicity": {"scorer": "remote", "endpoint": "http://file:2"}})", ".");
  ::unsetenv(kToxicityEndpointEnv);
  EXPECT_EQ(cfg.toxicity_endpoint, "http://env:1");
}

TEST(Pipeline, FewerThanTwoCorporaIsFatal) {
  auto cfg = fast_config();
  cfg.corpora.resize(1);
  EXPECT_THROW(run_pipeline(cfg), ConfigError);
  cfg = fast_config();
  cfg.corpora[1].manifest = "/nonexistent/manifest.json";
  cfg.corpora[2].manifest = "/nonexistent/other.json";
  EXPECT_THROW(run_pipeline(cfg), ConfigError);
}

TEST(Pipeline, DuplicateLabelsAreFatal) {
  auto cfg = fast_config();
  cfg.corpora[1] = cfg.corpora[0];
  EXPECT_THROW(run_pipeline(cfg), ConfigError);
}

TEST(Pipeline, AllSectionsPresentWithParses) {
  Diagnostics diag;
  const auto r = run_pipeline(fast_config(), &diag);
  EXPECT_FALSE(r.has_skips());
  ASSERT_EQ(r.corpora.size(), 3u);
  EXPECT_EQ(r.corpora[0].label, "old");
  ASSERT_TRUE(r.sentence_length && r.fres && r.toxicity && r.topic_overlap && r.structural_overlap);
  EXPECT_EQ(r.sentence_length->size(), 3u);
  EXPECT_EQ(r.fres->at(0).scores.size(), 6u);
  EXPECT_EQ(r.topic_overlap->pairs.size(), 3u);
  const auto& s = *r.structural_overlap;
  ASSERT_EQ(s.jaccard.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(s.jaccard[i][i], 100.0);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(s.jaccard[i][j], s.jaccard[j][i]);
  }
  for (const auto& t : *r.toxicity) {
    EXPECT_EQ(t.sentence_count, r.corpora[&t - &r.toxicity->front()].sentences);
    for (const auto& h : t.histograms) {
      double sum = 0;
      for (double b : h.bins) sum += b;
      EXPECT_NEAR(sum, 100.0, 1e-6);
    }
  }
}

TEST(Pipeline, WithheldParsesSkipStructureWithReason) {
  const auto r = run_pipeline(fast_config("pipeline_noparse.json"));
  EXPECT_FALSE(r.structural_overlap.has_value());
  EXPECT_TRUE(r.sentence_length && r.fres && r.toxicity && r.topic_overlap);
  std::size_t per_corpus = 0, whole = 0;
  for (const auto& s : r.skipped) {
    EXPECT_EQ(s.section, "structural_overlap");
    EXPECT_FALSE(s.reason.empty());
    (s.corpus.empty() ? whole : per_corpus)++;
  }
  EXPECT_EQ(per_corpus, 3u);
  EXPECT_EQ(whole, 1u);
}

TEST(Pipeline, PartialParsesStillCompareTheRest) {
  auto cfg = fast_config();
  cfg.corpora[1].conllu_dir.reset();
  const auto r = run_pipeline(cfg);
  ASSERT_TRUE(r.structural_overlap.has_value());
  EXPECT_EQ(r.structural_overlap->profiles.size(), 2u);
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.skipped[0].corpus, "modern");
}

TEST(Pipeline, MissingResourcesSkipSections) {
  auto cfg = fast_config();
  cfg.lexicon.reset();
  cfg.stopwords.reset();
  const auto r = run_pipeline(cfg);
  EXPECT_FALSE(r.toxicity.has_value());
  EXPECT_FALSE(r.topic_overlap.has_value());
  EXPECT_EQ(r.skipped.size(), 2u);

  cfg = fast_config();
  cfg.scorer = ToxicityScorer::remote;
  cfg.toxicity_endpoint.clear();
  EXPECT_FALSE(run_pipeline(cfg).toxicity.has_value());

  cfg.toxicity_endpoint = "http://127.0.0.1:1";
  cfg.fallback_to_lexicon = true;
  Diagnostics diag;
  const auto fell_back = run_pipeline(cfg, &diag);
  ASSERT_TRUE(fell_back.toxicity.has_value());
  EXPECT_EQ(fell_back.toxicity->size(), 3u);
  EXPECT_FALSE(diag.warnings.empty());
}

TEST(Pipeline, DisabledAnalysesAreAbsent) {
  auto cfg = fast_config();
  cfg.topics = false;
  cfg.toxicity = false;
  const auto r = run_pipeline(cfg);
  EXPECT_FALSE(r.topic_overlap || r.toxicity);
  EXPECT_TRUE(r.skipped.empty());
  const auto doc = json::parse(report_to_json(r));
  EXPECT_FALSE(doc.contains("topic_overlap"));
  EXPECT_TRUE(doc.contains("structural_overlap"));
}

TEST(Report, JsonIsDeterministicAndComplete) {
  const auto a = report_to_json(run_pipeline(fast_config()));
  const auto b = report_to_json(run_pipeline(fast_config()));
  EXPECT_EQ(a, b);
  const auto doc = json::parse(a);
  for (const char* key : {"corpora", "sentence_length", "fres", "toxicity", "topic_overlap",
                          "structural_overlap", "skipped"})
    EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_EQ(doc["toxicity"][0]["bins"].size(), 6u);
  EXPECT_EQ(doc["structural_overlap"]["jaccard"].size(), 3u);
}

TEST(Report, CsvBundleFiles) {
  const auto r = run_pipeline(fast_config());
  TempDir dir("csv");
  const auto files = emit(r, ReportFormat::csv_bundle, dir.path());
  std::vector<std::string> names;
  for (const auto& f : files) names.push_back(f.filename().string());
  EXPECT_EQ(names, (std::vector<std::string>{
                       "corpora.csv", "sentence_length.csv", "fres.csv", "fres_scores.csv",
                       "toxicity.csv", "topic_keywords.csv", "topic_overlap.csv",
                       "topic_shared_words.csv", "structural_overlap.csv",
                       "structural_overlap_pairs.csv", "skipped.csv"}));
  const auto corpora = read_text_file(dir / "corpora.csv");
  EXPECT_EQ(corpora.substr(0, corpora.find('\n')), "label,stories,sentences");
  const auto tox = read_text_file(dir / "toxicity.csv");
  EXPECT_EQ(std::count(tox.begin(), tox.end(), '\n'), 1 + 3 * 6);
  EXPECT_EQ(read_text_file(dir / "skipped.csv"), "section,corpus,reason\n");
}

TEST(Report, FormatNames) {
  EXPECT_EQ(parse_report_format("json"), ReportFormat::json);
  EXPECT_EQ(parse_report_format("csv"), ReportFormat::csv_bundle);
  EXPECT_THROW(parse_report_format("xml"), ArgumentError);
}
