#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "mock_server.hpp"
#include "storycmp/error.hpp"
#include "storycmp/toxicity.hpp"
#include "support.hpp"

using namespace storycmp;

namespace {

std::size_t bin_oracle(double score) {
  for (int b = 9; b >= 1; --b)
    if (score >= std::stod("0." + std::to_string(b))) return static_cast<std::size_t>(b);
  return 0;
}

ToxicityLexicon sample_lexicon() {
  return ToxicityLexicon::parse(
      "# comment\n"
      "mean\ttoxic=0.5,insult=0.4\n"
      "nasty\ttoxic=0.5\n"
      "\n"
      "brute\ttoxic=0.8,threat=1.0\n");
}

}  // namespace

TEST(ToxicityCategory, WireNamesRoundTrip) {
  for (auto c : kToxicityCategories) EXPECT_EQ(parse_toxicity_category(to_string(c)), c);
  EXPECT_FALSE(parse_toxicity_category("rude").has_value());
}

TEST(Binning, EdgesAndRange) {
  EXPECT_EQ(toxicity_bin(0.0), 0u);
  EXPECT_EQ(toxicity_bin(0.1), 1u);
  EXPECT_EQ(toxicity_bin(0.3), 3u);
  EXPECT_EQ(toxicity_bin(0.7), 7u);
  EXPECT_EQ(toxicity_bin(0.0999999), 0u);
  EXPECT_EQ(toxicity_bin(0.9), 9u);
  EXPECT_EQ(toxicity_bin(1.0), 9u);
  EXPECT_THROW(toxicity_bin(-0.01), ArgumentError);
  EXPECT_THROW(toxicity_bin(1.01), ArgumentError);
  EXPECT_THROW(toxicity_bin(std::nan("")), ArgumentError);
}

TEST(Binning, RandomScoresAgreeWithOracleAndSumTo100) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> scores(10000);
  for (auto& s : scores) s = u(rng);
  scores[0] = 1.0;
  scores[1] = 0.0;
  std::array<std::size_t, kToxicityBins> expected{};
  for (double s : scores) {
    EXPECT_EQ(toxicity_bin(s), bin_oracle(s));
    ++expected[bin_oracle(s)];
  }
  const auto h = bin_scores(scores, ToxicityCategory::insult);
  EXPECT_EQ(h.sentence_count, scores.size());
  EXPECT_NEAR(std::accumulate(h.bins.begin(), h.bins.end(), 0.0), 100.0, 1e-6);
  for (std::size_t b = 0; b < kToxicityBins; ++b)
    EXPECT_NEAR(h.bins[b], 100.0 * expected[b] / scores.size(), 1e-9);
}

TEST(Binning, EmptyInputGivesZeroes) {
  const auto h = bin_scores(std::vector<double>{}, ToxicityCategory::toxic);
  EXPECT_EQ(h.sentence_count, 0u);
  for (double v : h.bins) EXPECT_EQ(v, 0.0);
}

TEST(Histogram, RenderLabelsAndOmission) {
  const std::vector<double> scores{0.05, 0.95, 1.0, 0.5};
  const auto h = bin_scores(scores, ToxicityCategory::toxic);
  const auto all = render_histogram(h, false);
  ASSERT_EQ(all.size(), 10u);
  EXPECT_EQ(all.front().label, "[0.0,0.1)");
  EXPECT_EQ(all.back().label, "[0.9,1.0]");
  EXPECT_DOUBLE_EQ(all.back().percent, 50.0);
  const auto tail = render_histogram(h, true);
  ASSERT_EQ(tail.size(), 9u);
  EXPECT_EQ(tail.front().label, "[0.1,0.2)");
}

TEST(Lexicon, NoisyOrCombination) {
  const auto lex = sample_lexicon();
  EXPECT_EQ(lex.size(), 3u);
  EXPECT_DOUBLE_EQ(score_sentence_lexicon("What a brute!", lex)[ToxicityCategory::toxic], 0.8);
  EXPECT_DOUBLE_EQ(score_sentence_lexicon("Mean and nasty.", lex)[ToxicityCategory::toxic], 0.75);
  const auto s = score_sentence_lexicon("A kind word.", lex);
  for (double v : s.values) EXPECT_EQ(v, 0.0);
  // Repeated tokens count each time; matching is case-insensitive.
  EXPECT_DOUBLE_EQ(score_sentence_lexicon("NASTY nasty", lex)[ToxicityCategory::toxic], 0.75);
  EXPECT_DOUBLE_EQ(score_sentence_lexicon("brute", lex)[ToxicityCategory::threat], 1.0);
}

TEST(Lexicon, ScoresStayInUnitInterval) {
  const auto lex = sample_lexicon();
  std::mt19937_64 rng(4);
  const char* words[] = {"mean", "nasty", "brute", "cat", "Mean,"};
  for (int t = 0; t < 500; ++t) {
    std::string sentence;
    for (std::size_t i = 0, n = rng() % 12; i < n; ++i) sentence += std::string(words[rng() % 5]) + " ";
    for (double v : score_sentence_lexicon(sentence, lex).values) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Lexicon, RejectsMalformedRows) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      ToxicityLexicon::parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("ok\ttoxic=0.1\nbad\n"), 2u);
  EXPECT_EQ(line_of("x\tunknown=0.3\n"), 1u);
  EXPECT_EQ(line_of("x\ttoxic=1.5\n"), 1u);
  EXPECT_EQ(line_of("x\ttoxic=abc\n"), 1u);
  EXPECT_EQ(line_of("Upper\ttoxic=0.2\n"), 1u);
  ToxicityLexicon lex;
  EXPECT_THROW(lex.add("", {}), ArgumentError);
  EXPECT_THROW(lex.add("ok", {2, 0, 0, 0, 0, 0}), ArgumentError);
}

TEST(Lexicon, BundledLexiconLoads) {
  const auto lex = ToxicityLexicon::load(testing_support::data_dir() / "toxicity_lexicon.tsv");
  EXPECT_GT(lex.size(), 10u);
  ASSERT_NE(lex.find("idiot"), nullptr);
}

TEST(RemoteScorer, MatchesLexiconAndPreservesOrder) {
  mock::MockOptions opts;
  opts.lexicon = sample_lexicon();
  mock::MockServer server(opts);
  server.start();

  std::vector<std::string> sentences;
  for (int i = 0; i < 100; ++i)
    sentences.push_back(i % 3 == 0 ? "a mean brute " + std::to_string(i)
                                   : "calm words " + std::to_string(i));
  for (std::size_t n : {1u, 3u, 100u}) {
    std::span<const std::string> batch(sentences.data(), n);
    RemoteScorerOptions ro;
    ro.batch_size = 7;
    ro.max_in_flight = 3;
    const auto remote = score_sentences_remote(batch, server.endpoint(), ro);
    ASSERT_EQ(remote.size(), n);
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_EQ(remote[i], score_sentence_lexicon(batch[i], *opts.lexicon)) << i;
  }
  EXPECT_EQ(score_sentence_remote("brute", server.endpoint()),
            score_sentence_lexicon("brute", *opts.lexicon));
  EXPECT_TRUE(score_sentences_remote({}, server.endpoint()).empty());
}

TEST(RemoteScorer, ProtocolAndTransportErrors) {
  mock::MockOptions bad;
  bad.forced_score = 1.5;
  mock::MockServer out_of_range(bad);
  out_of_range.start();
  EXPECT_THROW(score_sentence_remote("x", out_of_range.endpoint()), ProtocolError);

  mock::MockServer no_route;  // /toxicity answers 404 without a lexicon
  no_route.start();
  EXPECT_THROW(score_sentence_remote("x", no_route.endpoint()), RemoteError);

  EXPECT_THROW(score_sentence_remote("x", "http://127.0.0.1:1"), RemoteError);
}
