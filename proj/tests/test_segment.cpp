#include <gtest/gtest.h>

#include "storycmp/corpus_io.hpp"

using namespace storycmp;
using V = std::vector<std::string>;

TEST(Segment, SplitsOnTerminalPunctuationBeforeCapital) {
  EXPECT_EQ(segment_sentences("The cat sat. The dog ran! Did it? Yes."),
            (V{"The cat sat.", "The dog ran!", "Did it?", "Yes."}));
}

TEST(Segment, KeepsLowercaseContinuations) {
  EXPECT_EQ(segment_sentences("It cost 3.5 dollars. then more"),
            (V{"It cost 3.5 dollars. then more"}));
}

TEST(Segment, RespectsAbbreviations) {
  EXPECT_EQ(segment_sentences("Mr. Fox met Dr. Owl. They talked."),
            (V{"Mr. Fox met Dr. Owl.", "They talked."}));
  SegmentOptions none;
  none.abbreviations.clear();
  EXPECT_EQ(segment_sentences("Mr. Fox ran.", none).size(), 2u);
}

TEST(Segment, HandlesQuotesAroundBoundaries) {
  EXPECT_EQ(segment_sentences("\"Run!\" she said. \"Now.\" He ran."),
            (V{"\"Run!\" she said.", "\"Now.\"", "He ran."}));
  EXPECT_EQ(segment_sentences("\xE2\x80\x9CStop.\xE2\x80\x9D \xE2\x80\x9CWhy?\xE2\x80\x9D"),
            (V{"\xE2\x80\x9CStop.\xE2\x80\x9D", "\xE2\x80\x9CWhy?\xE2\x80\x9D"}));
}

TEST(Segment, BlankLinesEndSentences) {
  const std::string text = "A Title\n\nOnce upon a time\nthere was a fox.";
  EXPECT_EQ(segment_sentences(text), (V{"A Title", "Once upon a time there was a fox."}));
  SegmentOptions opts;
  opts.split_on_blank_lines = false;
  EXPECT_EQ(segment_sentences(text, opts), (V{"A Title Once upon a time there was a fox."}));
}

TEST(Segment, EmptyAndWhitespaceInputs) {
  EXPECT_TRUE(segment_sentences("").empty());
  EXPECT_TRUE(segment_sentences(" \n\n\t ").empty());
  EXPECT_EQ(segment_sentences("no terminal punctuation"), (V{"no terminal punctuation"}));
}

TEST(Segment, SegmentsCoverAllNonWhitespaceText) {
  const std::string text =
      "One day, Mr. Brown said: \"Hello!\" Nobody answered.\n\nThen (quietly) he left. "
      "The end?  Maybe.";
  std::string joined, original;
  for (const auto& s : segment_sentences(text))
    for (char c : s)
      if (c != ' ') joined += c;
  for (char c : text)
    if (c != ' ' && c != '\n' && c != '\t') original += c;
  EXPECT_EQ(joined, original);
}

TEST(Tokenize, StripsOuterPunctuationOnly) {
  EXPECT_EQ(tokenize("\"Well,\" said the well-known fox's friend... (twice)!"),
            (V{"Well", "said", "the", "well-known", "fox's", "friend", "twice"}));
  EXPECT_EQ(tokenize("\xE2\x80\x9CHi\xE2\x80\x9D \xC2\xABoui\xC2\xBB -- ..."), (V{"Hi", "oui"}));
  EXPECT_TRUE(tokenize("").empty());
}

TEST(WhitespaceTokens, ViewsIntoInput) {
  const std::string text = "  a bb\tccc\n";
  const auto toks = whitespace_tokens(text);
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[2], "ccc");
  EXPECT_GE(toks[0].data(), text.data());
  EXPECT_LT(toks[0].data(), text.data() + text.size());
}

TEST(ToLower, AsciiOnly) { EXPECT_EQ(to_lower_ascii("AbC \xC3\x89"), "abc \xC3\x89"); }
