#include "storycmp/toxicity.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "http_client.hpp"
#include "json.hpp"
#include "storycmp/corpus_io.hpp"
#include "storycmp/error.hpp"

namespace storycmp {

using nlohmann::json;

std::string_view to_string(ToxicityCategory c) {
  switch (c) {
    case ToxicityCategory::toxic: return "toxic";
    case ToxicityCategory::severe_toxic: return "severe_toxic";
    case ToxicityCategory::obscene: return "obscene";
    case ToxicityCategory::threat: return "threat";
    case ToxicityCategory::insult: return "insult";
    case ToxicityCategory::identity_hate: return "identity_hate";
  }
  return "toxic";
}

std::optional<ToxicityCategory> parse_toxicity_category(std::string_view s) {
  for (auto c : kToxicityCategories)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lexicon

void ToxicityLexicon::add(std::string term, const Weights& weights) {
  if (term.empty()) throw ArgumentError("lexicon term is empty");
  if (to_lower_ascii(term) != term)
    throw ArgumentError("lexicon term '" + term + "' is not lowercase");
  for (double w : weights)
    if (!(w >= 0.0 && w <= 1.0))
      throw ArgumentError("lexicon weight for '" + term + "' outside [0,1]");
  entries_[std::move(term)] = weights;
}

const ToxicityLexicon::Weights* ToxicityLexicon::find(std::string_view term) const {
  auto it = entries_.find(term);
  return it == entries_.end() ? nullptr : &it->second;
}

ToxicityLexicon ToxicityLexicon::parse(std::string_view text) {
  ToxicityLexicon lexicon;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const auto tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw ParseError(line_no, "lexicon row lacks a tab separator");
    std::string term(line.substr(0, tab));
    std::string_view spec = line.substr(tab + 1);

    Weights weights{};
    while (!spec.empty()) {
      const auto comma = spec.find(',');
      std::string_view pair = spec.substr(0, comma);
      spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
      const auto eq = pair.find('=');
      if (eq == std::string_view::npos)
        throw ParseError(line_no, "expected category=weight, got '" + std::string(pair) + "'");
      const auto category = parse_toxicity_category(pair.substr(0, eq));
      if (!category)
        throw ParseError(line_no, "unknown toxicity category '" +
                                      std::string(pair.substr(0, eq)) + "'");
      const std::string value(pair.substr(eq + 1));
      std::size_t used = 0;
      double w = 0;
      try {
        w = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || value.empty())
        throw ParseError(line_no, "bad weight '" + value + "'");
      weights[static_cast<std::size_t>(*category)] = w;
    }
    try {
      lexicon.add(std::move(term), weights);
    } catch (const ArgumentError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return lexicon;
}

ToxicityLexicon ToxicityLexicon::load(const std::filesystem::path& path) {
  try {
    return parse(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
}

ToxicityScores score_sentence_lexicon(std::string_view sentence,
                                      const ToxicityLexicon& lexicon) {
  std::array<double, kToxicityCategoryCount> keep;
  keep.fill(1.0);
  for (const auto& token : tokenize(sentence)) {
    const auto* w = lexicon.find(to_lower_ascii(token));
    if (!w) continue;
    for (std::size_t c = 0; c < kToxicityCategoryCount; ++c) keep[c] *= 1.0 - (*w)[c];
  }
  ToxicityScores scores;
  for (std::size_t c = 0; c < kToxicityCategoryCount; ++c) scores.values[c] = 1.0 - keep[c];
  return scores;
}

// ---------------------------------------------------------------------------
// Remote scorer

namespace {

std::vector<ToxicityScores> request_batch(std::span<const std::string> sentences,
                                          const std::string& endpoint,
                                          int timeout_seconds) {
  json body = {{"sentences", json::array()}};
  for (const auto& s : sentences) body["sentences"].push_back(s);
  const auto res = http::post_json(endpoint, "/toxicity", body.dump(), timeout_seconds);
  if (res.status != 200)
    throw RemoteError("toxicity scorer at " + endpoint + " returned HTTP " +
                      std::to_string(res.status));

  json doc;
  try {
    doc = json::parse(res.body);
  } catch (const json::parse_error& e) {
    throw ProtocolError("toxicity scorer at " + endpoint + " sent invalid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("scores") || !doc["scores"].is_array())
    throw ProtocolError("toxicity response lacks a 'scores' array");
  const auto& rows = doc["scores"];
  if (rows.size() != sentences.size())
    throw ProtocolError("toxicity response has " + std::to_string(rows.size()) +
                        " records for " + std::to_string(sentences.size()) + " sentences");

  std::vector<ToxicityScores> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    ToxicityScores s;
    for (auto c : kToxicityCategories) {
      const std::string key(to_string(c));
      if (!row.is_object() || !row.contains(key) || !row[key].is_number())
        throw ProtocolError("toxicity record lacks numeric field '" + key + "'");
      const double v = row[key].get<double>();
      if (!(v >= 0.0 && v <= 1.0))
        throw ProtocolError("toxicity field '" + key + "' = " + std::to_string(v) +
                            " outside [0,1]");
      s[c] = v;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

ToxicityScores score_sentence_remote(std::string_view sentence, const std::string& endpoint) {
  const std::string s(sentence);
  return request_batch(std::span<const std::string>(&s, 1), endpoint, 60).front();
}

std::vector<ToxicityScores> score_sentences_remote(std::span<const std::string> sentences,
                                                   const std::string& endpoint,
                                                   const RemoteScorerOptions& options) {
  const std::size_t batch = std::max<std::size_t>(options.batch_size, 1);
  const std::size_t cap = std::max<std::size_t>(options.max_in_flight, 1);
  std::vector<ToxicityScores> out(sentences.size());

  std::vector<std::future<void>> in_flight;
  for (std::size_t begin = 0; begin < sentences.size(); begin += batch) {
    if (in_flight.size() == cap) {
      in_flight.front().get();
      in_flight.erase(in_flight.begin());
    }
    const std::size_t end = std::min(begin + batch, sentences.size());
    in_flight.push_back(std::async(std::launch::async, [&, begin, end] {
      auto scores = request_batch(sentences.subspan(begin, end - begin), endpoint,
                                  options.timeout_seconds);
      std::copy(scores.begin(), scores.end(), out.begin() + static_cast<std::ptrdiff_t>(begin));
    }));
  }
  for (auto& f : in_flight) f.get();
  return out;
}

// ---------------------------------------------------------------------------
// Histograms

std::size_t toxicity_bin(double score) {
  if (!(score >= 0.0 && score <= 1.0))
    throw ArgumentError("toxicity score " + std::to_string(score) + " outside [0,1]");
  // Compare against decimal edges instead of floor(score * 10), which puts
  // e.g. 0.3 (0.29999...) in the wrong bin after scaling.
  static constexpr std::array<double, kToxicityBins> lower{0.0, 0.1, 0.2, 0.3, 0.4,
                                                          0.5, 0.6, 0.7, 0.8, 0.9};
  const auto it = std::upper_bound(lower.begin(), lower.end(), score);
  return static_cast<std::size_t>(it - lower.begin()) - 1;
}

ToxicityHistogram bin_scores(std::span<const double> scores, ToxicityCategory category) {
  ToxicityHistogram h;
  h.category = category;
  h.sentence_count = scores.size();
  std::array<std::size_t, kToxicityBins> counts{};
  for (double s : scores) ++counts[toxicity_bin(s)];
  if (!scores.empty()) {
    const double total = static_cast<double>(scores.size());
    for (std::size_t b = 0; b < kToxicityBins; ++b)
      h.bins[b] = 100.0 * static_cast<double>(counts[b]) / total;
  }
  return h;
}

std::array<ToxicityHistogram, kToxicityCategoryCount> bin_all(
    std::span<const ToxicityScores> scores) {
  std::array<ToxicityHistogram, kToxicityCategoryCount> out;
  std::vector<double> column(scores.size());
  for (auto c : kToxicityCategories) {
    for (std::size_t i = 0; i < scores.size(); ++i) column[i] = scores[i][c];
    out[static_cast<std::size_t>(c)] = bin_scores(column, c);
  }
  return out;
}

std::vector<HistogramRow> render_histogram(const ToxicityHistogram& h, bool omit_first_bin) {
  static constexpr std::array<const char*, kToxicityBins> labels{
      "[0.0,0.1)", "[0.1,0.2)", "[0.2,0.3)", "[0.3,0.4)", "[0.4,0.5)",
      "[0.5,0.6)", "[0.6,0.7)", "[0.7,0.8)", "[0.8,0.9)", "[0.9,1.0]"};
  std::vector<HistogramRow> rows;
  for (std::size_t b = omit_first_bin ? 1 : 0; b < kToxicityBins; ++b)
    rows.push_back({labels[b], h.bins[b]});
  return rows;
}

}  // namespace storycmp
