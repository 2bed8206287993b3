#include <charconv>

#include "json.hpp"
#include "storycmp/report.hpp"

namespace storycmp {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

ReportFormat parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv" || s == "csv_bundle") return ReportFormat::csv_bundle;
  throw ArgumentError("unknown report format '" + std::string(s) + "'");
}

namespace {

ojson summary_json(const DistributionSummary& s) {
  return ojson{{"n", s.n},
               {"min", s.min},
               {"q1", s.q1},
               {"median", s.median},
               {"q3", s.q3},
               {"max", s.max},
               {"mean", s.mean},
               {"outlier_count", s.outlier_count},
               {"values_retained", s.values_retained}};
}

}  // namespace

std::string report_to_json(const ComparisonReport& r) {
  ojson doc;
  ojson corpora = ojson::array();
  for (const auto& c : r.corpora)
    corpora.push_back({{"label", c.label}, {"stories", c.stories}, {"sentences", c.sentences}});
  doc["corpora"] = std::move(corpora);

  if (r.sentence_length) {
    ojson section = ojson::array();
    for (const auto& e : *r.sentence_length) {
      ojson entry = {{"corpus", e.corpus}};
      entry.update(summary_json(e.summary));
      section.push_back(std::move(entry));
    }
    doc["sentence_length"] = std::move(section);
  }

  if (r.fres) {
    ojson section = ojson::array();
    for (const auto& e : *r.fres) {
      ojson scores = ojson::array();
      for (std::size_t i = 0; i < e.scores.size(); ++i)
        scores.push_back({{"story", e.story_ids[i]}, {"fres", e.scores[i]}});
      section.push_back({{"corpus", e.corpus},
                         {"scores", std::move(scores)},
                         {"all", summary_json(e.all)},
                         {"in_range", e.in_range ? summary_json(*e.in_range) : ojson(nullptr)}});
    }
    doc["fres"] = std::move(section);
  }

  if (r.toxicity) {
    ojson section = ojson::array();
    for (const auto& e : *r.toxicity) {
      ojson cats;
      for (const auto& h : e.histograms) cats[std::string(to_string(h.category))] = h.bins;
      section.push_back(
          {{"corpus", e.corpus}, {"sentence_count", e.sentence_count}, {"bins", std::move(cats)}});
    }
    doc["toxicity"] = std::move(section);
  }

  if (r.topic_overlap) {
    const auto& t = *r.topic_overlap;
    ojson models = ojson::array();
    for (const auto& m : t.models) models.push_back({{"corpus", m.corpus}, {"keywords", m.keywords}});
    ojson pairs = ojson::array();
    for (const auto& p : t.pairs) {
      const auto& o = p.overlap;
      pairs.push_back({{"corpus_a", p.corpus_a},
                       {"corpus_b", p.corpus_b},
                       {"jaccard", o.grid},
                       {"most_shared",
                        {{"topic_a", o.most_shared_a},
                         {"topic_b", o.most_shared_b},
                         {"words", o.most_shared_words}}},
                       {"least_shared",
                        {{"topic_a", o.least_shared_a},
                         {"topic_b", o.least_shared_b},
                         {"words", o.least_shared_words}}}});
    }
    doc["topic_overlap"] = {{"topics", t.topics},
                            {"top_n", t.top_n},
                            {"models", std::move(models)},
                            {"pairs", std::move(pairs)}};
  }

  if (r.structural_overlap) {
    const auto& s = *r.structural_overlap;
    ojson profiles = ojson::array();
    for (const auto& p : s.profiles)
      profiles.push_back(
          {{"corpus", p.corpus}, {"sentence_count", p.sentence_count}, {"distinct_hashes", p.distinct}});
    doc["structural_overlap"] = {{"wl_iterations", s.wl_iterations},
                                 {"profiles", std::move(profiles)},
                                 {"jaccard", s.jaccard},
                                 {"row_in_column", s.directional}};
  }

  ojson skipped = ojson::array();
  for (const auto& s : r.skipped)
    skipped.push_back({{"section", s.section}, {"corpus", s.corpus}, {"reason", s.reason}});
  doc["skipped"] = std::move(skipped);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class Table {
 public:
  explicit Table(std::initializer_list<std::string_view> header) {
    std::vector<std::string> h(header.begin(), header.end());
    row(h);
  }
  explicit Table(const std::vector<std::string>& header) { row(header); }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += field(cells[i]);
    }
    text_ += '\n';
  }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

std::vector<std::string> summary_cells(const DistributionSummary& s) {
  return {std::to_string(s.n), num(s.min),  num(s.q1),   num(s.median),
          num(s.q3),           num(s.max), num(s.mean), std::to_string(s.outlier_count)};
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

std::vector<fs::path> emit(const ComparisonReport& report, ReportFormat format,
                           const fs::path& out_dir) {
  std::vector<fs::path> written;
  auto put = [&](const std::string& name, const std::string& content) {
    const auto path = out_dir / name;
    write_text_file(path, content);
    written.push_back(path);
  };

  if (format == ReportFormat::json) {
    put("report.json", report_to_json(report));
    return written;
  }

  {
    Table t{"label", "stories", "sentences"};
    for (const auto& c : report.corpora)
      t.row({c.label, std::to_string(c.stories), std::to_string(c.sentences)});
    put("corpora.csv", t.text());
  }

  if (report.sentence_length) {
    Table t{"corpus", "n", "min", "q1", "median", "q3", "max", "mean", "outlier_count"};
    for (const auto& e : *report.sentence_length) {
      auto cells = summary_cells(e.summary);
      cells.insert(cells.begin(), e.corpus);
      t.row(cells);
    }
    put("sentence_length.csv", t.text());
  }

  if (report.fres) {
    Table summary{"corpus", "variant", "n",   "min",  "q1",
                  "median", "q3",      "max", "mean", "outlier_count"};
    Table scores{"corpus", "story", "fres"};
    for (const auto& e : *report.fres) {
      auto cells = summary_cells(e.all);
      cells.insert(cells.begin(), {e.corpus, "all"});
      summary.row(cells);
      if (e.in_range) {
        cells = summary_cells(*e.in_range);
        cells.insert(cells.begin(), {e.corpus, "in_range"});
        summary.row(cells);
      }
      for (std::size_t i = 0; i < e.scores.size(); ++i)
        scores.row({e.corpus, e.story_ids[i], num(e.scores[i])});
    }
    put("fres.csv", summary.text());
    put("fres_scores.csv", scores.text());
  }

  if (report.toxicity) {
    std::vector<std::string> header{"corpus", "category", "sentence_count"};
    for (std::size_t b = 0; b < kToxicityBins; ++b) header.push_back("bin_" + std::to_string(b));
    Table t(header);
    for (const auto& e : *report.toxicity)
      for (const auto& h : e.histograms) {
        std::vector<std::string> cells{e.corpus, std::string(to_string(h.category)),
                                       std::to_string(e.sentence_count)};
        for (double v : h.bins) cells.push_back(num(v));
        t.row(cells);
      }
    put("toxicity.csv", t.text());
  }

  if (report.topic_overlap) {
    Table keywords{"corpus", "topic", "rank", "term"};
    for (const auto& m : report.topic_overlap->models)
      for (std::size_t k = 0; k < m.keywords.size(); ++k)
        for (std::size_t r = 0; r < m.keywords[k].size(); ++r)
          keywords.row({m.corpus, std::to_string(k), std::to_string(r), m.keywords[k][r]});
    Table grid{"corpus_a", "corpus_b", "topic_a", "topic_b", "jaccard"};
    Table shared{"corpus_a", "corpus_b", "kind", "topic_a", "topic_b", "words"};
    for (const auto& p : report.topic_overlap->pairs) {
      const auto& o = p.overlap;
      for (std::size_t i = 0; i < o.grid.size(); ++i)
        for (std::size_t j = 0; j < o.grid[i].size(); ++j)
          grid.row({p.corpus_a, p.corpus_b, std::to_string(i), std::to_string(j), num(o.grid[i][j])});
      shared.row({p.corpus_a, p.corpus_b, "most_shared", std::to_string(o.most_shared_a),
                  std::to_string(o.most_shared_b), join_words(o.most_shared_words)});
      shared.row({p.corpus_a, p.corpus_b, "least_shared", std::to_string(o.least_shared_a),
                  std::to_string(o.least_shared_b), join_words(o.least_shared_words)});
    }
    put("topic_keywords.csv", keywords.text());
    put("topic_overlap.csv", grid.text());
    put("topic_shared_words.csv", shared.text());
  }

  if (report.structural_overlap) {
    const auto& s = *report.structural_overlap;
    std::vector<std::string> header{"corpus"};
    for (const auto& p : s.profiles) header.push_back(p.corpus);
    Table matrix(header);
    Table pairs{"corpus_a", "corpus_b", "jaccard", "a_in_b", "b_in_a"};
    for (std::size_t i = 0; i < s.profiles.size(); ++i) {
      std::vector<std::string> cells{s.profiles[i].corpus};
      for (double v : s.jaccard[i]) cells.push_back(num(v));
      matrix.row(cells);
      for (std::size_t j = i + 1; j < s.profiles.size(); ++j)
        pairs.row({s.profiles[i].corpus, s.profiles[j].corpus, num(s.jaccard[i][j]),
                   num(s.directional[i][j]), num(s.directional[j][i])});
    }
    put("structural_overlap.csv", matrix.text());
    put("structural_overlap_pairs.csv", pairs.text());
  }

  Table skipped{"section", "corpus", "reason"};
  for (const auto& s : report.skipped) skipped.row({s.section, s.corpus, s.reason});
  put("skipped.csv", skipped.text());
  return written;
}

}  // namespace storycmp
