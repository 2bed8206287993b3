// Serial reference versus OpenMP kernels on a synthetic workload.
//
//   bench_kernels [--stories N] [--graphs N] [--repeat N]

#include <omp.h>

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "storycmp/kernels.hpp"

using namespace storycmp;

namespace {

const char* kWords[] = {"the", "little", "fox", "ran", "over", "a", "hill", "and", "found",
                        "bright", "stone", "river", "mother", "said", "quietly", "wonderful"};

std::vector<Story> synthetic_stories(std::size_t n, std::mt19937_64& rng) {
  std::vector<Story> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].id = "s" + std::to_string(i);
    out[i].title = "Story";
    for (int s = 0, sentences = 20 + int(rng() % 40); s < sentences; ++s) {
      out[i].text += "Once";
      for (int w = 0, words = 5 + int(rng() % 20); w < words; ++w)
        out[i].text += std::string(" ") + kWords[rng() % std::size(kWords)];
      out[i].text += ". ";
    }
  }
  return out;
}

std::vector<DependencyGraph> synthetic_graphs(std::size_t n, std::mt19937_64& rng) {
  std::vector<DependencyGraph> out(n);
  for (auto& g : out) {
    g.node_count = 3 + rng() % 40;
    for (std::size_t v = 1; v < g.node_count; ++v) g.edges.emplace_back(rng() % v, v);
    std::sort(g.edges.begin(), g.edges.end());
  }
  return out;
}

template <class F>
double best_of(int repeat, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::cout << std::left << std::setw(16) << name << std::right << std::fixed << std::setprecision(4)
            << std::setw(10) << serial << std::setw(10) << parallel << std::setw(9)
            << std::setprecision(2) << serial / parallel << "x" << (same ? "" : "  MISMATCH") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark serial and OpenMP kernels"};
  std::size_t stories = 2000, graphs = 50000;
  int repeat = 3;
  app.add_option("--stories", stories);
  app.add_option("--graphs", graphs);
  app.add_option("--repeat", repeat)->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(1);
  const auto corpus = synthetic_stories(stories, rng);
  const auto trees = synthetic_graphs(graphs, rng);
  ToxicityLexicon lex;
  lex.add("fox", {0.2, 0, 0, 0.1, 0, 0});
  lex.add("stone", {0.1, 0, 0, 0.3, 0, 0});
  std::vector<std::string> sentences;
  for (const auto& m : kernels::measure_stories_serial(corpus))
    sentences.insert(sentences.end(), m.sentences.begin(), m.sentences.end());

  std::cout << "threads: " << omp_get_max_threads() << "\n"
            << "kernel              serial       omp  speedup\n";

  std::vector<kernels::StoryMeasures> ms, mp;
  row("measure_stories", best_of(repeat, [&] { ms = kernels::measure_stories_serial(corpus); }),
      best_of(repeat, [&] { mp = kernels::measure_stories_omp(corpus); }), ms == mp);

  std::vector<std::string> hs, hp;
  row("hash_graphs", best_of(repeat, [&] { hs = kernels::hash_graphs_serial(trees, 3); }),
      best_of(repeat, [&] { hp = kernels::hash_graphs_omp(trees, 3); }), hs == hp);

  std::vector<ToxicityScores> ts, tp;
  row("score_lexicon", best_of(repeat, [&] { ts = kernels::score_lexicon_serial(sentences, lex); }),
      best_of(repeat, [&] { tp = kernels::score_lexicon_omp(sentences, lex); }), ts == tp);
  return 0;
}
