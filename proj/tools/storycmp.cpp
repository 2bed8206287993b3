// storycmp: compare story corpora and drive story generation.
//
//   storycmp analyze  --config pipeline.json --out report/ [--format json|csv] [--seed N]
//   storycmp generate --manifest old.json --mode T1 --model alpaca-7b --out gen/
//   storycmp hash     --manifest old.json --conllu-dir old/conllu --out old.hashes.tsv
//   storycmp topics fit     --manifest old.json --stopwords stop.txt --out model.json
//   storycmp topics inspect --model model.json [--against other.json]
//   storycmp parse    --manifest old.json --endpoint http://127.0.0.1:8085 --out old/conllu
//
// Exit codes: 0 success, 1 fatal config/input error, 2 completed with skips.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "storycmp/corpus_io.hpp"
#include "storycmp/genharness.hpp"
#include "storycmp/report.hpp"
#include "storycmp/sidecar.hpp"
#include "storycmp/structure.hpp"
#include "storycmp/topics.hpp"

namespace fs = std::filesystem;
using namespace storycmp;

namespace {

void flush_warnings(const Diagnostics& diag) {
  for (const auto& w : diag.warnings) std::cerr << "warning: " << w << '\n';
}

int run_analyze(const std::string& config_path, const std::string& out,
                const std::string& format, std::optional<std::uint64_t> seed) {
  Diagnostics diag;
  auto config = load_pipeline_config(config_path);
  if (seed) config.lda.seed = *seed;
  const auto report = run_pipeline(config, &diag);
  flush_warnings(diag);
  for (const auto& path : emit(report, parse_report_format(format), out))
    std::cout << path.string() << '\n';
  for (const auto& s : report.skipped)
    std::cerr << "skipped: " << s.section << (s.corpus.empty() ? "" : " [" + s.corpus + "]")
              << ": " << s.reason << '\n';
  return report.has_skips() ? 2 : 0;
}

struct GenerateArgs {
  std::string config;
  std::string manifest;
  std::string mode;
  std::string model;
  std::string endpoint;
  std::string path;
  std::string out;
  std::string label;
  std::optional<std::size_t> top_k, samples, max_new_tokens, in_flight;
  std::optional<double> temperature;
  std::optional<int> retries;
};

GenerationConfig generation_config(const GenerateArgs& a) {
  GenerationConfig cfg;
  if (!a.config.empty()) {
    const auto doc = nlohmann::json::parse(read_text_file(a.config));
    cfg.top_k = doc.value("top_k", cfg.top_k);
    cfg.samples_per_prompt = doc.value("samples_per_prompt", cfg.samples_per_prompt);
    cfg.max_new_tokens = doc.value("max_new_tokens", cfg.max_new_tokens);
    cfg.temperature = doc.value("temperature", cfg.temperature);
    cfg.endpoint = doc.value("endpoint", cfg.endpoint);
    cfg.path = doc.value("path", cfg.path);
    cfg.model_name = doc.value("model_name", cfg.model_name);
    cfg.max_retries = doc.value("max_retries", cfg.max_retries);
    cfg.max_in_flight = doc.value("max_in_flight", cfg.max_in_flight);
  }
  if (const char* env = std::getenv(kCompletionEndpointEnv); env && *env) cfg.endpoint = env;
  if (!a.endpoint.empty()) cfg.endpoint = a.endpoint;
  if (!a.path.empty()) cfg.path = a.path;
  if (!a.model.empty()) cfg.model_name = a.model;
  if (a.top_k) cfg.top_k = *a.top_k;
  if (a.samples) cfg.samples_per_prompt = *a.samples;
  if (a.max_new_tokens) cfg.max_new_tokens = *a.max_new_tokens;
  if (a.in_flight) cfg.max_in_flight = *a.in_flight;
  if (a.temperature) cfg.temperature = *a.temperature;
  if (a.retries) cfg.max_retries = *a.retries;
  return cfg;
}

int run_generate(const GenerateArgs& a) {
  const auto cfg = generation_config(a);
  validate(cfg);
  const auto corpus = load_corpus(a.manifest);
  auto client = make_http_client(cfg);
  Diagnostics diag;
  const auto stories = generate_all(corpus.stories, parse_prompt_mode(a.mode), cfg, *client, &diag);
  flush_warnings(diag);
  const std::string label =
      a.label.empty() ? cfg.model_name + "-" + std::string(to_string(parse_prompt_mode(a.mode)))
                      : a.label;
  const auto manifest = export_generated(stories, a.out, label);
  std::cout << manifest.string() << " (" << stories.size() << " stories)\n";
  return 0;
}

int run_hash(const std::string& manifest, const std::string& conllu_dir, int iterations,
             const std::string& out) {
  Diagnostics diag;
  const auto corpus = load_corpus(manifest);
  const auto parses = load_conllu_dir(corpus, conllu_dir, &diag);
  const auto profile = corpus_hash_profile(corpus, parses, iterations, &diag);
  flush_warnings(diag);
  if (out.empty() || out == "-")
    std::cout << serialize_hash_profile(profile);
  else
    save_hash_profile(profile, out);
  std::cerr << corpus.label << ": " << profile.sentence_count << " sentences, "
            << profile.distinct() << " distinct hashes\n";
  return 0;
}

struct TopicFitArgs {
  std::string manifest, stopwords, names, out;
  LdaParams lda;
};

int run_topics_fit(const TopicFitArgs& a) {
  Diagnostics diag;
  const auto corpus = load_corpus(a.manifest);
  const auto stopwords = load_term_list(a.stopwords);
  const auto names = a.names.empty() ? TermSet{} : load_term_list(a.names);
  const auto docs = preprocess(corpus, stopwords, names, {}, &diag);
  flush_warnings(diag);
  const auto model = fit_lda(docs, a.lda);
  save_topic_model(model, a.out);
  std::cout << a.out << ": " << model.topics << " topics over " << model.vocabulary.size()
            << " terms\n";
  return 0;
}

int run_topics_inspect(const std::string& model_path, const std::string& against, std::size_t n) {
  const auto model = load_topic_model(model_path);
  for (std::size_t k = 0; k < model.topics; ++k) {
    std::cout << "topic " << k << ':';
    for (const auto& w : top_keywords(model, k, std::min(n, model.vocabulary.size())))
      std::cout << ' ' << w;
    std::cout << '\n';
  }
  if (against.empty()) return 0;
  const auto other = load_topic_model(against);
  const auto overlap = topic_overlap(model, other, n);
  std::cout << "\njaccard (rows: " << model_path << ", columns: " << against << ")\n";
  for (const auto& row : overlap.grid) {
    for (double v : row) std::cout << std::fixed << std::setprecision(3) << v << ' ';
    std::cout << '\n';
  }
  auto print_words = [](const std::vector<std::string>& words) {
    for (const auto& w : words) std::cout << ' ' << w;
    std::cout << '\n';
  };
  std::cout << "most shared (" << overlap.most_shared_a << ", " << overlap.most_shared_b << "):";
  print_words(overlap.most_shared_words);
  std::cout << "least shared (" << overlap.least_shared_a << ", " << overlap.least_shared_b << "):";
  print_words(overlap.least_shared_words);
  return 0;
}

int run_parse(const std::string& manifest, const std::string& endpoint, const std::string& out) {
  Diagnostics diag;
  const auto corpus = load_corpus(manifest);
  const auto n = parse_corpus_remote(corpus, endpoint, out, &diag);
  flush_warnings(diag);
  std::cout << n << " stories parsed into " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compare reference and generated story corpora"};
  app.require_subcommand(1);

  std::string config, out, format = "json";
  std::optional<std::uint64_t> seed;
  auto* analyze = app.add_subcommand("analyze", "Run the comparison pipeline and emit a report");
  analyze->add_option("--config", config, "Pipeline config (JSON)")->required()->check(CLI::ExistingFile);
  analyze->add_option("--out", out, "Output directory")->required();
  analyze->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv", "csv_bundle"}));
  analyze->add_option("--seed", seed, "Override the topic-model seed");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate stories from a source corpus");
  generate->add_option("--config", gen.config, "Generation config (JSON)")->check(CLI::ExistingFile);
  generate->add_option("--manifest", gen.manifest, "Source corpus manifest")->required();
  generate->add_option("--mode", gen.mode,
                       "first_line|first_256|first_512|template_T1..T4 (or line, 256, 512, T1..T4)")
      ->required();
  generate->add_option("--model", gen.model, "Model name recorded in provenance");
  generate->add_option("--endpoint", gen.endpoint, "Completion endpoint base URL");
  generate->add_option("--path", gen.path, "Completion route (default /generate)");
  generate->add_option("--top-k", gen.top_k);
  generate->add_option("--samples", gen.samples, "Samples per prompt");
  generate->add_option("--max-new-tokens", gen.max_new_tokens);
  generate->add_option("--temperature", gen.temperature);
  generate->add_option("--retries", gen.retries);
  generate->add_option("--in-flight", gen.in_flight, "Concurrent prompts");
  generate->add_option("--label", gen.label, "Label of the generated corpus");
  generate->add_option("--out", gen.out, "Output directory")->required();

  std::string hash_manifest, conllu_dir, hash_out;
  int iterations = kDefaultWlIterations;
  auto* hash = app.add_subcommand("hash", "Weisfeiler-Lehman hash profile of a parsed corpus");
  hash->add_option("--manifest", hash_manifest)->required();
  hash->add_option("--conllu-dir", conllu_dir)->required()->check(CLI::ExistingDirectory);
  hash->add_option("--iterations", iterations)->check(CLI::PositiveNumber);
  hash->add_option("--out", hash_out, "hash<TAB>count file, '-' for stdout");

  auto* topics = app.add_subcommand("topics", "Fit or inspect topic models");
  topics->require_subcommand(1);
  TopicFitArgs fit_args;
  std::optional<std::uint64_t> fit_seed;
  auto* fit = topics->add_subcommand("fit", "Fit an LDA model to one corpus");
  fit->add_option("--manifest", fit_args.manifest)->required();
  fit->add_option("--stopwords", fit_args.stopwords)->required()->check(CLI::ExistingFile);
  fit->add_option("--names", fit_args.names)->check(CLI::ExistingFile);
  fit->add_option("--k", fit_args.lda.topics);
  fit->add_option("--alpha", fit_args.lda.alpha, "Default 50/k");
  fit->add_option("--beta", fit_args.lda.beta);
  fit->add_option("--iterations", fit_args.lda.iterations);
  fit->add_option("--seed", fit_seed);
  fit->add_option("--out", fit_args.out)->required();
  std::string model_path, against;
  std::size_t top_n = 10;
  auto* inspect = topics->add_subcommand("inspect", "Print keywords and optional overlap");
  inspect->add_option("--model", model_path)->required()->check(CLI::ExistingFile);
  inspect->add_option("--against", against)->check(CLI::ExistingFile);
  inspect->add_option("--n", top_n);

  std::string parse_manifest, parse_endpoint, parse_out;
  auto* parse = app.add_subcommand("parse", "Fetch CoNLL-U parses from the sidecar");
  parse->add_option("--manifest", parse_manifest)->required();
  parse->add_option("--endpoint", parse_endpoint)->required();
  parse->add_option("--out", parse_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*analyze) return run_analyze(config, out, format, seed);
    if (*generate) return run_generate(gen);
    if (*hash) return run_hash(hash_manifest, conllu_dir, iterations, hash_out);
    if (*fit) {
      if (fit_seed) fit_args.lda.seed = *fit_seed;
      return run_topics_fit(fit_args);
    }
    if (*inspect) return run_topics_inspect(model_path, against, top_n);
    if (*parse) return run_parse(parse_manifest, parse_endpoint, parse_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
