#include "storycmp/genharness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <mutex>
#include <thread>

#include "http_client.hpp"
#include "json.hpp"

namespace storycmp {

using nlohmann::json;

namespace {

constexpr std::string_view kTemplateT1 =
    "Below is an instruction that describes a task, paired with an input that provides "
    "further context.\n"
    "Write a response that appropriately completes the request.\n"
    "\n"
    "### Instruction:\n"
    "Write a short children's story given the title.\n"
    "\n"
    "### Input:\n"
    "{TITLE}\n"
    "\n"
    "### Response:\n";

constexpr std::string_view kTemplateT2 =
    "Below is an instruction that describes a task. Write a response that appropriately "
    "completes the request.\n"
    "\n"
    "### Instruction:\n"
    "Write a short children's story.\n"
    "\n"
    "### Response:\n";

constexpr std::string_view kTemplateT3 =
    "Below is an instruction that describes a task, paired with an input that provides "
    "further context.\n"
    "Write a response that appropriately completes the request.\n"
    "\n"
    "### Instruction:\n"
    "Write a children's story given the title.\n"
    "\n"
    "### Input:\n"
    "{TITLE}\n"
    "\n"
    "### Response:\n";

constexpr std::string_view kTemplateT4 =
    "Below is an instruction that describes a task. Write a response that appropriately "
    "completes the request.\n"
    "\n"
    "### Instruction:\n"
    "Write a children's story.\n"
    "\n"
    "### Response:\n";

bool takes_title(PromptMode mode) {
  return mode == PromptMode::template_T1 || mode == PromptMode::template_T3;
}

bool is_template(PromptMode mode) {
  return mode == PromptMode::template_T1 || mode == PromptMode::template_T2 ||
         mode == PromptMode::template_T3 || mode == PromptMode::template_T4;
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

std::string truncate_tokens(std::string_view text, std::size_t n) {
  const auto tokens = whitespace_tokens(text);
  if (tokens.size() <= n) return std::string(text);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string_view to_string(PromptMode mode) {
  switch (mode) {
    case PromptMode::first_line: return "first_line";
    case PromptMode::first_256: return "first_256";
    case PromptMode::first_512: return "first_512";
    case PromptMode::template_T1: return "template_T1";
    case PromptMode::template_T2: return "template_T2";
    case PromptMode::template_T3: return "template_T3";
    case PromptMode::template_T4: return "template_T4";
  }
  return "first_line";
}

PromptMode parse_prompt_mode(std::string_view s) {
  for (auto m : {PromptMode::first_line, PromptMode::first_256, PromptMode::first_512,
                 PromptMode::template_T1, PromptMode::template_T2, PromptMode::template_T3,
                 PromptMode::template_T4})
    if (to_string(m) == s) return m;
  if (s == "line") return PromptMode::first_line;
  if (s == "256") return PromptMode::first_256;
  if (s == "512") return PromptMode::first_512;
  if (s == "T1") return PromptMode::template_T1;
  if (s == "T2") return PromptMode::template_T2;
  if (s == "T3") return PromptMode::template_T3;
  if (s == "T4") return PromptMode::template_T4;
  throw ArgumentError("unknown prompt mode '" + std::string(s) + "'");
}

std::string_view template_text(PromptMode mode) {
  switch (mode) {
    case PromptMode::template_T1: return kTemplateT1;
    case PromptMode::template_T2: return kTemplateT2;
    case PromptMode::template_T3: return kTemplateT3;
    case PromptMode::template_T4: return kTemplateT4;
    default: break;
  }
  throw ArgumentError("prompt mode '" + std::string(to_string(mode)) + "' has no template");
}

PromptSpec build_prompt(const Story& story, PromptMode mode) {
  PromptSpec spec{story.id, mode, {}};
  if (is_template(mode)) {
    std::string text(template_text(mode));
    if (takes_title(mode)) {
      if (is_blank(story.title))
        throw ArgumentError("template " + std::string(to_string(mode)) + " needs a title (story '" +
                            story.id + "')");
      const auto at = text.find(kTitlePlaceholder);
      text.replace(at, kTitlePlaceholder.size(), story.title);
    }
    spec.rendered_prompt = std::move(text);
    return spec;
  }

  if (is_blank(story.text))
    throw ArgumentError("prompt mode " + std::string(to_string(mode)) + " needs story text ('" +
                        story.id + "')");
  switch (mode) {
    case PromptMode::first_line: spec.rendered_prompt = segment_sentences(story.text).front(); break;
    case PromptMode::first_256: spec.rendered_prompt = truncate_tokens(story.text, 256); break;
    case PromptMode::first_512: spec.rendered_prompt = truncate_tokens(story.text, 512); break;
    default: break;
  }
  return spec;
}

void validate(const GenerationConfig& config) {
  if (config.top_k < 1) throw ArgumentError("top_k must be >= 1");
  if (config.samples_per_prompt < 1) throw ArgumentError("samples_per_prompt must be >= 1");
  if (config.model_name.empty()) throw ArgumentError("model name is empty");
  if (config.max_retries < 0) throw ArgumentError("max_retries must be >= 0");
}

// ---------------------------------------------------------------------------
// Wire format

std::string completion_request_json(const CompletionRequest& request) {
  json doc = {{"prompt", request.prompt},
              {"top_k", request.top_k},
              {"temperature", request.temperature},
              {"max_new_tokens", request.max_new_tokens}};
  return doc.dump();
}

CompletionRequest parse_completion_request(std::string_view body) {
  try {
    const json doc = json::parse(body);
    CompletionRequest r;
    r.prompt = doc.at("prompt").get<std::string>();
    r.top_k = doc.at("top_k").get<std::size_t>();
    r.temperature = doc.at("temperature").get<double>();
    r.max_new_tokens = doc.at("max_new_tokens").get<std::size_t>();
    return r;
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed completion request: ") + e.what());
  }
}

std::string completion_response_json(std::string_view text) {
  return json{{"text", text}}.dump();
}

std::string parse_completion_response(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("completion response is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("text") || !doc["text"].is_string())
    throw ProtocolError("completion response lacks a string 'text' field");
  return doc["text"].get<std::string>();
}

HttpCompletionClient::HttpCompletionClient(std::string endpoint, std::string path,
                                           int timeout_seconds)
    : endpoint_(std::move(endpoint)), path_(std::move(path)), timeout_seconds_(timeout_seconds) {}

std::string HttpCompletionClient::complete(const CompletionRequest& request) {
  const auto res =
      http::post_json(endpoint_, path_, completion_request_json(request), timeout_seconds_);
  if (res.status != 200)
    throw RemoteError("completion endpoint " + endpoint_ + path_ + " returned HTTP " +
                      std::to_string(res.status));
  return parse_completion_response(res.body);
}

std::unique_ptr<CompletionClient> make_http_client(const GenerationConfig& config) {
  return std::make_unique<HttpCompletionClient>(config.endpoint, config.path,
                                                config.timeout_seconds);
}

// ---------------------------------------------------------------------------
// Generation

std::vector<GeneratedStory> generate(const Story& source, const PromptSpec& prompt,
                                     const GenerationConfig& config, CompletionClient& client,
                                     Diagnostics* diag) {
  validate(config);
  const CompletionRequest request{prompt.rendered_prompt, config.top_k, config.temperature,
                                  config.max_new_tokens};
  const std::string mode(to_string(prompt.mode));

  std::vector<GeneratedStory> out;
  out.reserve(config.samples_per_prompt);
  for (std::size_t sample = 0; sample < config.samples_per_prompt; ++sample) {
    std::string text;
    const int attempts = config.max_retries + 1;
    for (int attempt = 1;; ++attempt) {
      try {
        text = client.complete(request);
        break;
      } catch (const Error& e) {
        if (attempt >= attempts)
          throw GenerationError("generation for story '" + source.id + "' sample " +
                                    std::to_string(sample) + " failed: " + e.what(),
                                attempt);
      }
    }

    GeneratedStory g;
    g.prompt = prompt;
    g.sample_index = sample;
    g.config = config;
    g.story.id = config.model_name + "-" + mode + "-" + source.id + "-" + std::to_string(sample);
    g.story.title = source.title;
    g.story.category = Category::generated;
    g.story.text = std::move(text);
    g.story.provenance = {
        {"model", config.model_name},
        {"mode", mode},
        {"sample_index", std::to_string(sample)},
        {"source_story_id", source.id},
        {"top_k", std::to_string(config.top_k)},
        {"temperature", format_number(config.temperature)},
        {"max_new_tokens", std::to_string(config.max_new_tokens)},
    };
    if (is_blank(g.story.text)) {
      g.empty_completion = true;
      warn(diag, "generate: empty completion for '" + g.story.id + "'");
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<GeneratedStory> generate_all(std::span<const Story> sources, PromptMode mode,
                                         const GenerationConfig& config,
                                         CompletionClient& client, Diagnostics* diag) {
  validate(config);
  std::vector<PromptSpec> prompts;
  prompts.reserve(sources.size());
  for (const auto& s : sources) prompts.push_back(build_prompt(s, mode));

  std::vector<std::vector<GeneratedStory>> per_source(sources.size());
  std::vector<Diagnostics> per_source_diag(sources.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= sources.size()) return;
      {
        std::lock_guard lock(error_mutex);
        if (first_error) return;
      }
      try {
        per_source[i] = generate(sources[i], prompts[i], config, client, &per_source_diag[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(std::max<std::size_t>(config.max_in_flight, 1), sources.size());
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  if (workers > 0) worker();
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);

  std::vector<GeneratedStory> out;
  out.reserve(sources.size() * config.samples_per_prompt);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (auto& w : per_source_diag[i].warnings) warn(diag, std::move(w));
    for (auto& g : per_source[i]) out.push_back(std::move(g));
  }
  return out;
}

std::filesystem::path export_generated(std::span<const GeneratedStory> stories,
                                       const std::filesystem::path& out_dir,
                                       const std::string& label) {
  Corpus corpus;
  corpus.label = label;
  json empties = json::array();
  for (const auto& g : stories) {
    if (g.empty_completion) {
      empties.push_back({{"id", g.story.id}, {"provenance", g.story.provenance}});
      continue;
    }
    corpus.stories.push_back(g.story);
  }
  validate_corpus(corpus);
  const auto manifest = out_dir / "manifest.json";
  write_corpus(corpus, manifest);
  if (!empties.empty()) {
    json doc = json::parse(read_text_file(manifest));
    doc["empty_completions"] = std::move(empties);
    write_text_file(manifest, doc.dump(2) + "\n");
  }
  return manifest;
}

}  // namespace storycmp
