#pragma once

// Story-generation harness: prompt construction (context truncation and the
// four instruction templates), a completion-endpoint client, and export of
// generated stories as a loadable corpus.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "storycmp/corpus_io.hpp"
#include "storycmp/error.hpp"

namespace storycmp {

enum class PromptMode {
  first_line,
  first_256,
  first_512,
  template_T1,
  template_T2,
  template_T3,
  template_T4,
};

std::string_view to_string(PromptMode mode);
// Accepts the names above and the short forms "line", "256", "512", "T1".."T4".
PromptMode parse_prompt_mode(std::string_view s);

// Raw template text, "{TITLE}" marking the title slot of T1 and T3.
std::string_view template_text(PromptMode mode);
inline constexpr std::string_view kTitlePlaceholder = "{TITLE}";

struct PromptSpec {
  std::string source_story_id;
  PromptMode mode = PromptMode::first_line;
  std::string rendered_prompt;
};

// first_line: first segmented sentence. first_256 / first_512: first N
// whitespace tokens joined by single spaces, or the unmodified text when it
// is no longer than N tokens. Templates: verbatim text with the title
// substituted for T1/T3. Throws ArgumentError when the title (T1/T3) or the
// text (truncation modes) is missing.
PromptSpec build_prompt(const Story& story, PromptMode mode);

struct GenerationConfig {
  std::size_t top_k = 100;
  std::size_t samples_per_prompt = 5;
  std::size_t max_new_tokens = 512;
  double temperature = 1.0;
  std::string endpoint = "http://127.0.0.1:8080";
  std::string path = "/generate";
  std::string model_name;
  int max_retries = 2;
  std::size_t max_in_flight = 4;
  int timeout_seconds = 300;
};

// Throws ArgumentError if top_k or samples_per_prompt is 0, or the model
// name is empty.
void validate(const GenerationConfig& config);

// Completion wire contract, JSON over HTTP:
//   request  {"prompt": str, "top_k": int, "temperature": num, "max_new_tokens": int}
//   response {"text": str}
struct CompletionRequest {
  std::string prompt;
  std::size_t top_k = 100;
  double temperature = 1.0;
  std::size_t max_new_tokens = 512;
};

std::string completion_request_json(const CompletionRequest& request);
CompletionRequest parse_completion_request(std::string_view body);
std::string completion_response_json(std::string_view text);
// Throws ProtocolError when the body is not {"text": <string>}.
std::string parse_completion_response(std::string_view body);

class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  // Throws RemoteError or ProtocolError on failure.
  virtual std::string complete(const CompletionRequest& request) = 0;
};

class HttpCompletionClient : public CompletionClient {
 public:
  HttpCompletionClient(std::string endpoint, std::string path = "/generate",
                       int timeout_seconds = 300);
  std::string complete(const CompletionRequest& request) override;

 private:
  std::string endpoint_;
  std::string path_;
  int timeout_seconds_;
};

std::unique_ptr<CompletionClient> make_http_client(const GenerationConfig& config);

struct GeneratedStory {
  Story story;  // category generated, provenance carries the config snapshot
  PromptSpec prompt;
  std::size_t sample_index = 0;
  GenerationConfig config;
  bool empty_completion = false;
};

// Issues samples_per_prompt requests for one prompt. Each request is retried
// up to max_retries times; exhausting them throws GenerationError. Empty
// completions are kept, flagged and reported through `diag`.
std::vector<GeneratedStory> generate(const Story& source, const PromptSpec& prompt,
                                     const GenerationConfig& config, CompletionClient& client,
                                     Diagnostics* diag = nullptr);

// Builds prompts for every source story and generates for each, with up to
// max_in_flight prompts outstanding. Output is grouped by source in input
// order, then by sample index.
std::vector<GeneratedStory> generate_all(std::span<const Story> sources, PromptMode mode,
                                         const GenerationConfig& config,
                                         CompletionClient& client, Diagnostics* diag = nullptr);

// Writes `<out_dir>/manifest.json` and `<out_dir>/texts/*.txt`. Stories with
// empty completions are listed under "empty_completions" instead of
// "stories", which keeps the manifest loadable. Returns the manifest path.
std::filesystem::path export_generated(std::span<const GeneratedStory> stories,
                                       const std::filesystem::path& out_dir,
                                       const std::string& label = "generated");

}  // namespace storycmp
