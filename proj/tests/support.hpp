#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>

#include "storycmp/corpus_io.hpp"
#include "storycmp/structure.hpp"

namespace testing_support {

inline std::filesystem::path fixtures() { return STORYCMP_FIXTURES; }
inline std::filesystem::path data_dir() { return STORYCMP_DATA; }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() /
            ("storycmp-" + tag + "-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& p) const { return path_ / p; }

 private:
  std::filesystem::path path_;
};

inline storycmp::Story make_story(std::string id, std::string text, std::string title = "Title",
                                  storycmp::Category cat = storycmp::Category::modern) {
  storycmp::Story s;
  s.id = std::move(id);
  s.title = std::move(title);
  s.category = cat;
  s.text = std::move(text);
  return s;
}

// Uniform random recursive tree: node i > 0 attaches to a node < i.
inline storycmp::DependencyGraph random_tree(std::size_t n, std::mt19937_64& rng) {
  storycmp::DependencyGraph g;
  g.node_count = n;
  for (std::size_t i = 1; i < n; ++i) g.edges.emplace_back(rng() % i, i);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

inline storycmp::DependencyGraph permute(const storycmp::DependencyGraph& g,
                                         std::mt19937_64& rng) {
  std::vector<std::size_t> perm(g.node_count);
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  storycmp::DependencyGraph out;
  out.node_count = g.node_count;
  for (auto [h, d] : g.edges) out.edges.emplace_back(perm[h], perm[d]);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace testing_support
