#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "perspective/framenet.hpp"

namespace perspective {

// Pretrained word vectors; words are lowercased on insert and lookup.
class WordVectorStore {
 public:
  explicit WordVectorStore(int dimension = 0) : dimension_(dimension) {}

  // Text format: "word v1 ... vd" per line. An optional "count dim" header
  // line is skipped. The first occurrence of a word wins.
  static WordVectorStore read_text(std::istream& in);
  static WordVectorStore read_text(const std::filesystem::path& path);

  int dimension() const { return dimension_; }
  std::size_t size() const { return index_.size(); }

  // Throws Error(input) when the vector length differs from dimension().
  void add(std::string_view word, std::vector<double> vector);
  // Empty span when absent.
  std::span<const double> lookup(std::string_view word) const;

 private:
  int dimension_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
};

struct FrameEmbedding {
  std::string frame;
  std::vector<double> vector;  // empty when coverage == 0
  double coverage = 0.0;
  int words = 0;
  int found = 0;
};

// LU name -> lookup words: POS suffix stripped, split on spaces and
// underscores, lowercased.
std::vector<std::string> lu_words(const LexicalUnit& lu);

// Mean of the found LU word vectors, per frame. Summation runs over the
// sorted word multiset so the result does not depend on LU order.
std::map<std::string, FrameEmbedding> embed_frames(const FrameKB& kb, const WordVectorStore& store);

struct FrameMatch {
  std::string frame;
  double distance = 0.0;  // 1 - cosine similarity
  friend bool operator==(const FrameMatch&, const FrameMatch&) = default;
};

struct SearchResult {
  std::vector<FrameMatch> matches;
  std::vector<std::string> missing_keywords;
  std::vector<std::string> warnings;
};

enum class SearchExecution { serial, parallel };

// Frames ranked by distance to the keyword centroid, ties by name.
// Throws Error(input) on empty keywords, top_n < 1, or when no keyword is
// in the store.
SearchResult keyword_search(const std::vector<std::string>& keywords, const WordVectorStore& store,
                            const std::map<std::string, FrameEmbedding>& embeddings, int top_n,
                            SearchExecution execution = SearchExecution::parallel);

namespace kernels {
// Cosine distance from `query` to each row of `rows` (dimension columns).
// Rows with zero norm get NaN.
void cosine_distances_serial(std::span<const double> query, std::span<const double> rows,
                             int dimension, std::span<double> out);
void cosine_distances_parallel(std::span<const double> query, std::span<const double> rows,
                               int dimension, std::span<double> out);
}  // namespace kernels

struct FrameSuggestion {
  std::string frame;
  std::string definition;
  std::vector<std::string> examples;
};

// Throws Error(not_found, "unknown_frame") for frames missing from the KB.
std::vector<FrameSuggestion> suggestion_payload(const std::vector<FrameMatch>& frames,
                                                const FrameKB& kb);

}  // namespace perspective
