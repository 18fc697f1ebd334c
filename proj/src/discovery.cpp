#include "perspective/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "perspective/error.hpp"
#include "text_util.hpp"

namespace perspective {

using detail::lowercase;

WordVectorStore WordVectorStore::read_text(std::istream& in) {
  WordVectorStore store;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream fields(raw);
    std::string word;
    if (!(fields >> word)) continue;
    std::vector<std::string> rest;
    for (std::string f; fields >> f;) rest.push_back(std::move(f));
    if (line_no == 1 && rest.size() == 1 && detail::to_int(word) && detail::to_int(rest[0])) continue;
    std::vector<double> vec;
    vec.reserve(rest.size());
    for (const std::string& f : rest) {
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (end == f.c_str() || *end != '\0') {
        throw input_error("malformed_vectors", "non-numeric component at " + detail::line_ref(line_no));
      }
      vec.push_back(v);
    }
    try {
      store.add(word, std::move(vec));
    } catch (const Error& e) {
      throw input_error(e.code(), std::string(e.what()) + " at " + detail::line_ref(line_no));
    }
  }
  return store;
}

WordVectorStore WordVectorStore::read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw input_error("file_not_found", "cannot open " + path.string());
  return read_text(in);
}

void WordVectorStore::add(std::string_view word, std::vector<double> vector) {
  if (dimension_ == 0 && index_.empty()) dimension_ = static_cast<int>(vector.size());
  if (static_cast<int>(vector.size()) != dimension_ || dimension_ == 0) {
    throw input_error("malformed_vectors", "vector for \"" + std::string(word) + "\" has dimension " +
                                               std::to_string(vector.size()) + ", expected " +
                                               std::to_string(dimension_));
  }
  const auto [it, inserted] = index_.emplace(lowercase(word), data_.size());
  if (inserted) data_.insert(data_.end(), vector.begin(), vector.end());
}

std::span<const double> WordVectorStore::lookup(std::string_view word) const {
  const auto it = index_.find(lowercase(word));
  if (it == index_.end()) return {};
  return std::span<const double>(data_).subspan(it->second, static_cast<std::size_t>(dimension_));
}

std::vector<std::string> lu_words(const LexicalUnit& lu) {
  std::vector<std::string> words;
  std::string current;
  for (char c : lu.lemma) {
    if (c == ' ' || c == '_') {
      if (!current.empty()) words.push_back(lowercase(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) words.push_back(lowercase(current));
  return words;
}

std::map<std::string, FrameEmbedding> embed_frames(const FrameKB& kb, const WordVectorStore& store) {
  std::map<std::string, FrameEmbedding> out;
  const auto dim = static_cast<std::size_t>(store.dimension());
  for (const FrameEntry& frame : kb.frames()) {
    std::vector<std::string> words;
    for (const LexicalUnit& lu : frame.lexical_units) {
      for (std::string& w : lu_words(lu)) words.push_back(std::move(w));
    }
    std::sort(words.begin(), words.end());
    FrameEmbedding emb;
    emb.frame = frame.name;
    emb.words = static_cast<int>(words.size());
    std::vector<double> sum(dim, 0.0);
    for (const std::string& w : words) {
      const auto v = store.lookup(w);
      if (v.empty()) continue;
      ++emb.found;
      for (std::size_t k = 0; k < dim; ++k) sum[k] += v[k];
    }
    if (emb.found > 0) {
      for (double& x : sum) x /= emb.found;
      emb.vector = std::move(sum);
      emb.coverage = static_cast<double>(emb.found) / emb.words;
    }
    out.emplace(frame.name, std::move(emb));
  }
  return out;
}

namespace kernels {

namespace {

double cosine_distance(std::span<const double> q, double q_norm, const double* row, int dimension) {
  double dot = 0.0, norm = 0.0;
  for (int k = 0; k < dimension; ++k) {
    dot += q[static_cast<std::size_t>(k)] * row[k];
    norm += row[k] * row[k];
  }
  if (norm == 0.0 || q_norm == 0.0) return std::nan("");
  return 1.0 - dot / (std::sqrt(norm) * q_norm);
}

double norm_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

void cosine_distances_serial(std::span<const double> query, std::span<const double> rows, int dimension,
                             std::span<double> out) {
  const double q_norm = norm_of(query);
  for (std::size_t r = 0; r < out.size(); ++r) {
    out[r] = cosine_distance(query, q_norm, rows.data() + r * static_cast<std::size_t>(dimension), dimension);
  }
}

void cosine_distances_parallel(std::span<const double> query, std::span<const double> rows, int dimension,
                               std::span<double> out) {
  const double q_norm = norm_of(query);
  const auto n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long r = 0; r < n; ++r) {
    out[static_cast<std::size_t>(r)] =
        cosine_distance(query, q_norm, rows.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(dimension),
                        dimension);
  }
}

}  // namespace kernels

SearchResult keyword_search(const std::vector<std::string>& keywords, const WordVectorStore& store,
                            const std::map<std::string, FrameEmbedding>& embeddings, int top_n,
                            SearchExecution execution) {
  if (keywords.empty()) throw input_error("empty_keywords", "keyword list is empty");
  if (top_n < 1) throw input_error("bad_top_n", "top_n must be >= 1");
  SearchResult result;
  std::vector<std::string> found;
  for (const std::string& kw : keywords) {
    if (store.lookup(kw).empty()) {
      result.missing_keywords.push_back(kw);
    } else {
      found.push_back(lowercase(kw));
    }
  }
  if (found.empty()) {
    throw input_error("no_keyword_found",
                      "no keyword found in vector store: " + detail::join(result.missing_keywords, ", "));
  }
  for (const std::string& kw : result.missing_keywords) {
    result.warnings.push_back("keyword \"" + kw + "\" not in vector store; skipped");
  }
  std::sort(found.begin(), found.end());
  const auto dim = static_cast<std::size_t>(store.dimension());
  std::vector<double> centroid(dim, 0.0);
  for (const std::string& w : found) {
    const auto v = store.lookup(w);
    for (std::size_t k = 0; k < dim; ++k) centroid[k] += v[k];
  }
  for (double& x : centroid) x /= static_cast<double>(found.size());
  if (std::all_of(centroid.begin(), centroid.end(), [](double x) { return x == 0.0; })) {
    throw input_error("zero_centroid", "keyword centroid has zero norm");
  }

  std::vector<const FrameEmbedding*> frames;
  std::vector<double> rows;
  for (const auto& [name, emb] : embeddings) {
    if (emb.vector.size() != dim) continue;
    frames.push_back(&emb);
    rows.insert(rows.end(), emb.vector.begin(), emb.vector.end());
  }
  std::vector<double> distances(frames.size());
  if (execution == SearchExecution::serial) {
    kernels::cosine_distances_serial(centroid, rows, store.dimension(), distances);
  } else {
    kernels::cosine_distances_parallel(centroid, rows, store.dimension(), distances);
  }

  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (std::isnan(distances[i])) {
      result.warnings.push_back("frame " + frames[i]->frame + " has a zero-norm embedding; skipped");
      continue;
    }
    result.matches.push_back(FrameMatch{frames[i]->frame, std::clamp(distances[i], 0.0, 2.0)});
  }
  std::sort(result.matches.begin(), result.matches.end(), [](const FrameMatch& a, const FrameMatch& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.frame < b.frame;
  });
  if (result.matches.size() > static_cast<std::size_t>(top_n)) result.matches.resize(static_cast<std::size_t>(top_n));
  return result;
}

std::vector<FrameSuggestion> suggestion_payload(const std::vector<FrameMatch>& frames, const FrameKB& kb) {
  std::vector<FrameSuggestion> out;
  out.reserve(frames.size());
  for (const FrameMatch& m : frames) {
    const FrameEntry& e = kb.at(m.frame);
    out.push_back(FrameSuggestion{e.name, e.definition, e.example_sentences});
  }
  return out;
}

}  // namespace perspective
