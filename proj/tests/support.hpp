#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "perspective/conllu.hpp"
#include "perspective/corpus.hpp"
#include "perspective/framenet.hpp"
#include "perspective/random.hpp"
#include "perspective/synthetic.hpp"

namespace testing_support {

namespace fs = std::filesystem;
using namespace perspective;

inline fs::path data_dir() { return fs::path(PERSPECTIVE_DATA_DIR); }

inline FrameKB bundled_kb() {
  const fs::path kb = data_dir() / "kb";
  return load_kb({kb / "framenet_subset.jsonl", kb / "agentivity.tsv", kb / "role_mapping.tsv"});
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline CorpusPaths fixture_paths(const std::string& name) {
  const fs::path f = data_dir() / "fixtures";
  return {f / (name + ".conllu"), f / (name + ".frames.jsonl"), f / (name + ".docs.jsonl"), std::nullopt};
}

inline CorpusPaths mini_paths() {
  const fs::path m = data_dir() / "mini";
  return {m / "corpus.conllu", m / "frames.jsonl", m / "documents.jsonl", m / "events.jsonl"};
}

struct TokenRow {
  std::string form;
  Upos upos;
  int head;
  std::string deprel;
  std::string feats = "_";
};

inline Sentence make_sentence(const std::vector<TokenRow>& rows, std::string sent_id = "s1") {
  Sentence s;
  s.sent_id = std::move(sent_id);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Token t;
    t.index = static_cast<int>(i) + 1;
    t.form = rows[i].form;
    t.lemma = rows[i].form;
    t.upos = rows[i].upos;
    t.feats = parse_features(rows[i].feats);
    t.head = rows[i].head;
    t.deprel = rows[i].deprel;
    s.tokens.push_back(std::move(t));
  }
  s.text = surface_text(s);
  return s;
}

// Uniformly shaped random tree: a random permutation fixes insertion order,
// each node attaches to some earlier node.
inline Sentence random_tree(SplitMix64& rng, int n) {
  static const char* kDeprels[] = {"nsubj", "obj", "obl", "det", "nmod", "amod", "advmod", "conj"};
  static const Upos kTags[] = {Upos::NOUN, Upos::VERB, Upos::ADJ, Upos::DET, Upos::ADP, Upos::PRON};
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  std::vector<TokenRow> rows(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int node = order[static_cast<std::size_t>(k)];
    TokenRow& r = rows[static_cast<std::size_t>(node)];
    r.form = "w" + std::to_string(node + 1);
    r.upos = kTags[rng.below(std::size(kTags))];
    if (k == 0) {
      r.head = 0;
      r.deprel = "root";
    } else {
      r.head = order[rng.below(static_cast<std::uint64_t>(k))] + 1;
      r.deprel = kDeprels[rng.below(std::size(kDeprels))];
    }
  }
  return make_sentence(rows);
}

// Small generated corpus with randomised shape.
inline synthetic::Output random_corpus(SplitMix64& rng) {
  synthetic::Config c;
  c.seed = rng.next();
  c.documents = rng.between(1, 25);
  c.events = rng.between(1, 8);
  c.killing_instances = rng.between(0, 30);
  c.killing_foregrounding = rng.between(0, c.killing_instances);
  c.death_instances = rng.between(0, 30);
  c.death_foregrounding = rng.between(0, c.death_instances);
  c.other_instances = rng.between(0, 30);
  c.documents_without_event = rng.between(0, c.documents / 2);
  c.negative_lag_documents = rng.between(0, c.documents - c.documents_without_event);
  c.max_lag_days = rng.between(0, 60);
  return synthetic::generate(c);
}

}  // namespace testing_support
