// Regenerates the synthetic mini-corpus and the toy word vectors.
//
//   make_fixtures --out data [--seed 1] [--kb-dir data/kb]

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "perspective/discovery.hpp"
#include "perspective/error.hpp"
#include "perspective/framenet.hpp"
#include "perspective/random.hpp"
#include "perspective/synthetic.hpp"

namespace fs = std::filesystem;
using namespace perspective;

namespace {

// Each frame gets a random direction; a word's vector is the sum of the
// directions of the frames listing it, plus a little noise.
void write_toy_vectors(const FrameKB& kb, const fs::path& path, std::uint64_t seed, int dim) {
  SplitMix64 rng(seed);
  const auto gauss = [&rng] {
    const double u1 = 1.0 - rng.unit(), u2 = rng.unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  std::map<std::string, std::vector<double>> words;
  for (const FrameEntry& f : kb.frames()) {
    std::vector<double> base(static_cast<std::size_t>(dim));
    for (double& x : base) x = gauss();
    for (const LexicalUnit& lu : f.lexical_units) {
      for (const std::string& w : lu_words(lu)) {
        auto& v = words[w];
        v.resize(static_cast<std::size_t>(dim), 0.0);
        for (int k = 0; k < dim; ++k) v[static_cast<std::size_t>(k)] += base[static_cast<std::size_t>(k)];
      }
    }
  }
  for (const char* extra : {"woman", "husband", "police", "car", "cyclist", "violence", "femicide"}) {
    words.try_emplace(extra, std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  }
  std::ofstream out(path);
  if (!out) throw input_error("write_failed", "cannot write " + path.string());
  out << words.size() << " " << dim << "\n";
  for (auto& [w, v] : words) {
    out << w;
    for (double x : v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " %.6f", x + 0.1 * gauss());
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate synthetic fixtures"};
  std::string out_dir = "data", kb_dir = "data/kb";
  std::uint64_t seed = 1;
  int dim = 32;
  app.add_option("--out", out_dir, "Data directory")->capture_default_str();
  app.add_option("--kb-dir", kb_dir, "Bundled KB directory")->capture_default_str();
  app.add_option("--seed", seed, "Generator seed")->capture_default_str();
  app.add_option("--dim", dim, "Toy vector dimension")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  try {
    synthetic::Config config;
    config.seed = seed;
    const synthetic::Output mini = synthetic::generate(config);
    mini.write(fs::path(out_dir) / "mini");
    const FrameKB kb = load_kb({fs::path(kb_dir) / "framenet_subset.jsonl", fs::path(kb_dir) / "agentivity.tsv",
                                fs::path(kb_dir) / "role_mapping.tsv"});
    fs::create_directories(fs::path(out_dir) / "vectors");
    write_toy_vectors(kb, fs::path(out_dir) / "vectors" / "toy_vectors.txt", seed, dim);
    std::cerr << "wrote " << mini.truth.documents << " documents, " << mini.truth.instances << " instances\n";
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
