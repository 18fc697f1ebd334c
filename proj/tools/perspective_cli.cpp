// perspective: command-line front end for ingest, analysis, statistics,
// sampling, frame discovery and the HTTP service.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "perspective/corpus.hpp"
#include "perspective/discovery.hpp"
#include "perspective/error.hpp"
#include "perspective/framenet.hpp"
#include "perspective/records.hpp"
#include "perspective/service.hpp"
#include "perspective/stats.hpp"
#include "perspective/syntax.hpp"

#ifndef PERSPECTIVE_DEFAULT_KB_DIR
#define PERSPECTIVE_DEFAULT_KB_DIR "data/kb"
#endif

namespace fs = std::filesystem;
using namespace perspective;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct KbOptions {
  std::string dir = PERSPECTIVE_DEFAULT_KB_DIR;
  std::string kb, agentivity, role_map;

  void add(CLI::App* app) {
    app->add_option("--kb-dir", dir, "Directory holding framenet_subset.jsonl, agentivity.tsv, role_mapping.tsv")
        ->capture_default_str();
    app->add_option("--kb", kb, "Compiled KB file (overrides --kb-dir)");
    app->add_option("--agentivity", agentivity, "Agentivity table (overrides --kb-dir)");
    app->add_option("--role-map", role_map, "Role mapping table (overrides --kb-dir)");
  }

  FrameKB load() const {
    KbPaths p;
    p.kb = kb.empty() ? fs::path(dir) / "framenet_subset.jsonl" : fs::path(kb);
    p.agentivity = agentivity.empty() ? fs::path(dir) / "agentivity.tsv" : fs::path(agentivity);
    const fs::path rm = role_map.empty() ? fs::path(dir) / "role_mapping.tsv" : fs::path(role_map);
    if (!role_map.empty() || fs::exists(rm)) p.role_map = rm;
    return load_kb(p);
  }
};

struct InputOptions {
  std::string index;
  std::string conllu, frames, documents, events;

  void add(CLI::App* app, bool allow_index) {
    if (allow_index) app->add_option("--index", index, "Persisted index file");
    app->add_option("--conllu", conllu, "CoNLL-U file");
    app->add_option("--annotations", frames, "Frame annotation records (JSONL)");
    app->add_option("--documents", documents, "Document metadata records (JSONL)");
    app->add_option("--events", events, "Event records (JSONL)");
  }

  bool raw() const { return !conllu.empty(); }

  Corpus load(const KbOptions& kb_opts, const FrameKB* kb) const {
    if (!index.empty()) return read_index(fs::path(index));
    if (conllu.empty() || frames.empty() || documents.empty()) {
      throw input_error("missing_input", "either --index or --conllu, --annotations and --documents are required");
    }
    CorpusPaths p{conllu, frames, documents, std::nullopt};
    if (!events.empty()) p.events = fs::path(events);
    if (kb) return load_corpus(p, *kb);
    return load_corpus(p, kb_opts.load());
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("file_not_found", "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Inline JSON, or @path to read it from a file.
Json json_arg(const std::string& text, const char* what) {
  if (text.empty()) return Json();
  const std::string body = text.front() == '@' ? read_file(text.substr(1)) : text;
  try {
    return Json::parse(body);
  } catch (const Json::exception& e) {
    throw input_error("bad_argument", std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_index_to(const std::string& path, const Corpus& corpus) {
  if (path == "-") {
    write_index(std::cout, corpus);
  } else {
    write_index(fs::path(path), corpus);
  }
}

int report(const Error& e) {
  std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
  return e.kind() == ErrorKind::internal ? kExitInternal : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perspective analysis of frame-annotated news corpora"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  KbOptions kb_opts;
  InputOptions in_opts;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate input files and write a persisted index");
  std::string ingest_out = "-";
  bool ingest_analyze = false;
  int max_steps = kDefaultMaxSteps;
  bool serial = false;
  in_opts.add(ingest, false);
  kb_opts.add(ingest);
  ingest->add_option("-o,--out", ingest_out, "Index file ('-' for stdout)")->capture_default_str();
  ingest->add_flag("--analyze", ingest_analyze, "Store the perspective annotation layer in the index");
  ingest->add_option("--max-steps", max_steps, "Traversal bound for role links")->capture_default_str();
  ingest->add_flag("--serial", serial, "Run the analysis single-threaded");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Annotate every frame instance; prints one record per instance");
  std::string analyze_save;
  in_opts.add(analyze, true);
  kb_opts.add(analyze);
  analyze->add_option("--max-steps", max_steps, "Traversal bound for role links")->capture_default_str();
  analyze->add_option("--save", analyze_save, "Also write the analyzed index here");
  analyze->add_flag("--serial", serial, "Run single-threaded");

  // stats
  auto* stats = app.add_subcommand("stats", "Descriptive statistics over an analyzed corpus");
  std::string stats_kind = "frames", stats_frame, stats_frames, filter_text, stats_format = "json";
  int bucket_days = 1;
  in_opts.add(stats, true);
  kb_opts.add(stats);
  stats->add_option("--kind", stats_kind, "frames | constructions | role-links | time-lag | foregrounding")
      ->check(CLI::IsMember({"frames", "constructions", "role-links", "time-lag", "foregrounding"}))
      ->capture_default_str();
  stats->add_option("--frame", stats_frame, "Frame for role-links and foregrounding");
  stats->add_option("--frames", stats_frames, "Comma-separated frames for time-lag");
  stats->add_option("--bucket-days", bucket_days, "Time-lag bucket width")->capture_default_str();
  stats->add_option("--filter", filter_text, "Filter as JSON, or @file");
  stats->add_option("--format", stats_format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  stats->add_option("--max-steps", max_steps, "Traversal bound when analyzing raw input")->capture_default_str();

  // sample
  auto* sample = app.add_subcommand("sample", "Random sentences matching a feature query");
  std::string query_text, q_frame, q_construction, q_role, q_path;
  std::string q_root;
  int sample_n = 10;
  std::uint64_t seed = 0;
  in_opts.add(sample, true);
  kb_opts.add(sample);
  sample->add_option("--query", query_text, "Query as JSON, or @file");
  sample->add_option("--frame", q_frame, "Frame name");
  sample->add_option("--construction", q_construction, "Construction label");
  sample->add_option("--role", q_role, "Role for a role-link constraint");
  sample->add_option("--path", q_path, "Path pattern for --role ('*' wildcard, '\\*' literal)");
  sample->add_option("--root", q_root, "true | false")->check(CLI::IsMember({"true", "false"}));
  sample->add_option("-n", sample_n, "Sentences to draw")->capture_default_str();
  sample->add_option("--seed", seed, "Sampler seed")->capture_default_str();
  sample->add_option("--filter", filter_text, "Filter as JSON, or @file");
  sample->add_option("--max-steps", max_steps, "Traversal bound when analyzing raw input")->capture_default_str();

  // search-frames
  auto* search = app.add_subcommand("search-frames", "Rank frames by cosine distance to a keyword centroid");
  std::string vectors_path, keywords_text;
  int top_n = 10;
  kb_opts.add(search);
  search->add_option("--vectors", vectors_path, "Word-vector text file")->required();
  search->add_option("--keywords", keywords_text, "Comma-separated keywords")->required();
  search->add_option("--top-n", top_n, "Results to return")->capture_default_str();

  // alternatives
  auto* alts = app.add_subcommand("alternatives", "Related frames reachable through whitelisted relations");
  std::string alt_frames, alt_relations;
  int hops = 1;
  kb_opts.add(alts);
  alts->add_option("--frames", alt_frames, "Comma-separated frames")->required();
  alts->add_option("--relations", alt_relations, "Comma-separated relation types (default: Perspective_on,Causative_of,Inchoative_of)");
  alts->add_option("--hops", hops, "Traversal depth")->capture_default_str();

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Serve indexes over HTTP");
  std::vector<std::string> serve_indexes;
  std::string host = "127.0.0.1";
  int port = 8080;
  kb_opts.add(serve_cmd);
  serve_cmd->add_option("--index", serve_indexes, "id=path of an analyzed index (repeatable)");
  serve_cmd->add_option("--vectors", vectors_path, "Word-vector text file for frame search");
  serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", port, "Port")->capture_default_str();
  serve_cmd->add_option("--max-steps", max_steps, "Traversal bound for /analyze")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    const Execution exec = serial ? Execution::serial : Execution::parallel;
    if (max_steps < 1) throw input_error("bad_argument", "--max-steps must be >= 1");

    if (ingest->parsed()) {
      const FrameKB kb = kb_opts.load();
      Corpus corpus = in_opts.load(kb_opts, &kb);
      if (ingest_analyze) corpus = analyze_corpus(corpus, kb, max_steps, exec);
      write_index_to(ingest_out, corpus);
      std::cerr << "ingested " << corpus.documents().size() << " documents, " << corpus.sentence_count()
                << " sentences, " << corpus.instance_count() << " frame instances\n";
      return 0;
    }

    if (analyze->parsed()) {
      const FrameKB kb = kb_opts.load();
      const Corpus corpus = analyze_corpus(in_opts.load(kb_opts, &kb), kb, max_steps, exec);
      write_annotation_records(std::cout, corpus);
      if (!analyze_save.empty()) write_index_to(analyze_save, corpus);
      if (corpus.failed_count() > 0) std::cerr << corpus.failed_count() << " instances failed analysis\n";
      return 0;
    }

    // Shared by stats and sample: load an index, analyzing raw input on the fly.
    const auto analyzed_input = [&](const FrameKB& kb) {
      Corpus corpus = in_opts.load(kb_opts, &kb);
      if (!corpus.analyzed()) corpus = analyze_corpus(corpus, kb, max_steps, exec);
      return corpus;
    };

    if (stats->parsed()) {
      const FrameKB kb = kb_opts.load();
      const Corpus corpus = analyzed_input(kb);
      const CorpusFilter filter = filter_from_json(json_arg(filter_text, "--filter"));
      const bool csv = stats_format == "csv";
      const auto need_frame = [&] {
        if (stats_frame.empty()) throw input_error("missing_argument", "--frame is required for --kind " + stats_kind);
      };
      Json out;
      if (stats_kind == "frames") {
        const auto r = frame_frequencies(corpus, filter);
        if (csv) write_csv(std::cout, r);
        out = to_json(r);
      } else if (stats_kind == "constructions") {
        const auto r = construction_by_frame(corpus, filter);
        if (csv) write_csv(std::cout, r);
        out = to_json(r);
      } else if (stats_kind == "role-links") {
        need_frame();
        const auto r = role_link_frequencies(corpus, stats_frame, filter);
        if (csv) write_csv(std::cout, stats_frame, r);
        out = to_json(r);
      } else if (stats_kind == "time-lag") {
        const auto list = split_list(stats_frames);
        const auto r = time_lag_histogram(corpus, {list.begin(), list.end()}, filter, bucket_days);
        if (csv) write_csv(std::cout, r);
        out = to_json(r);
      } else {
        need_frame();
        const auto r = foregrounding_share(corpus, stats_frame, filter, kb);
        if (csv) write_csv(std::cout, stats_frame, r);
        out = to_json(r);
      }
      if (!csv) std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (sample->parsed()) {
      const FrameKB kb = kb_opts.load();
      const Corpus corpus = analyzed_input(kb);
      FeatureQuery query = query_from_json(json_arg(query_text, "--query").is_null()
                                               ? Json::object()
                                               : json_arg(query_text, "--query"));
      if (!q_frame.empty()) query.frame = q_frame;
      if (!q_construction.empty()) {
        query.construction = parse_construction(q_construction);
        if (!query.construction) throw input_error("bad_query", "unknown construction \"" + q_construction + "\"");
      }
      if (!q_role.empty()) query.role_link = RoleLinkQuery{q_role, q_path.empty() ? "*" : q_path};
      if (!q_root.empty()) query.is_root = q_root == "true";
      const CorpusFilter filter = filter_from_json(json_arg(filter_text, "--filter"));
      std::cout << samples_record(corpus, sample_sentences(corpus, query, sample_n, seed, filter)).dump(2) << "\n";
      return 0;
    }

    if (search->parsed()) {
      const FrameKB kb = kb_opts.load();
      const WordVectorStore store = WordVectorStore::read_text(fs::path(vectors_path));
      const auto embeddings = embed_frames(kb, store);
      const SearchResult r = keyword_search(split_list(keywords_text), store, embeddings, top_n);
      for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << search_record(r, kb).dump(2) << "\n";
      return 0;
    }

    if (alts->parsed()) {
      const FrameKB kb = kb_opts.load();
      const auto frames = split_list(alt_frames);
      std::set<RelationType> relations = default_alternative_relations();
      if (!alt_relations.empty()) relations = relations_from_json(Json(split_list(alt_relations)));
      std::cout << to_json(kb.alternatives({frames.begin(), frames.end()}, relations, hops)).dump(2) << "\n";
      return 0;
    }

    if (serve_cmd->parsed()) {
      auto kb = std::make_shared<const FrameKB>(kb_opts.load());
      std::shared_ptr<const WordVectorStore> vectors;
      if (!vectors_path.empty()) {
        vectors = std::make_shared<const WordVectorStore>(WordVectorStore::read_text(fs::path(vectors_path)));
      }
      ServiceConfig config;
      config.max_steps = max_steps;
      Service service(kb, vectors, config);
      for (const std::string& spec : serve_indexes) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw input_error("bad_argument", "--index expects id=path, got \"" + spec + "\"");
        Corpus corpus = read_index(fs::path(spec.substr(eq + 1)));
        if (!corpus.analyzed()) corpus = analyze_corpus(corpus, *kb, max_steps, exec);
        service.add_corpus(spec.substr(0, eq), std::make_shared<const Corpus>(std::move(corpus)));
      }
      std::cerr << "listening on " << host << ":" << port << "\n";
      serve(service, host, port);
      return 0;
    }
  } catch (const Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
