#pragma once

// Synthetic event-linked news corpus with planted ground truth. Sentences
// come from a fixed set of hand-audited dependency templates, so the
// construction, role links, root status and foregrounding of every
// instance is known without running the analyzer.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "perspective/corpus.hpp"
#include "perspective/stats.hpp"

namespace perspective::synthetic {

struct Config {
  std::uint64_t seed = 1;
  int documents = 100;
  int events = 30;
  int killing_instances = 150;
  int killing_foregrounding = 90;
  int death_instances = 100;
  int death_foregrounding = 79;
  int other_instances = 120;
  int documents_without_event = 5;
  int negative_lag_documents = 3;
  int max_lag_days = 40;
};

// What the generator planted, tallied per instance.
struct Truth {
  std::int64_t documents = 0;
  std::int64_t sentences = 0;
  std::int64_t instances = 0;
  FrameCounts frames;
  ConstructionMatrix constructions;
  std::map<std::string, RoleLinkCounts> role_links;      // per frame
  std::map<std::string, std::int64_t> foregrounding;     // per frame
  std::map<std::string, std::int64_t> root_instances;    // per frame
  std::map<int, FrameCounts> instances_by_lag;           // raw lag in days
  std::int64_t negative_lag = 0;
  std::int64_t missing_event = 0;

  nlohmann::json to_json() const;
};

struct PlantedInstance {
  Construction construction;
  bool is_root;
  bool foregrounding;
  std::vector<RoleDependencyLink> links;
};

struct Output {
  std::vector<ParsedSentence> sentences;
  std::vector<FrameInstance> instances;
  std::vector<PlantedInstance> planted;  // parallel to instances
  std::vector<DocumentMeta> documents;
  std::vector<EventRecord> events;
  Truth truth;

  Corpus build() const;
  // corpus.conllu, frames.jsonl, documents.jsonl, events.jsonl, manifest.json
  void write(const std::filesystem::path& dir) const;
};

// Throws Error(input) when the configuration is inconsistent.
Output generate(const Config& config);

// Number of distinct sentence templates (for tests).
std::size_t template_count();
// Builds one sentence from each template, in template order.
Output template_showcase();

}  // namespace perspective::synthetic
