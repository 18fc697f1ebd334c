#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "perspective/annotation.hpp"
#include "perspective/conllu.hpp"
#include "perspective/corpus.hpp"
#include "perspective/framenet.hpp"

namespace perspective {

inline constexpr int kDefaultMaxSteps = 3;

inline constexpr std::string_view kUpArrow = "↑";    // ↑
inline constexpr std::string_view kDownArrow = "↓";  // ↓

// One traversal step: upward to the head, or downward to a child whose
// deprel is recorded.
struct PathStep {
  bool up = false;
  std::string deprel;  // empty for upward steps
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

std::string render_path(const std::vector<PathStep>& steps);
// Inverse of render_path for step sequences; throws Error(input) on "*",
// "?" or malformed text.
std::vector<PathStep> parse_path(std::string_view rendered);

// Trigger token whose head lies outside the trigger span. When several do,
// the one closest to the tree root wins, then the leftmost.
int trigger_head(const Sentence& sentence, TokenSpan trigger);

Construction classify_construction(const Sentence& sentence, const FrameInstance& instance,
                                   const FrameKB& kb);

// Shortest undirected path from the trigger head into each role span;
// ties prefer fewer upward steps, then the smaller rendered string.
std::vector<RoleDependencyLink> role_dependency_links(const Sentence& sentence,
                                                      const FrameInstance& instance,
                                                      int max_steps);

bool root_status(const Sentence& sentence, const FrameInstance& instance,
                 Construction construction);

PerspectiveAnnotation analyze_instance(const Sentence& sentence, const FrameInstance& instance,
                                       const FrameKB& kb, int max_steps);

enum class Execution { serial, parallel };

// Annotates every instance. Failures are recorded per slot and never abort
// the run. Both execution modes produce identical results.
Corpus analyze_corpus(const Corpus& corpus, const FrameKB& kb, int max_steps = kDefaultMaxSteps,
                      Execution execution = Execution::parallel);

// Per-document kernels behind analyze_corpus.
namespace kernels {
std::vector<std::vector<AnnotationSlot>> analyze_documents_serial(const Corpus& corpus,
                                                                  const FrameKB& kb,
                                                                  int max_steps);
std::vector<std::vector<AnnotationSlot>> analyze_documents_parallel(const Corpus& corpus,
                                                                    const FrameKB& kb,
                                                                    int max_steps);
}  // namespace kernels

// Line-delimited annotation export, in document order.
void write_annotation_records(std::ostream& out, const Corpus& corpus);

}  // namespace perspective
