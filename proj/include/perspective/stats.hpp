#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "perspective/annotation.hpp"
#include "perspective/corpus.hpp"
#include "perspective/framenet.hpp"

namespace perspective {

enum class Comparator { eq, in, range };
std::optional<Comparator> parse_comparator(std::string_view text);
std::string_view to_string(Comparator c);

// eq uses values[0]; in uses all values; range is the closed interval
// [values[0], values[1]], compared as dates for date keys and as strings
// otherwise.
struct Predicate {
  std::string key;
  Comparator op = Comparator::eq;
  std::vector<std::string> values;
};

struct CorpusFilter {
  std::vector<Predicate> documents;
  std::vector<Predicate> events;
  std::optional<std::set<std::string>> frames;

  bool empty() const { return documents.empty() && events.empty() && !frames; }
};

// Compiled filter bound to a corpus. Throws Error(input, "unknown_filter_key")
// listing the known keys.
class FilterMatcher {
 public:
  FilterMatcher(const Corpus& corpus, const CorpusFilter& filter);
  bool document_matches(std::size_t doc) const { return doc_ok_[doc]; }
  bool frame_allowed(std::string_view frame) const;
  bool instance_matches(InstanceRef ref) const;

 private:
  const Corpus& corpus_;
  const CorpusFilter& filter_;
  std::vector<bool> doc_ok_;
};

using FrameCounts = std::map<std::string, std::int64_t>;
using ConstructionCounts = std::map<Construction, std::int64_t>;
using ConstructionMatrix = std::map<std::string, ConstructionCounts>;
// role -> rendered path -> count
using RoleLinkCounts = std::map<std::string, std::map<std::string, std::int64_t>>;

// Statistics count successfully analyzed instances; failed slots are
// excluded everywhere. Every operation requires corpus.analyzed().
FrameCounts frame_frequencies(const Corpus& corpus, const CorpusFilter& filter);
ConstructionMatrix construction_by_frame(const Corpus& corpus, const CorpusFilter& filter);
RoleLinkCounts role_link_frequencies(const Corpus& corpus, std::string_view frame,
                                     const CorpusFilter& filter);

struct TimeLagBucket {
  int start = 0;  // inclusive, days
  int end = 0;    // exclusive, days
  FrameCounts counts;
};

struct TimeLagHistogram {
  int bucket_days = 1;
  std::vector<TimeLagBucket> buckets;  // contiguous from day 0
  std::int64_t negative_lag = 0;       // instances clamped into bucket 0
  std::int64_t missing_event = 0;      // instances in documents without an event
};

// frames empty means every frame. Throws on bucket_days < 1.
TimeLagHistogram time_lag_histogram(const Corpus& corpus, const std::set<std::string>& frames,
                                    const CorpusFilter& filter, int bucket_days);

// Configurable victim-foregrounding rule.
struct ForegroundingRule {
  std::set<Construction> constructions{Construction::vrb_passive, Construction::vrb_unaccusative};
  std::set<std::string> prominent_paths{"*", "nsubj↓"};
};

struct ForegroundingShare {
  double share = 0.0;  // 0 when denominator is 0
  std::int64_t foregrounding = 0;
  std::int64_t denominator = 0;
};

bool is_victim_foregrounding(const PerspectiveAnnotation& annotation, std::string_view frame,
                             const FrameKB& kb, const ForegroundingRule& rule = {});

// Throws Error(input, "no_role_mapping") when the frame has no role mapping.
ForegroundingShare foregrounding_share(const Corpus& corpus, std::string_view frame,
                                       const CorpusFilter& filter, const FrameKB& kb,
                                       const ForegroundingRule& rule = {});

// Path pattern: '*' matches any run of characters, "\*" a literal star.
bool path_matches(std::string_view pattern, std::string_view path);

struct RoleLinkQuery {
  std::string role;
  std::string path_pattern;
};

struct FeatureQuery {
  std::optional<std::string> frame;
  std::optional<Construction> construction;
  std::optional<RoleLinkQuery> role_link;
  std::optional<bool> is_root;

  bool empty() const { return !frame && !construction && !role_link && !is_root; }
  // Canonical text used to key the sampler.
  std::string canonical() const;
};

bool instance_matches(const FrameInstance& instance, const PerspectiveAnnotation& annotation,
                      const FeatureQuery& query);

struct SampledSentence {
  std::string doc_id;
  std::string sent_id;
  std::string text;
  std::vector<InstanceRef> matches;
};

// Uniform sample without replacement over sentences holding at least one
// matching instance; output ordered by (doc_id, sent_id).
std::vector<SampledSentence> sample_sentences(const Corpus& corpus, const FeatureQuery& query,
                                              int n, std::uint64_t seed,
                                              const CorpusFilter& filter = {});

struct FocusScores {
  double murderer = 0;
  double victim = 0;
  double object = 0;
  double concept_emotion = 0;
};

struct FocusScoreRow {
  std::string_view frame;
  Construction construction;
  FocusScores scores;
};

// Survey means on a 0-5 scale, one row per surveyed frame/construction pair.
const std::vector<FocusScoreRow>& focus_score_table();
std::optional<FocusScores> focus_scores(std::string_view frame, Construction construction);

struct DocumentViewSentence {
  const Sentence* sentence = nullptr;
  std::vector<InstanceRef> instances;
};

// Throws Error(not_found, "unknown_document").
std::vector<DocumentViewSentence> document_view(const Corpus& corpus, std::string_view doc_id);

// CSV exports; histogram rows carry explicit bucket boundaries.
void write_csv(std::ostream& out, const FrameCounts& counts);
void write_csv(std::ostream& out, const ConstructionMatrix& matrix);
void write_csv(std::ostream& out, std::string_view frame, const RoleLinkCounts& counts);
void write_csv(std::ostream& out, const TimeLagHistogram& histogram);
void write_csv(std::ostream& out, std::string_view frame, const ForegroundingShare& share);

}  // namespace perspective
