#pragma once

// Structured-record encodings shared by the CLI and the HTTP service.

#include <json.hpp>

#include "perspective/corpus.hpp"
#include "perspective/discovery.hpp"
#include "perspective/framenet.hpp"
#include "perspective/stats.hpp"

namespace perspective {

using Json = nlohmann::json;

// {instance_id, doc_id, sent_id, frame, construction, is_root, trigger_head,
//  role_links: [{role, path, resolved}]}, or {..., error} for failed slots.
Json annotation_record(const Corpus& corpus, InstanceRef ref);

Json sentence_record(const Corpus& corpus, const Sentence& sentence,
                     const std::vector<InstanceRef>& instances);
Json document_view_record(const Corpus& corpus, std::string_view doc_id);

Json to_json(const FrameCounts& counts);
Json to_json(const ConstructionMatrix& matrix);
Json to_json(const RoleLinkCounts& counts);
Json to_json(const TimeLagHistogram& histogram);
Json to_json(const ForegroundingShare& share);
Json to_json(const FocusScores& scores);
Json to_json(const AlternativesResult& result);

Json samples_record(const Corpus& corpus, const std::vector<SampledSentence>& samples);
Json search_record(const SearchResult& result, const FrameKB& kb);

// Request decoding; all throw Error(input) with a descriptive code.
//
// Filter: {"documents": [{"key", "op": "eq"|"in"|"range", "value",
//          "values", "from", "to"}], "events": [...], "frames": [...]}
CorpusFilter filter_from_json(const Json& j);
// Query: {"frame", "construction", "role_link": {"role", "path"}, "is_root"}
FeatureQuery query_from_json(const Json& j);
std::set<RelationType> relations_from_json(const Json& j);

// Pre-parsed input: [{"doc_id", "sent_id", "text", "tokens": [{"id", "form",
// "lemma", "upos", "xpos", "feats", "head", "deprel", "deps", "misc"}],
// "frames": [{"frame", "trigger", "roles", "instance_id"}]}]. Frame records
// come back as annotation lines with doc_id and sent_id filled in.
struct PreParsedInput {
  std::vector<ParsedSentence> sentences;
  std::vector<Json> frame_records;
};
PreParsedInput sentences_from_json(const Json& list);

}  // namespace perspective
