#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "perspective/annotation.hpp"
#include "perspective/conllu.hpp"
#include "perspective/date.hpp"

namespace perspective {

class FrameKB;

struct EventRecord {
  std::string event_id;
  Date event_date;
  std::map<std::string, std::string> attributes;
  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct DocumentMeta {
  std::string doc_id;
  std::optional<std::string> event_id;
  Date pub_date;
  std::string source;
  std::optional<std::string> title;
  std::optional<std::string> url;
  friend bool operator==(const DocumentMeta&, const DocumentMeta&) = default;
};

struct CorpusDocument {
  DocumentMeta meta;
  std::vector<Sentence> sentences;
  // Ordered by sentence, then by input order within a sentence.
  std::vector<FrameInstance> instances;

  const std::string& doc_id() const { return meta.doc_id; }
  const Sentence* find_sentence(std::string_view sent_id) const;
  friend bool operator==(const CorpusDocument&, const CorpusDocument&) = default;
};

// Position of an instance inside a corpus.
struct InstanceRef {
  std::size_t doc = 0;
  std::size_t instance = 0;
  friend auto operator<=>(const InstanceRef&, const InstanceRef&) = default;
};

// Record parsers for the sidecar files. All throw Error(input) naming the
// line on malformed records.
std::vector<FrameInstance> parse_frame_annotations(std::istream& in);
std::vector<DocumentMeta> parse_document_meta(std::istream& in);
std::vector<EventRecord> parse_events(std::istream& in);

void write_frame_annotations(std::ostream& out, const std::vector<FrameInstance>& instances);
void write_document_meta(std::ostream& out, const std::vector<DocumentMeta>& docs);
void write_events(std::ostream& out, const std::vector<EventRecord>& events);

// Checks frame names against the KB and spans against their sentences.
// Unknown frames and out-of-bounds spans throw; annotations whose sentence
// cannot be found are not checked here.
void validate_frame_instances(const std::vector<FrameInstance>& instances,
                              const std::vector<ParsedSentence>& sentences,
                              const FrameKB& kb);

// Convenience: parse then validate.
std::vector<FrameInstance> parse_frame_annotations(std::istream& in,
                                                   const std::vector<ParsedSentence>& sentences,
                                                   const FrameKB& kb);

// Immutable corpus store with secondary indexes. Built once; analysis
// produces a new store rather than mutating this one.
class Corpus {
 public:
  // Validates cross references and builds indexes. Throws Error(input)
  // listing every dangling key.
  static Corpus build(std::vector<CorpusDocument> documents, std::vector<EventRecord> events);

  const std::vector<CorpusDocument>& documents() const { return documents_; }
  const std::vector<EventRecord>& events() const { return events_; }

  const CorpusDocument* find_document(std::string_view doc_id) const;
  std::optional<std::size_t> document_position(std::string_view doc_id) const;
  const EventRecord* find_event(std::string_view event_id) const;
  // Event of the document, if it has one.
  const EventRecord* event_of(const CorpusDocument& doc) const;

  const FrameInstance& instance(InstanceRef ref) const {
    return documents_[ref.doc].instances[ref.instance];
  }
  const Sentence& sentence_of(InstanceRef ref) const;

  std::size_t sentence_count() const { return sentence_count_; }
  std::size_t instance_count() const { return instance_count_; }

  // Index lookups; unknown keys give an empty list.
  const std::vector<InstanceRef>& instances_of_frame(std::string_view frame) const;
  const std::vector<InstanceRef>& instances_with(std::string_view frame, Construction c) const;
  const std::vector<std::size_t>& documents_of_event(std::string_view event_id) const;
  const std::vector<std::size_t>& documents_of_source(std::string_view source) const;
  // Documents with pub_date in [from, to].
  std::vector<std::size_t> documents_published(Date from, Date to) const;
  const std::map<std::string, std::vector<InstanceRef>, std::less<>>& frame_index() const {
    return by_frame_;
  }

  // Analysis layer.
  bool analyzed() const { return analyzed_; }
  int max_steps() const { return max_steps_; }
  // Slot for an instance; requires analyzed().
  const AnnotationSlot& slot(InstanceRef ref) const { return slots_[ref.doc][ref.instance]; }
  const PerspectiveAnnotation* annotation(InstanceRef ref) const;
  const std::vector<std::vector<AnnotationSlot>>& slots() const { return slots_; }
  std::size_t failed_count() const;

  // Returns a copy carrying the given annotations. `slots` must mirror
  // documents()[d].instances.
  Corpus with_annotations(std::vector<std::vector<AnnotationSlot>> slots, int max_steps) const;

  // Metadata keys usable in filters.
  std::vector<std::string> document_keys() const;
  std::vector<std::string> event_keys() const;

 private:
  void build_indexes();

  std::vector<CorpusDocument> documents_;
  std::vector<EventRecord> events_;
  std::map<std::string, std::size_t, std::less<>> doc_pos_;
  std::map<std::string, std::size_t, std::less<>> event_pos_;
  std::map<std::string, std::vector<InstanceRef>, std::less<>> by_frame_;
  std::map<std::pair<std::string, Construction>, std::vector<InstanceRef>> by_frame_construction_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_event_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_source_;
  std::vector<std::pair<Date, std::size_t>> by_date_;
  std::size_t sentence_count_ = 0;
  std::size_t instance_count_ = 0;

  bool analyzed_ = false;
  int max_steps_ = 0;
  std::vector<std::vector<AnnotationSlot>> slots_;
};

using CorpusHandle = std::shared_ptr<const Corpus>;

struct CorpusPaths {
  std::filesystem::path conllu;
  std::filesystem::path annotations;
  std::filesystem::path documents;
  std::optional<std::filesystem::path> events;
};

// Builds a corpus from the four input files.
Corpus load_corpus(const CorpusPaths& paths, const FrameKB& kb);
// Same, from already-open streams (events may be null).
Corpus load_corpus(std::istream& conllu, std::istream& annotations, std::istream& documents,
                   std::istream* events, const FrameKB& kb);

// Groups parsed sentences into documents and attaches instances and
// metadata. Without require_metadata, documents lacking a metadata record
// keep only their doc_id.
Corpus assemble_corpus(std::vector<ParsedSentence> sentences, std::vector<FrameInstance> instances,
                       std::vector<DocumentMeta> metas, std::vector<EventRecord> events,
                       bool require_metadata);

// Single-file persisted store. Output is byte-identical for equal corpora.
void write_index(std::ostream& out, const Corpus& corpus);
void write_index(const std::filesystem::path& path, const Corpus& corpus);
Corpus read_index(std::istream& in);
Corpus read_index(const std::filesystem::path& path);

}  // namespace perspective
