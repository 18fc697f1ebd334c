#include "perspective/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "perspective/error.hpp"
#include "perspective/framenet.hpp"
#include "text_util.hpp"

namespace perspective {

using detail::line_ref;
using detail::trim;
using nlohmann::json;

namespace {

const std::vector<InstanceRef> kNoInstances;
const std::vector<std::size_t> kNoDocuments;

// Calls `fn(record, line_no)` for every non-blank line, turning JSON errors
// into input errors that name the line.
template <typename Fn>
void for_each_record(std::istream& in, const char* what, Fn fn) {
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (trim(raw).empty()) continue;
    try {
      fn(json::parse(raw), line_no);
    } catch (const json::exception& e) {
      throw input_error("malformed_record",
                        std::string("invalid ") + what + " record at " + line_ref(line_no) + ": " + e.what());
    }
  }
}

TokenSpan read_span(const json& j) {
  return TokenSpan{j.at("start").get<int>(), j.at("end").get<int>()};
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

std::string sentence_key(const std::string& doc, const std::string& sent) {
  return doc + '\x1f' + sent;
}

// Index file encoding.

json token_to_json(const Token& t) {
  return json::array({t.index, t.form, t.lemma, std::string(to_string(t.upos)), t.xpos,
                      format_features(t.feats), t.head, t.deprel, t.deps, t.misc});
}

Token token_from_json(const json& j) {
  Token t;
  t.index = j.at(0).get<int>();
  t.form = j.at(1).get<std::string>();
  t.lemma = j.at(2).get<std::string>();
  const auto upos = parse_upos(j.at(3).get<std::string>());
  if (!upos) throw input_error("malformed_index", "bad UPOS in index");
  t.upos = *upos;
  t.xpos = j.at(4).get<std::string>();
  t.feats = parse_features(j.at(5).get<std::string>());
  t.head = j.at(6).get<int>();
  t.deprel = j.at(7).get<std::string>();
  t.deps = j.at(8).get<std::string>();
  t.misc = j.at(9).get<std::string>();
  return t;
}

json instance_to_json(const FrameInstance& inst) {
  json roles = json::array();
  for (const RoleSpan& r : inst.roles) {
    roles.push_back({{"name", r.name}, {"start", r.span.start}, {"end", r.span.end}});
  }
  return {{"instance_id", inst.instance_id},
          {"doc_id", inst.doc_id},
          {"sent_id", inst.sent_id},
          {"frame", inst.frame},
          {"trigger", {{"start", inst.trigger.start}, {"end", inst.trigger.end}}},
          {"roles", roles}};
}

json meta_to_json(const DocumentMeta& m) {
  json j = {{"doc_id", m.doc_id}, {"pub_date", m.pub_date.to_string()}, {"source", m.source}};
  if (m.event_id) j["event_id"] = *m.event_id;
  if (m.title) j["title"] = *m.title;
  if (m.url) j["url"] = *m.url;
  return j;
}

DocumentMeta meta_from_json(const json& j) {
  DocumentMeta m;
  m.doc_id = j.at("doc_id").get<std::string>();
  m.event_id = optional_string(j, "event_id");
  m.pub_date = Date::parse(j.at("pub_date").get<std::string>());
  m.source = j.at("source").get<std::string>();
  m.title = optional_string(j, "title");
  m.url = optional_string(j, "url");
  return m;
}

json event_to_json(const EventRecord& e) {
  return {{"event_id", e.event_id},
          {"event_date", e.event_date.to_string()},
          {"attributes", e.attributes}};
}

EventRecord event_from_json(const json& j) {
  EventRecord e;
  e.event_id = j.at("event_id").get<std::string>();
  e.event_date = Date::parse(j.at("event_date").get<std::string>());
  if (const auto it = j.find("attributes"); it != j.end()) {
    e.attributes = it->get<std::map<std::string, std::string>>();
  }
  return e;
}

FrameInstance instance_from_json(const json& j) {
  FrameInstance inst;
  inst.doc_id = j.value("doc_id", "doc0");
  inst.sent_id = j.at("sent_id").get<std::string>();
  inst.frame = j.at("frame").get<std::string>();
  inst.trigger = read_span(j.at("trigger"));
  inst.instance_id = j.value("instance_id", "");
  if (const auto it = j.find("roles"); it != j.end()) {
    for (const auto& r : *it) {
      inst.roles.push_back(RoleSpan{r.at("name").get<std::string>(), read_span(r)});
    }
  }
  return inst;
}

json slot_to_json(const AnnotationSlot& slot) {
  if (!slot.ok()) return {{"error", slot.error}};
  const PerspectiveAnnotation& a = *slot.annotation;
  json links = json::array();
  for (const RoleDependencyLink& l : a.role_links) links.push_back(json::array({l.role, l.path, l.resolved}));
  return {{"construction", std::string(to_string(a.construction))},
          {"is_root", a.is_root},
          {"trigger_head", a.trigger_head},
          {"role_links", links}};
}

AnnotationSlot slot_from_json(const json& j, const std::string& instance_id) {
  AnnotationSlot slot;
  if (j.contains("error")) {
    slot.error = j.at("error").get<std::string>();
    return slot;
  }
  PerspectiveAnnotation a;
  a.instance_id = instance_id;
  const auto c = parse_construction(j.at("construction").get<std::string>());
  if (!c) throw input_error("malformed_index", "bad construction label in index");
  a.construction = *c;
  a.is_root = j.at("is_root").get<bool>();
  a.trigger_head = j.at("trigger_head").get<int>();
  for (const auto& l : j.at("role_links")) {
    a.role_links.push_back(RoleDependencyLink{l.at(0).get<std::string>(), l.at(1).get<std::string>(),
                                              l.at(2).get<bool>()});
  }
  slot.annotation = std::move(a);
  return slot;
}

}  // namespace

const Sentence* CorpusDocument::find_sentence(std::string_view sent_id) const {
  for (const Sentence& s : sentences) {
    if (s.sent_id == sent_id) return &s;
  }
  return nullptr;
}

std::vector<FrameInstance> parse_frame_annotations(std::istream& in) {
  std::vector<FrameInstance> out;
  std::map<std::string, int> per_sentence;
  std::set<std::string> ids;
  for_each_record(in, "frame annotation", [&](const json& j, int line_no) {
    FrameInstance inst = instance_from_json(j);
    const std::string where = " at " + line_ref(line_no);
    if (inst.trigger.start < 0 || inst.trigger.empty()) {
      throw input_error("bad_span", "empty or negative trigger span" + where);
    }
    for (const RoleSpan& r : inst.roles) {
      if (r.span.start < 0 || r.span.empty()) {
        throw input_error("bad_span", "empty or negative span for role " + r.name + where);
      }
    }
    const int k = per_sentence[sentence_key(inst.doc_id, inst.sent_id)]++;
    if (inst.instance_id.empty()) {
      inst.instance_id = inst.doc_id + ":" + inst.sent_id + ":" + std::to_string(k);
    }
    if (!ids.insert(inst.instance_id).second) {
      throw input_error("duplicate_instance_id", "duplicate instance_id \"" + inst.instance_id + "\"" + where);
    }
    out.push_back(std::move(inst));
  });
  return out;
}

std::vector<DocumentMeta> parse_document_meta(std::istream& in) {
  std::vector<DocumentMeta> out;
  for_each_record(in, "document", [&](const json& j, int line_no) {
    try {
      out.push_back(meta_from_json(j));
    } catch (const Error& e) {
      throw input_error(e.code(), std::string(e.what()) + " at " + line_ref(line_no));
    }
  });
  return out;
}

std::vector<EventRecord> parse_events(std::istream& in) {
  std::vector<EventRecord> out;
  for_each_record(in, "event", [&](const json& j, int line_no) {
    try {
      out.push_back(event_from_json(j));
    } catch (const Error& e) {
      throw input_error(e.code(), std::string(e.what()) + " at " + line_ref(line_no));
    }
  });
  return out;
}

void write_frame_annotations(std::ostream& out, const std::vector<FrameInstance>& instances) {
  for (const FrameInstance& inst : instances) out << instance_to_json(inst).dump() << '\n';
}

void write_document_meta(std::ostream& out, const std::vector<DocumentMeta>& docs) {
  for (const DocumentMeta& m : docs) out << meta_to_json(m).dump() << '\n';
}

void write_events(std::ostream& out, const std::vector<EventRecord>& events) {
  for (const EventRecord& e : events) out << event_to_json(e).dump() << '\n';
}

void validate_frame_instances(const std::vector<FrameInstance>& instances,
                              const std::vector<ParsedSentence>& sentences, const FrameKB& kb) {
  std::map<std::string, const Sentence*> lookup;
  for (const ParsedSentence& ps : sentences) lookup[sentence_key(ps.doc_id, ps.sentence.sent_id)] = &ps.sentence;

  std::set<std::string> unknown;
  for (const FrameInstance& inst : instances) {
    if (!kb.contains(inst.frame)) unknown.insert(inst.frame);
  }
  if (!unknown.empty()) {
    throw input_error("unknown_frame", "unknown frame: " +
                                           detail::join({unknown.begin(), unknown.end()}, ", "));
  }
  for (const FrameInstance& inst : instances) {
    const auto it = lookup.find(sentence_key(inst.doc_id, inst.sent_id));
    if (it == lookup.end()) continue;
    const int n = it->second->size();
    const auto check = [&](TokenSpan span, const std::string& what) {
      if (span.start < 0 || span.empty() || span.end > n) {
        throw input_error("span_out_of_bounds",
                          what + " span [" + std::to_string(span.start) + ", " + std::to_string(span.end) +
                              ") out of bounds for " + inst.doc_id + "/" + inst.sent_id + " (" +
                              std::to_string(n) + " tokens)");
      }
    };
    check(inst.trigger, "trigger");
    for (const RoleSpan& r : inst.roles) check(r.span, "role " + r.name);
  }
}

std::vector<FrameInstance> parse_frame_annotations(std::istream& in,
                                                   const std::vector<ParsedSentence>& sentences,
                                                   const FrameKB& kb) {
  auto instances = parse_frame_annotations(in);
  validate_frame_instances(instances, sentences, kb);
  return instances;
}

Corpus Corpus::build(std::vector<CorpusDocument> documents, std::vector<EventRecord> events) {
  Corpus c;
  c.documents_ = std::move(documents);
  c.events_ = std::move(events);
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < c.events_.size(); ++i) {
    if (!c.event_pos_.emplace(c.events_[i].event_id, i).second) {
      throw input_error("duplicate_event_id", "duplicate event_id \"" + c.events_[i].event_id + "\"");
    }
  }
  for (std::size_t d = 0; d < c.documents_.size(); ++d) {
    const CorpusDocument& doc = c.documents_[d];
    if (!c.doc_pos_.emplace(doc.doc_id(), d).second) {
      throw input_error("duplicate_doc_id", "duplicate doc_id \"" + doc.doc_id() + "\"");
    }
    if (doc.meta.event_id && !c.event_pos_.count(*doc.meta.event_id)) {
      problems.push_back("event_id " + *doc.meta.event_id + " (document " + doc.doc_id() + ")");
    }
    for (const FrameInstance& inst : doc.instances) {
      if (inst.doc_id != doc.doc_id() || !doc.find_sentence(inst.sent_id)) {
        problems.push_back("sent_id " + inst.sent_id + " (document " + inst.doc_id + ", instance " +
                           inst.instance_id + ")");
      }
    }
  }
  if (!problems.empty()) {
    throw input_error("dangling_reference", "dangling references: " + detail::join(problems, "; "));
  }
  c.build_indexes();
  return c;
}

void Corpus::build_indexes() {
  by_frame_.clear();
  by_frame_construction_.clear();
  by_event_.clear();
  by_source_.clear();
  by_date_.clear();
  sentence_count_ = 0;
  instance_count_ = 0;
  for (std::size_t d = 0; d < documents_.size(); ++d) {
    const CorpusDocument& doc = documents_[d];
    sentence_count_ += doc.sentences.size();
    instance_count_ += doc.instances.size();
    if (doc.meta.event_id) by_event_[*doc.meta.event_id].push_back(d);
    by_source_[doc.meta.source].push_back(d);
    by_date_.emplace_back(doc.meta.pub_date, d);
    for (std::size_t i = 0; i < doc.instances.size(); ++i) {
      const InstanceRef ref{d, i};
      by_frame_[doc.instances[i].frame].push_back(ref);
      if (analyzed_ && slots_[d][i].ok()) {
        by_frame_construction_[{doc.instances[i].frame, slots_[d][i].annotation->construction}].push_back(ref);
      }
    }
  }
  std::sort(by_date_.begin(), by_date_.end());
}

const CorpusDocument* Corpus::find_document(std::string_view doc_id) const {
  const auto pos = document_position(doc_id);
  return pos ? &documents_[*pos] : nullptr;
}

std::optional<std::size_t> Corpus::document_position(std::string_view doc_id) const {
  const auto it = doc_pos_.find(doc_id);
  if (it == doc_pos_.end()) return std::nullopt;
  return it->second;
}

const EventRecord* Corpus::find_event(std::string_view event_id) const {
  const auto it = event_pos_.find(event_id);
  return it == event_pos_.end() ? nullptr : &events_[it->second];
}

const EventRecord* Corpus::event_of(const CorpusDocument& doc) const {
  return doc.meta.event_id ? find_event(*doc.meta.event_id) : nullptr;
}

const Sentence& Corpus::sentence_of(InstanceRef ref) const {
  const CorpusDocument& doc = documents_[ref.doc];
  return *doc.find_sentence(doc.instances[ref.instance].sent_id);
}

const std::vector<InstanceRef>& Corpus::instances_of_frame(std::string_view frame) const {
  const auto it = by_frame_.find(frame);
  return it == by_frame_.end() ? kNoInstances : it->second;
}

const std::vector<InstanceRef>& Corpus::instances_with(std::string_view frame, Construction c) const {
  const auto it = by_frame_construction_.find({std::string(frame), c});
  return it == by_frame_construction_.end() ? kNoInstances : it->second;
}

const std::vector<std::size_t>& Corpus::documents_of_event(std::string_view event_id) const {
  const auto it = by_event_.find(event_id);
  return it == by_event_.end() ? kNoDocuments : it->second;
}

const std::vector<std::size_t>& Corpus::documents_of_source(std::string_view source) const {
  const auto it = by_source_.find(source);
  return it == by_source_.end() ? kNoDocuments : it->second;
}

std::vector<std::size_t> Corpus::documents_published(Date from, Date to) const {
  std::vector<std::size_t> out;
  auto it = std::lower_bound(by_date_.begin(), by_date_.end(), std::make_pair(from, std::size_t{0}));
  for (; it != by_date_.end() && it->first <= to; ++it) out.push_back(it->second);
  std::sort(out.begin(), out.end());
  return out;
}

const PerspectiveAnnotation* Corpus::annotation(InstanceRef ref) const {
  if (!analyzed_) return nullptr;
  const auto& slot = slots_[ref.doc][ref.instance];
  return slot.ok() ? &*slot.annotation : nullptr;
}

std::size_t Corpus::failed_count() const {
  std::size_t n = 0;
  for (const auto& doc : slots_) {
    for (const auto& s : doc) n += s.ok() ? 0 : 1;
  }
  return n;
}

Corpus Corpus::with_annotations(std::vector<std::vector<AnnotationSlot>> slots, int max_steps) const {
  if (slots.size() != documents_.size()) {
    throw Error(ErrorKind::internal, "annotation_mismatch", "annotation slots do not mirror documents");
  }
  for (std::size_t d = 0; d < slots.size(); ++d) {
    if (slots[d].size() != documents_[d].instances.size()) {
      throw Error(ErrorKind::internal, "annotation_mismatch",
                  "annotation slots do not mirror instances of " + documents_[d].doc_id());
    }
  }
  Corpus c = *this;
  c.slots_ = std::move(slots);
  c.analyzed_ = true;
  c.max_steps_ = max_steps;
  c.build_indexes();
  return c;
}

std::vector<std::string> Corpus::document_keys() const {
  return {"doc_id", "event_id", "pub_date", "source", "title", "url"};
}

std::vector<std::string> Corpus::event_keys() const {
  std::set<std::string> keys{"event_date", "event_id"};
  for (const EventRecord& e : events_) {
    for (const auto& [k, v] : e.attributes) keys.insert(k);
  }
  return {keys.begin(), keys.end()};
}

Corpus load_corpus(std::istream& conllu, std::istream& annotations, std::istream& documents,
                   std::istream* events, const FrameKB& kb) {
  std::vector<ParsedSentence> sentences = parse_conllu(conllu);
  std::vector<FrameInstance> instances = parse_frame_annotations(annotations, sentences, kb);
  std::vector<DocumentMeta> metas = parse_document_meta(documents);
  std::vector<EventRecord> event_records;
  if (events) event_records = parse_events(*events);
  return assemble_corpus(std::move(sentences), std::move(instances), std::move(metas), std::move(event_records),
                         true);
}

Corpus assemble_corpus(std::vector<ParsedSentence> sentences, std::vector<FrameInstance> instances,
                       std::vector<DocumentMeta> metas, std::vector<EventRecord> event_records,
                       bool require_metadata) {

  std::vector<CorpusDocument> docs;
  std::map<std::string, std::size_t> pos;
  for (ParsedSentence& ps : sentences) {
    auto [it, inserted] = pos.emplace(ps.doc_id, docs.size());
    if (inserted) {
      docs.emplace_back();
      docs.back().meta.doc_id = ps.doc_id;
    }
    docs[it->second].sentences.push_back(std::move(ps.sentence));
  }

  std::vector<std::string> problems;
  std::set<std::string> have_meta;
  for (DocumentMeta& m : metas) {
    const auto it = pos.find(m.doc_id);
    if (it == pos.end()) {
      problems.push_back("doc_id " + m.doc_id + " (metadata without sentences)");
      continue;
    }
    if (!have_meta.insert(m.doc_id).second) {
      throw input_error("duplicate_doc_id", "duplicate metadata for doc_id \"" + m.doc_id + "\"");
    }
    docs[it->second].meta = std::move(m);
  }
  for (const CorpusDocument& d : docs) {
    if (require_metadata && !have_meta.count(d.doc_id())) problems.push_back("doc_id " + d.doc_id() + " (no metadata record)");
  }

  // Sentence position within each document, for ordering instances.
  std::map<std::string, std::size_t> sent_order;
  for (const CorpusDocument& d : docs) {
    for (std::size_t s = 0; s < d.sentences.size(); ++s) {
      sent_order[sentence_key(d.doc_id(), d.sentences[s].sent_id)] = s;
    }
  }
  std::vector<std::pair<std::size_t, FrameInstance>> keyed;
  for (FrameInstance& inst : instances) {
    const auto s = sent_order.find(sentence_key(inst.doc_id, inst.sent_id));
    if (s == sent_order.end()) {
      problems.push_back("sent_id " + inst.sent_id + " (document " + inst.doc_id + ", instance " +
                         inst.instance_id + ")");
      continue;
    }
    keyed.emplace_back(s->second, std::move(inst));
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [order, inst] : keyed) docs[pos.at(inst.doc_id)].instances.push_back(std::move(inst));

  std::set<std::string> event_ids;
  for (const EventRecord& e : event_records) event_ids.insert(e.event_id);
  for (const CorpusDocument& d : docs) {
    if (d.meta.event_id && !event_ids.count(*d.meta.event_id)) {
      problems.push_back("event_id " + *d.meta.event_id + " (document " + d.doc_id() + ")");
    }
  }
  if (!problems.empty()) {
    throw input_error("dangling_reference", "dangling references: " + detail::join(problems, "; "));
  }
  return Corpus::build(std::move(docs), std::move(event_records));
}

Corpus load_corpus(const CorpusPaths& paths, const FrameKB& kb) {
  const auto open = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw input_error("file_not_found", "cannot open " + p.string());
    return in;
  };
  auto conllu = open(paths.conllu);
  auto annotations = open(paths.annotations);
  auto documents = open(paths.documents);
  std::ifstream events;
  if (paths.events) events = open(*paths.events);
  return load_corpus(conllu, annotations, documents, paths.events ? &events : nullptr, kb);
}

void write_index(std::ostream& out, const Corpus& corpus) {
  const json header = {{"format", "perspective-index"},
                       {"version", 1},
                       {"analyzed", corpus.analyzed()},
                       {"max_steps", corpus.max_steps()},
                       {"documents", corpus.documents().size()},
                       {"events", corpus.events().size()}};
  out << header.dump() << '\n';
  for (const EventRecord& e : corpus.events()) out << json{{"event", event_to_json(e)}}.dump() << '\n';
  for (std::size_t d = 0; d < corpus.documents().size(); ++d) {
    const CorpusDocument& doc = corpus.documents()[d];
    json sentences = json::array();
    for (const Sentence& s : doc.sentences) {
      json tokens = json::array();
      for (const Token& t : s.tokens) tokens.push_back(token_to_json(t));
      json mwt = json::array();
      for (const MultiwordToken& m : s.multiword) mwt.push_back(json::array({m.first, m.last, m.form, m.misc}));
      sentences.push_back({{"sent_id", s.sent_id}, {"text", s.text}, {"tokens", tokens}, {"multiword", mwt}});
    }
    json instances = json::array();
    for (const FrameInstance& inst : doc.instances) instances.push_back(instance_to_json(inst));
    json record = {{"meta", meta_to_json(doc.meta)}, {"sentences", sentences}, {"instances", instances}};
    if (corpus.analyzed()) {
      json slots = json::array();
      for (const AnnotationSlot& slot : corpus.slots()[d]) slots.push_back(slot_to_json(slot));
      record["annotations"] = slots;
    }
    out << json{{"document", record}}.dump() << '\n';
  }
}

void write_index(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("file_not_writable", "cannot write " + path.string());
  write_index(out, corpus);
}

Corpus read_index(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw input_error("malformed_index", "empty index file");
  try {
    const json header = json::parse(line);
    if (header.value("format", "") != "perspective-index" || header.value("version", 0) != 1) {
      throw input_error("malformed_index", "not a perspective index (version 1)");
    }
    const bool analyzed = header.at("analyzed").get<bool>();
    const auto n_docs = header.at("documents").get<std::size_t>();
    const auto n_events = header.at("events").get<std::size_t>();
    std::vector<EventRecord> events;
    for (std::size_t i = 0; i < n_events; ++i) {
      if (!std::getline(in, line)) throw input_error("malformed_index", "truncated index file");
      events.push_back(event_from_json(json::parse(line).at("event")));
    }
    std::vector<CorpusDocument> docs;
    std::vector<std::vector<AnnotationSlot>> slots;
    for (std::size_t i = 0; i < n_docs; ++i) {
      if (!std::getline(in, line)) throw input_error("malformed_index", "truncated index file");
      const json record = json::parse(line).at("document");
      CorpusDocument doc;
      doc.meta = meta_from_json(record.at("meta"));
      for (const auto& js : record.at("sentences")) {
        Sentence s;
        s.sent_id = js.at("sent_id").get<std::string>();
        s.text = js.at("text").get<std::string>();
        for (const auto& jt : js.at("tokens")) s.tokens.push_back(token_from_json(jt));
        for (const auto& jm : js.at("multiword")) {
          s.multiword.push_back(MultiwordToken{jm.at(0).get<int>(), jm.at(1).get<int>(),
                                               jm.at(2).get<std::string>(), jm.at(3).get<std::string>()});
        }
        validate_tree(s, "index sentence " + s.sent_id);
        doc.sentences.push_back(std::move(s));
      }
      for (const auto& ji : record.at("instances")) doc.instances.push_back(instance_from_json(ji));
      if (analyzed) {
        std::vector<AnnotationSlot> doc_slots;
        const auto& ja = record.at("annotations");
        for (std::size_t k = 0; k < ja.size(); ++k) {
          doc_slots.push_back(slot_from_json(ja.at(k), doc.instances.at(k).instance_id));
        }
        slots.push_back(std::move(doc_slots));
      }
      docs.push_back(std::move(doc));
    }
    Corpus corpus = Corpus::build(std::move(docs), std::move(events));
    if (analyzed) return corpus.with_annotations(std::move(slots), header.at("max_steps").get<int>());
    return corpus;
  } catch (const json::exception& e) {
    throw input_error("malformed_index", std::string("malformed index file: ") + e.what());
  }
}

Corpus read_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("file_not_found", "cannot open " + path.string());
  return read_index(in);
}

}  // namespace perspective
