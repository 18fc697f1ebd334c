#include "perspective/records.hpp"

#include "perspective/error.hpp"
#include "perspective/syntax.hpp"

namespace perspective {

namespace {

std::vector<std::string> values_of(const Json& p) {
  std::vector<std::string> values;
  if (p.contains("values")) {
    for (const auto& v : p.at("values")) values.push_back(v.get<std::string>());
  } else if (p.contains("value")) {
    values.push_back(p.at("value").get<std::string>());
  } else if (p.contains("from") || p.contains("to")) {
    values.push_back(p.at("from").get<std::string>());
    values.push_back(p.at("to").get<std::string>());
  }
  return values;
}

std::vector<Predicate> predicates_from_json(const Json& list) {
  std::vector<Predicate> out;
  for (const auto& p : list) {
    Predicate pred;
    pred.key = p.at("key").get<std::string>();
    const std::string op = p.value("op", "eq");
    const auto parsed = parse_comparator(op);
    if (!parsed) throw input_error("bad_filter", "unknown comparator \"" + op + "\"");
    pred.op = *parsed;
    pred.values = values_of(p);
    out.push_back(std::move(pred));
  }
  return out;
}

template <typename Fn>
auto decode(const char* what, Fn fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw input_error("bad_request", std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Json annotation_record(const Corpus& corpus, InstanceRef ref) {
  const FrameInstance& inst = corpus.instance(ref);
  Json j = {{"instance_id", inst.instance_id},
            {"doc_id", inst.doc_id},
            {"sent_id", inst.sent_id},
            {"frame", inst.frame}};
  if (!corpus.analyzed()) return j;
  const AnnotationSlot& slot = corpus.slot(ref);
  if (!slot.ok()) {
    j["error"] = slot.error;
    return j;
  }
  const PerspectiveAnnotation& a = *slot.annotation;
  Json links = Json::array();
  for (const RoleDependencyLink& l : a.role_links) {
    links.push_back({{"role", l.role}, {"path", l.path}, {"resolved", l.resolved}});
  }
  j["construction"] = std::string(to_string(a.construction));
  j["is_root"] = a.is_root;
  j["trigger_head"] = a.trigger_head;
  j["role_links"] = links;
  return j;
}

Json sentence_record(const Corpus& corpus, const Sentence& sentence, const std::vector<InstanceRef>& instances) {
  Json tokens = Json::array();
  for (const Token& t : sentence.tokens) {
    tokens.push_back({{"index", t.index}, {"form", t.form}, {"lemma", t.lemma},
                      {"upos", std::string(to_string(t.upos))}, {"head", t.head}, {"deprel", t.deprel}});
  }
  Json frames = Json::array();
  for (const InstanceRef& ref : instances) {
    const FrameInstance& inst = corpus.instance(ref);
    Json roles = Json::array();
    for (const RoleSpan& r : inst.roles) {
      roles.push_back({{"name", r.name}, {"start", r.span.start}, {"end", r.span.end}});
    }
    Json rec = annotation_record(corpus, ref);
    rec["trigger"] = {{"start", inst.trigger.start}, {"end", inst.trigger.end}};
    rec["roles"] = roles;
    frames.push_back(std::move(rec));
  }
  return {{"sent_id", sentence.sent_id}, {"text", sentence.text}, {"tokens", tokens}, {"instances", frames}};
}

Json document_view_record(const Corpus& corpus, std::string_view doc_id) {
  const auto view = document_view(corpus, doc_id);
  const CorpusDocument& doc = *corpus.find_document(doc_id);
  Json meta = {{"doc_id", doc.doc_id()}, {"pub_date", doc.meta.pub_date.to_string()}, {"source", doc.meta.source}};
  if (doc.meta.event_id) meta["event_id"] = *doc.meta.event_id;
  if (doc.meta.title) meta["title"] = *doc.meta.title;
  if (doc.meta.url) meta["url"] = *doc.meta.url;
  Json sentences = Json::array();
  for (const DocumentViewSentence& s : view) sentences.push_back(sentence_record(corpus, *s.sentence, s.instances));
  return {{"document", meta}, {"sentences", sentences}};
}

Json to_json(const FrameCounts& counts) { return Json(counts); }

Json to_json(const ConstructionMatrix& matrix) {
  Json j = Json::object();
  for (const auto& [frame, row] : matrix) {
    Json r = Json::object();
    for (const auto& [c, n] : row) r[std::string(to_string(c))] = n;
    j[frame] = r;
  }
  return j;
}

Json to_json(const RoleLinkCounts& counts) { return Json(counts); }

Json to_json(const TimeLagHistogram& h) {
  Json buckets = Json::array();
  for (const TimeLagBucket& b : h.buckets) {
    buckets.push_back({{"start", b.start}, {"end", b.end}, {"counts", b.counts}});
  }
  return {{"bucket_days", h.bucket_days},
          {"buckets", buckets},
          {"negative_lag", h.negative_lag},
          {"missing_event", h.missing_event}};
}

Json to_json(const ForegroundingShare& s) {
  return {{"share", s.share}, {"foregrounding", s.foregrounding}, {"denominator", s.denominator}};
}

Json to_json(const FocusScores& s) {
  return {{"murderer", s.murderer}, {"victim", s.victim}, {"object", s.object}, {"concept_emotion", s.concept_emotion}};
}

Json to_json(const AlternativesResult& r) { return {{"frames", r.frames}, {"added", r.added}}; }

Json samples_record(const Corpus& corpus, const std::vector<SampledSentence>& samples) {
  Json out = Json::array();
  for (const SampledSentence& s : samples) {
    Json matches = Json::array();
    for (const InstanceRef& ref : s.matches) matches.push_back(annotation_record(corpus, ref));
    out.push_back({{"doc_id", s.doc_id}, {"sent_id", s.sent_id}, {"text", s.text}, {"instances", matches}});
  }
  return out;
}

Json search_record(const SearchResult& result, const FrameKB& kb) {
  Json matches = Json::array();
  const auto payload = suggestion_payload(result.matches, kb);
  for (std::size_t i = 0; i < result.matches.size(); ++i) {
    matches.push_back({{"frame", result.matches[i].frame},
                       {"distance", result.matches[i].distance},
                       {"definition", payload[i].definition},
                       {"examples", payload[i].examples}});
  }
  return {{"results", matches}, {"missing_keywords", result.missing_keywords}, {"warnings", result.warnings}};
}

CorpusFilter filter_from_json(const Json& j) {
  return decode("filter", [&] {
    CorpusFilter f;
    if (j.is_null()) return f;
    if (j.contains("documents")) f.documents = predicates_from_json(j.at("documents"));
    if (j.contains("events")) f.events = predicates_from_json(j.at("events"));
    if (j.contains("frames") && !j.at("frames").is_null()) {
      f.frames = j.at("frames").get<std::set<std::string>>();
    }
    return f;
  });
}

FeatureQuery query_from_json(const Json& j) {
  return decode("query", [&] {
    FeatureQuery q;
    if (j.contains("frame")) q.frame = j.at("frame").get<std::string>();
    if (j.contains("construction")) {
      const std::string text = j.at("construction").get<std::string>();
      q.construction = parse_construction(text);
      if (!q.construction) throw input_error("bad_query", "unknown construction \"" + text + "\"");
    }
    if (j.contains("role_link")) {
      const Json& rl = j.at("role_link");
      q.role_link = RoleLinkQuery{rl.value("role", ""), rl.value("path", "*")};
    }
    if (j.contains("is_root")) q.is_root = j.at("is_root").get<bool>();
    return q;
  });
}

std::set<RelationType> relations_from_json(const Json& j) {
  return decode("relation list", [&] {
    std::set<RelationType> out;
    for (const auto& item : j) {
      const std::string name = item.get<std::string>();
      const auto t = parse_relation_type(name);
      if (!t) throw input_error("unknown_relation_type", "unknown relation type \"" + name + "\"");
      out.insert(*t);
    }
    return out;
  });
}

PreParsedInput sentences_from_json(const Json& list) {
  return decode("sentences", [&] {
    if (!list.is_array()) throw input_error("bad_request", "sentences must be a list");
    PreParsedInput out;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const Json& js = list.at(k);
      ParsedSentence ps;
      ps.doc_id = js.value("doc_id", "doc0");
      Sentence& s = ps.sentence;
      s.sent_id = js.contains("sent_id") ? js.at("sent_id").get<std::string>() : std::to_string(k + 1);
      const Json& tokens = js.at("tokens");
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Json& jt = tokens.at(i);
        Token t;
        t.index = jt.value("id", static_cast<int>(i) + 1);
        t.form = jt.at("form").get<std::string>();
        t.lemma = jt.value("lemma", t.form);
        const std::string tag = jt.at("upos").get<std::string>();
        const auto upos = parse_upos(tag);
        if (!upos) throw input_error("malformed_record", "unknown UPOS \"" + tag + "\" in sentence " + s.sent_id);
        t.upos = *upos;
        t.xpos = jt.value("xpos", "");
        t.feats = parse_features(jt.value("feats", ""));
        t.head = jt.at("head").get<int>();
        t.deprel = jt.at("deprel").get<std::string>();
        t.deps = jt.value("deps", "");
        t.misc = jt.value("misc", "");
        s.tokens.push_back(std::move(t));
      }
      validate_tree(s, "sentence " + s.sent_id);
      s.text = js.contains("text") ? js.at("text").get<std::string>() : surface_text(s);
      for (Json f : js.value("frames", Json::array())) {
        f["doc_id"] = ps.doc_id;
        f["sent_id"] = s.sent_id;
        out.frame_records.push_back(std::move(f));
      }
      out.sentences.push_back(std::move(ps));
    }
    return out;
  });
}

}  // namespace perspective
