#include "perspective/service.hpp"

#include <sstream>

#include <httplib.h>

#include "perspective/error.hpp"
#include "perspective/stats.hpp"
#include "text_util.hpp"

namespace perspective {

namespace {

std::vector<std::string_view> segments(std::string_view path) {
  std::vector<std::string_view> out;
  for (std::string_view s : detail::split(path, '/')) {
    if (!s.empty()) out.push_back(s);
  }
  return out;
}

Json error_body(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

int status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return 400;
    case ErrorKind::not_found: return 404;
    case ErrorKind::internal: break;
  }
  return 500;
}

// GET query parameters mapped onto the POST body shape.
Json request_from_params(const QueryParams& params) {
  Json j = Json::object();
  for (const auto& [key, value] : params) {
    if (key == "filter") {
      try {
        j["filter"] = Json::parse(value);
      } catch (const Json::exception& e) {
        throw input_error("bad_request", std::string("filter parameter is not valid JSON: ") + e.what());
      }
    } else if (key == "frames") {
      for (std::string_view f : detail::split(value, ',')) {
        if (!f.empty()) j["frames"].push_back(std::string(f));
      }
    } else if (key == "bucket_days") {
      const auto n = detail::to_int(value);
      if (!n) throw input_error("bad_request", "bucket_days must be an integer");
      j["bucket_days"] = *n;
    } else {
      j[key] = value;
    }
  }
  return j;
}

std::string required_string(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw input_error("missing_field", std::string("request requires string field \"") + key + "\"");
  }
  return j.at(key).get<std::string>();
}

template <typename T>
T field_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw input_error("bad_request", std::string("field \"") + key + "\" has the wrong type");
  }
}

ForegroundingRule rule_from_json(const Json& j) {
  ForegroundingRule rule;
  if (j.is_null()) return rule;
  if (j.contains("constructions")) {
    rule.constructions.clear();
    for (const auto& c : j.at("constructions")) {
      const auto parsed = parse_construction(c.get<std::string>());
      if (!parsed) throw input_error("bad_rule", "unknown construction \"" + c.get<std::string>() + "\"");
      rule.constructions.insert(*parsed);
    }
  }
  if (j.contains("prominent_paths")) rule.prominent_paths = j.at("prominent_paths").get<std::set<std::string>>();
  return rule;
}

}  // namespace

Service::Service(std::shared_ptr<const FrameKB> kb, std::shared_ptr<const WordVectorStore> vectors,
                 ServiceConfig config)
    : kb_(std::move(kb)), vectors_(std::move(vectors)), config_(std::move(config)) {
  if (vectors_) embeddings_ = embed_frames(*kb_, *vectors_);
}

void Service::add_corpus(const std::string& id, CorpusHandle corpus) {
  if (!corpus->analyzed()) throw input_error("not_analyzed", "corpus \"" + id + "\" has not been analyzed");
  corpora_[id] = std::move(corpus);
}

const Corpus& Service::corpus(const std::string& id) const {
  const auto it = corpora_.find(id);
  if (it == corpora_.end()) throw not_found("unknown_corpus", "no corpus \"" + id + "\"");
  return *it->second;
}

Response Service::handle(std::string_view method, std::string_view path, const QueryParams& params,
                         std::string_view body) const {
  try {
    Json request = Json::object();
    if (!detail::trim(body).empty()) {
      try {
        request = Json::parse(body);
      } catch (const Json::exception& e) {
        throw input_error("bad_request", std::string("request body is not valid JSON: ") + e.what());
      }
      if (!request.is_object()) throw input_error("bad_request", "request body must be a JSON object");
    }
    if (method == "GET") request.update(request_from_params(params));
    return dispatch(method, path, params, request);
  } catch (const Error& e) {
    return {status_of(e.kind()), error_body(e.code(), e.what())};
  } catch (const Json::exception& e) {
    return {400, error_body("bad_request", e.what())};
  } catch (const std::exception& e) {
    return {500, error_body("internal", e.what())};
  }
}

Response Service::dispatch(std::string_view method, std::string_view path, const QueryParams&,
                           const Json& body) const {
  const auto seg = segments(path);
  const bool get = method == "GET";
  const bool post = method == "POST";

  if (seg.size() == 1 && seg[0] == "corpora" && get) {
    Json list = Json::array();
    for (const auto& [id, c] : corpora_) {
      list.push_back({{"id", id},
                      {"documents", c->documents().size()},
                      {"sentences", c->sentence_count()},
                      {"instances", c->instance_count()},
                      {"events", c->events().size()},
                      {"failed", c->failed_count()},
                      {"max_steps", c->max_steps()},
                      {"document_keys", c->document_keys()},
                      {"event_keys", c->event_keys()}});
    }
    return {200, {{"corpora", list}}};
  }
  if (seg.size() == 4 && seg[0] == "corpora" && seg[2] == "documents" && get) {
    return {200, document_view_record(corpus(std::string(seg[1])), seg[3])};
  }
  if (seg.size() == 4 && seg[0] == "corpora" && seg[2] == "stats" && (get || post)) {
    return {200, stats(corpus(std::string(seg[1])), seg[3], body)};
  }
  if (seg.size() == 3 && seg[0] == "corpora" && seg[2] == "sample" && post) {
    const Corpus& c = corpus(std::string(seg[1]));
    const FeatureQuery query = query_from_json(body.value("query", Json::object()));
    const int n = field_or<int>(body, "n", 10);
    const auto seed = field_or<std::uint64_t>(body, "seed", 0);
    const CorpusFilter filter = filter_from_json(body.value("filter", Json()));
    return {200, {{"samples", samples_record(c, sample_sentences(c, query, n, seed, filter))}}};
  }
  if (seg.size() == 2 && seg[0] == "frames" && seg[1] == "search" && post) {
    if (!vectors_) throw input_error("no_vectors", "service was started without word vectors");
    const auto keywords = field_or<std::vector<std::string>>(body, "keywords", {});
    const int top_n = field_or<int>(body, "top_n", config_.top_n);
    return {200, search_record(keyword_search(keywords, *vectors_, embeddings_, top_n), *kb_)};
  }
  if (seg.size() == 2 && seg[0] == "frames" && seg[1] == "alternatives" && post) {
    const auto frames = field_or<std::set<std::string>>(body, "frames", {});
    const auto relations = body.contains("relations") ? relations_from_json(body.at("relations")) : config_.relations;
    const int hops = field_or<int>(body, "hops", config_.hops);
    return {200, to_json(kb_->alternatives(frames, relations, hops))};
  }
  if (seg.size() == 1 && seg[0] == "analyze" && post) return {200, analyze(body)};

  const bool known = (seg.size() == 1 && (seg[0] == "corpora" || seg[0] == "analyze")) ||
                     (seg.size() == 2 && seg[0] == "frames") || (seg.size() >= 3 && seg[0] == "corpora");
  if (known) return {405, error_body("method_not_allowed", std::string(method) + " not allowed on " + std::string(path))};
  return {404, error_body("unknown_endpoint", "no endpoint " + std::string(path))};
}

Json Service::stats(const Corpus& c, std::string_view kind, const Json& request) const {
  const CorpusFilter filter = filter_from_json(request.value("filter", Json()));
  if (kind == "frames") return {{"frames", to_json(frame_frequencies(c, filter))}};
  if (kind == "constructions") return {{"constructions", to_json(construction_by_frame(c, filter))}};
  if (kind == "role-links") {
    const std::string frame = required_string(request, "frame");
    return {{"frame", frame}, {"role_links", to_json(role_link_frequencies(c, frame, filter))}};
  }
  if (kind == "time-lag") {
    const auto frames = field_or<std::set<std::string>>(request, "frames", {});
    const int bucket_days = field_or<int>(request, "bucket_days", 1);
    return to_json(time_lag_histogram(c, frames, filter, bucket_days));
  }
  if (kind == "foregrounding") {
    const std::string frame = required_string(request, "frame");
    const ForegroundingRule rule = rule_from_json(request.value("rule", Json()));
    Json j = to_json(foregrounding_share(c, frame, filter, *kb_, rule));
    j["frame"] = frame;
    return j;
  }
  throw not_found("unknown_endpoint", "no statistic \"" + std::string(kind) + "\"");
}

Json Service::analyze(const Json& request) const {
  const Json config = request.value("config", Json::object());
  const int max_steps = field_or<int>(config, "max_steps", config_.max_steps);
  if (max_steps < 1) throw input_error("bad_config", "max_steps must be >= 1");

  std::vector<ParsedSentence> sentences;
  std::ostringstream records;
  if (request.contains("sentences")) {
    PreParsedInput pre = sentences_from_json(request.at("sentences"));
    sentences = std::move(pre.sentences);
    for (const Json& r : pre.frame_records) records << r.dump() << '\n';
  } else {
    if (!request.contains("conllu")) throw input_error("missing_field", "request needs \"sentences\" or \"conllu\"");
    sentences = parse_conllu(required_string(request, "conllu"));
  }
  for (const Json& r : request.value("annotations", Json::array())) records << r.dump() << '\n';
  std::istringstream in(records.str());
  std::vector<FrameInstance> instances = parse_frame_annotations(in, sentences, *kb_);
  const Corpus built = assemble_corpus(std::move(sentences), std::move(instances), {}, {}, false);
  const Corpus analyzed = analyze_corpus(built, *kb_, max_steps, Execution::serial);

  Json out = Json::array();
  for (std::size_t d = 0; d < analyzed.documents().size(); ++d) {
    for (std::size_t i = 0; i < analyzed.documents()[d].instances.size(); ++i) {
      out.push_back(annotation_record(analyzed, InstanceRef{d, i}));
    }
  }
  Json j = {{"annotations", out}, {"max_steps", max_steps}};
  if (request.contains("relation_whitelist") || config.contains("relation_whitelist")) {
    // Alternatives for every frame in the request, under the given whitelist.
    const Json& wl = config.contains("relation_whitelist") ? config.at("relation_whitelist")
                                                           : request.at("relation_whitelist");
    std::set<std::string> frames;
    for (const auto& doc : analyzed.documents()) {
      for (const FrameInstance& inst : doc.instances) frames.insert(inst.frame);
    }
    if (!frames.empty()) j["alternatives"] = to_json(kb_->alternatives(frames, relations_from_json(wl), config_.hops));
  }
  return j;
}

struct HttpFrontEnd::Impl {
  httplib::Server server;
};

HttpFrontEnd::HttpFrontEnd(const Service& service) : impl_(std::make_unique<Impl>()) {
  const auto bridge = [&service](const httplib::Request& req, httplib::Response& res) {
    QueryParams params(req.params.begin(), req.params.end());
    const Response r = service.handle(req.method, req.path, params, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  impl_->server.Get(".*", bridge);
  impl_->server.Post(".*", bridge);
  impl_->server.Put(".*", bridge);
  impl_->server.Delete(".*", bridge);
}

HttpFrontEnd::~HttpFrontEnd() = default;

int HttpFrontEnd::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw input_error("bind_failed", "cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void HttpFrontEnd::run() { impl_->server.listen_after_bind(); }

void HttpFrontEnd::stop() {
  impl_->server.wait_until_ready();
  impl_->server.stop();
}

void serve(const Service& service, const std::string& host, int port) {
  HttpFrontEnd front(service);
  front.bind(host, port);
  front.run();
}

}  // namespace perspective
