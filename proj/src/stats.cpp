#include "perspective/stats.hpp"

#include <algorithm>
#include <tuple>

#include "perspective/error.hpp"
#include "perspective/random.hpp"
#include "text_util.hpp"

namespace perspective {

namespace {

bool is_date_key(std::string_view key) { return key == "pub_date" || key == "event_date"; }

void require_analyzed(const Corpus& corpus) {
  if (!corpus.analyzed()) throw input_error("not_analyzed", "corpus has not been analyzed");
}

// Whether an instance takes part in statistics at all.
bool counted(const Corpus& corpus, InstanceRef ref) {
  return !corpus.analyzed() || corpus.slot(ref).ok();
}

void check_predicate(const Predicate& p, const std::vector<std::string>& known, const char* scope) {
  if (std::find(known.begin(), known.end(), p.key) == known.end()) {
    throw input_error("unknown_filter_key", std::string("unknown ") + scope + " filter key \"" + p.key +
                                                "\"; known keys: " + detail::join(known, ", "));
  }
  const std::size_t need = p.op == Comparator::range ? 2 : 1;
  if (p.values.size() < need || (p.op == Comparator::range && p.values.size() != 2)) {
    throw input_error("bad_filter", "filter on \"" + p.key + "\" needs " +
                                        (p.op == Comparator::range ? "exactly 2 values" : "a value"));
  }
  if (is_date_key(p.key)) {
    for (const std::string& v : p.values) Date::parse(v);
  }
}

bool predicate_holds(const Predicate& p, const std::optional<std::string>& value) {
  if (!value) return false;
  switch (p.op) {
    case Comparator::eq:
      return *value == p.values[0];
    case Comparator::in:
      return std::find(p.values.begin(), p.values.end(), *value) != p.values.end();
    case Comparator::range:
      if (is_date_key(p.key)) {
        const Date d = Date::parse(*value);
        return Date::parse(p.values[0]) <= d && d <= Date::parse(p.values[1]);
      }
      return p.values[0] <= *value && *value <= p.values[1];
  }
  return false;
}

std::optional<std::string> document_value(const DocumentMeta& m, std::string_view key) {
  if (key == "doc_id") return m.doc_id;
  if (key == "event_id") return m.event_id;
  if (key == "pub_date") return m.pub_date.to_string();
  if (key == "source") return m.source;
  if (key == "title") return m.title;
  if (key == "url") return m.url;
  return std::nullopt;
}

std::optional<std::string> event_value(const EventRecord& e, const std::string& key) {
  if (key == "event_id") return e.event_id;
  if (key == "event_date") return e.event_date.to_string();
  const auto it = e.attributes.find(key);
  if (it == e.attributes.end()) return std::nullopt;
  return it->second;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::optional<Comparator> parse_comparator(std::string_view text) {
  if (text == "eq") return Comparator::eq;
  if (text == "in") return Comparator::in;
  if (text == "range") return Comparator::range;
  return std::nullopt;
}

std::string_view to_string(Comparator c) {
  switch (c) {
    case Comparator::eq: return "eq";
    case Comparator::in: return "in";
    case Comparator::range: return "range";
  }
  return "eq";
}

FilterMatcher::FilterMatcher(const Corpus& corpus, const CorpusFilter& filter)
    : corpus_(corpus), filter_(filter), doc_ok_(corpus.documents().size(), true) {
  const auto doc_keys = corpus.document_keys();
  const auto event_keys = corpus.event_keys();
  for (const Predicate& p : filter.documents) check_predicate(p, doc_keys, "document");
  for (const Predicate& p : filter.events) check_predicate(p, event_keys, "event");
  for (std::size_t d = 0; d < corpus.documents().size(); ++d) {
    const CorpusDocument& doc = corpus.documents()[d];
    bool ok = true;
    for (const Predicate& p : filter.documents) ok = ok && predicate_holds(p, document_value(doc.meta, p.key));
    if (ok && !filter.events.empty()) {
      const EventRecord* event = corpus.event_of(doc);
      for (const Predicate& p : filter.events) ok = ok && event && predicate_holds(p, event_value(*event, p.key));
    }
    doc_ok_[d] = ok;
  }
}

bool FilterMatcher::frame_allowed(std::string_view frame) const {
  return !filter_.frames || filter_.frames->count(std::string(frame)) > 0;
}

bool FilterMatcher::instance_matches(InstanceRef ref) const {
  return doc_ok_[ref.doc] && frame_allowed(corpus_.instance(ref).frame) && counted(corpus_, ref);
}

FrameCounts frame_frequencies(const Corpus& corpus, const CorpusFilter& filter) {
  const FilterMatcher match(corpus, filter);
  FrameCounts counts;
  for (const auto& [frame, refs] : corpus.frame_index()) {
    std::int64_t n = 0;
    for (const InstanceRef& ref : refs) n += match.instance_matches(ref) ? 1 : 0;
    if (n > 0) counts[frame] = n;
  }
  return counts;
}

ConstructionMatrix construction_by_frame(const Corpus& corpus, const CorpusFilter& filter) {
  require_analyzed(corpus);
  const FilterMatcher match(corpus, filter);
  ConstructionMatrix matrix;
  for (const auto& [frame, refs] : corpus.frame_index()) {
    ConstructionCounts row;
    for (Construction c : kAllConstructions) row[c] = 0;
    std::int64_t total = 0;
    for (const InstanceRef& ref : refs) {
      if (!match.instance_matches(ref)) continue;
      ++row[corpus.annotation(ref)->construction];
      ++total;
    }
    if (total > 0) matrix[frame] = std::move(row);
  }
  return matrix;
}

RoleLinkCounts role_link_frequencies(const Corpus& corpus, std::string_view frame, const CorpusFilter& filter) {
  require_analyzed(corpus);
  const FilterMatcher match(corpus, filter);
  RoleLinkCounts counts;
  for (const InstanceRef& ref : corpus.instances_of_frame(frame)) {
    if (!match.instance_matches(ref)) continue;
    for (const RoleDependencyLink& link : corpus.annotation(ref)->role_links) ++counts[link.role][link.path];
  }
  return counts;
}

TimeLagHistogram time_lag_histogram(const Corpus& corpus, const std::set<std::string>& frames,
                                    const CorpusFilter& filter, int bucket_days) {
  if (bucket_days < 1) throw input_error("bad_bucket_days", "bucket_days must be >= 1");
  const FilterMatcher match(corpus, filter);
  TimeLagHistogram hist;
  hist.bucket_days = bucket_days;
  std::map<int, FrameCounts> buckets;
  for (std::size_t d = 0; d < corpus.documents().size(); ++d) {
    const CorpusDocument& doc = corpus.documents()[d];
    const EventRecord* event = corpus.event_of(doc);
    for (std::size_t i = 0; i < doc.instances.size(); ++i) {
      const InstanceRef ref{d, i};
      const std::string& frame = doc.instances[i].frame;
      if (!match.instance_matches(ref) || (!frames.empty() && !frames.count(frame))) continue;
      if (!event) {
        ++hist.missing_event;
        continue;
      }
      int lag = doc.meta.pub_date - event->event_date;
      if (lag < 0) {
        ++hist.negative_lag;
        lag = 0;
      }
      ++buckets[lag / bucket_days][frame];
    }
  }
  if (!buckets.empty()) {
    const int last = buckets.rbegin()->first;
    for (int k = 0; k <= last; ++k) {
      TimeLagBucket b{k * bucket_days, (k + 1) * bucket_days, {}};
      if (const auto it = buckets.find(k); it != buckets.end()) b.counts = it->second;
      hist.buckets.push_back(std::move(b));
    }
  }
  return hist;
}

bool is_victim_foregrounding(const PerspectiveAnnotation& annotation, std::string_view frame,
                             const FrameKB& kb, const ForegroundingRule& rule) {
  if (rule.constructions.count(annotation.construction)) return true;
  bool victim = false;
  bool perpetrator = false;
  for (const RoleDependencyLink& link : annotation.role_links) {
    if (!link.resolved || !rule.prominent_paths.count(link.path)) continue;
    switch (kb.role_class(frame, link.role)) {
      case RoleClass::victim_like: victim = true; break;
      case RoleClass::perpetrator_like: perpetrator = true; break;
      default: break;
    }
  }
  return victim && !perpetrator;
}

ForegroundingShare foregrounding_share(const Corpus& corpus, std::string_view frame, const CorpusFilter& filter,
                                       const FrameKB& kb, const ForegroundingRule& rule) {
  require_analyzed(corpus);
  if (!kb.role_mapping(frame)) {
    kb.at(frame);
    throw input_error("no_role_mapping", "frame \"" + std::string(frame) + "\" has no role mapping");
  }
  const FilterMatcher match(corpus, filter);
  ForegroundingShare out;
  for (const InstanceRef& ref : corpus.instances_of_frame(frame)) {
    if (!match.instance_matches(ref)) continue;
    ++out.denominator;
    if (is_victim_foregrounding(*corpus.annotation(ref), frame, kb, rule)) ++out.foregrounding;
  }
  if (out.denominator > 0) {
    out.share = static_cast<double>(out.foregrounding) / static_cast<double>(out.denominator);
  }
  return out;
}

bool path_matches(std::string_view pattern, std::string_view path) {
  // Tokenise: star = wildcard, anything else literal (with "\*" -> '*').
  struct Piece {
    bool star;
    char c;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '\\' && i + 1 < pattern.size() && pattern[i + 1] == '*') {
      pieces.push_back({false, '*'});
      ++i;
    } else if (pattern[i] == '*') {
      pieces.push_back({true, 0});
    } else {
      pieces.push_back({false, pattern[i]});
    }
  }
  std::size_t p = 0, s = 0, star_p = std::string_view::npos, star_s = 0;
  while (s < path.size()) {
    if (p < pieces.size() && !pieces[p].star && pieces[p].c == path[s]) {
      ++p;
      ++s;
    } else if (p < pieces.size() && pieces[p].star) {
      star_p = p++;
      star_s = s;
    } else if (star_p != std::string_view::npos) {
      p = star_p + 1;
      s = ++star_s;
    } else {
      return false;
    }
  }
  while (p < pieces.size() && pieces[p].star) ++p;
  return p == pieces.size();
}

std::string FeatureQuery::canonical() const {
  std::string out;
  out += "frame=" + frame.value_or("") + ";";
  out += "construction=" + (construction ? std::string(to_string(*construction)) : "") + ";";
  out += "role=" + (role_link ? role_link->role : "") + ";";
  out += "path=" + (role_link ? role_link->path_pattern : "") + ";";
  out += "is_root=" + (is_root ? std::string(*is_root ? "1" : "0") : "") + ";";
  return out;
}

bool instance_matches(const FrameInstance& instance, const PerspectiveAnnotation& annotation,
                      const FeatureQuery& query) {
  if (query.frame && instance.frame != *query.frame) return false;
  if (query.construction && annotation.construction != *query.construction) return false;
  if (query.is_root && annotation.is_root != *query.is_root) return false;
  if (query.role_link) {
    const bool any = std::any_of(annotation.role_links.begin(), annotation.role_links.end(),
                                 [&](const RoleDependencyLink& l) {
                                   return (query.role_link->role.empty() || l.role == query.role_link->role) &&
                                          path_matches(query.role_link->path_pattern, l.path);
                                 });
    if (!any) return false;
  }
  return true;
}

std::vector<SampledSentence> sample_sentences(const Corpus& corpus, const FeatureQuery& query, int n,
                                              std::uint64_t seed, const CorpusFilter& filter) {
  if (n <= 0) throw input_error("bad_sample_size", "n must be > 0");
  if (query.empty()) throw input_error("empty_query", "feature query needs at least one field");
  require_analyzed(corpus);
  const FilterMatcher match(corpus, filter);

  std::vector<SampledSentence> candidates;
  for (std::size_t d = 0; d < corpus.documents().size(); ++d) {
    if (!match.document_matches(d)) continue;
    const CorpusDocument& doc = corpus.documents()[d];
    std::map<std::string, std::vector<InstanceRef>> per_sentence;
    for (std::size_t i = 0; i < doc.instances.size(); ++i) {
      const InstanceRef ref{d, i};
      if (!match.instance_matches(ref)) continue;
      if (instance_matches(doc.instances[i], *corpus.annotation(ref), query)) {
        per_sentence[doc.instances[i].sent_id].push_back(ref);
      }
    }
    for (auto& [sent_id, refs] : per_sentence) {
      candidates.push_back(SampledSentence{doc.doc_id(), sent_id, doc.find_sentence(sent_id)->text, std::move(refs)});
    }
  }
  const auto by_key = [](const SampledSentence& a, const SampledSentence& b) {
    return std::tie(a.doc_id, a.sent_id) < std::tie(b.doc_id, b.sent_id);
  };
  std::sort(candidates.begin(), candidates.end(), by_key);
  if (static_cast<std::size_t>(n) >= candidates.size()) return candidates;

  SplitMix64 rng = SplitMix64(seed).split(stable_hash(query.canonical()));
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    std::swap(order[i], order[i + rng.below(order.size() - i)]);
  }
  order.resize(static_cast<std::size_t>(n));
  std::sort(order.begin(), order.end());
  std::vector<SampledSentence> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(std::move(candidates[i]));
  return out;
}

const std::vector<FocusScoreRow>& focus_score_table() {
  using C = Construction;
  static const std::vector<FocusScoreRow> kRows = {
      {"Catastrophe", C::nonverbal, {1.319, 2.713, 0.760, 2.190}},
      {"Dead_or_alive", C::nonverbal, {1.195, 3.387, 1.386, 1.993}},
      {"Dead_or_alive", C::vrb_unaccusative, {1.983, 3.529, 1.566, 1.539}},
      {"Death", C::nonverbal, {0.967, 3.247, 1.507, 1.914}},
      {"Death", C::vrb_unaccusative, {1.867, 3.921, 1.690, 1.286}},
      {"Event", C::nonverbal, {1.431, 1.503, 1.186, 2.339}},
      {"Event", C::vrb_impersonal, {1.169, 2.201, 1.309, 1.949}},
      {"Killing", C::nonverbal, {2.007, 2.387, 1.032, 1.673}},
      {"Killing", C::other, {2.410, 2.345, 1.198, 1.663}},
      {"Killing", C::vrb_active, {3.897, 2.659, 1.570, 1.651}},
      {"Killing", C::vrb_passive, {1.947, 3.425, 1.491, 1.315}},
  };
  return kRows;
}

std::optional<FocusScores> focus_scores(std::string_view frame, Construction construction) {
  for (const FocusScoreRow& row : focus_score_table()) {
    if (row.frame == frame && row.construction == construction) return row.scores;
  }
  return std::nullopt;
}

std::vector<DocumentViewSentence> document_view(const Corpus& corpus, std::string_view doc_id) {
  const auto pos = corpus.document_position(doc_id);
  if (!pos) throw not_found("unknown_document", "unknown document \"" + std::string(doc_id) + "\"");
  const CorpusDocument& doc = corpus.documents()[*pos];
  std::vector<DocumentViewSentence> out;
  for (const Sentence& s : doc.sentences) {
    DocumentViewSentence v{&s, {}};
    for (std::size_t i = 0; i < doc.instances.size(); ++i) {
      if (doc.instances[i].sent_id == s.sent_id) v.instances.push_back(InstanceRef{*pos, i});
    }
    out.push_back(std::move(v));
  }
  return out;
}

void write_csv(std::ostream& out, const FrameCounts& counts) {
  out << "frame,count\n";
  for (const auto& [frame, n] : counts) out << csv_field(frame) << ',' << n << '\n';
}

void write_csv(std::ostream& out, const ConstructionMatrix& matrix) {
  out << "frame,construction,count\n";
  for (const auto& [frame, row] : matrix) {
    for (const auto& [c, n] : row) out << csv_field(frame) << ',' << to_string(c) << ',' << n << '\n';
  }
}

void write_csv(std::ostream& out, std::string_view frame, const RoleLinkCounts& counts) {
  out << "frame,role,path,count\n";
  for (const auto& [role, paths] : counts) {
    for (const auto& [path, n] : paths) {
      out << csv_field(frame) << ',' << csv_field(role) << ',' << csv_field(path) << ',' << n << '\n';
    }
  }
}

void write_csv(std::ostream& out, const TimeLagHistogram& histogram) {
  out << "bucket_start,bucket_end,frame,count\n";
  for (const TimeLagBucket& b : histogram.buckets) {
    for (const auto& [frame, n] : b.counts) {
      out << b.start << ',' << b.end << ',' << csv_field(frame) << ',' << n << '\n';
    }
  }
}

void write_csv(std::ostream& out, std::string_view frame, const ForegroundingShare& share) {
  out << "frame,share,foregrounding,denominator\n";
  out << csv_field(frame) << ',' << share.share << ',' << share.foregrounding << ',' << share.denominator << '\n';
}

}  // namespace perspective
