#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "perspective/error.hpp"
#include "perspective/records.hpp"
#include "perspective/stats.hpp"
#include "perspective/syntax.hpp"
#include "support.hpp"

using namespace perspective;
using namespace testing_support;

namespace {

const FrameKB& kb() {
  static const FrameKB k = bundled_kb();
  return k;
}

const Corpus& mini() {
  static const Corpus c = analyze_corpus(load_corpus(mini_paths(), kb()), kb());
  return c;
}

const nlohmann::json& manifest() {
  static const auto m = nlohmann::json::parse(slurp(data_dir() / "mini" / "manifest.json"));
  return m;
}

Predicate pred(std::string key, Comparator op, std::vector<std::string> values) {
  return Predicate{std::move(key), op, std::move(values)};
}

// One-sentence documents "the homicide happened" with the given pub dates,
// all tied to event e1 dated 2020-01-01, each with one Killing instance.
Corpus dated_corpus(const std::vector<std::string>& pub_dates) {
  std::string conllu, frames, docs;
  for (std::size_t i = 0; i < pub_dates.size(); ++i) {
    const std::string id = "d" + std::to_string(i);
    conllu += "# newdoc id = " + id + "\n# sent_id = 1\n"
              "1\tthe\tthe\tDET\t_\t_\t2\tdet\t_\t_\n"
              "2\thomicide\thomicide\tNOUN\t_\t_\t3\tnsubj\t_\t_\n"
              "3\thappened\thappen\tVERB\t_\tVerbForm=Fin\t0\troot\t_\t_\n\n";
    frames += R"({"doc_id":")" + id + R"(","sent_id":"1","frame":"Killing","trigger":{"start":1,"end":2}})" "\n";
    docs += R"({"doc_id":")" + id + R"(","pub_date":")" + pub_dates[i] + R"(","source":"x","event_id":"e1"})" "\n";
  }
  std::istringstream c(conllu), f(frames), d(docs);
  std::istringstream e(R"({"event_id":"e1","event_date":"2020-01-01"})" "\n");
  return analyze_corpus(load_corpus(c, f, d, &e, kb()), kb());
}

std::int64_t total(const FrameCounts& c) {
  std::int64_t n = 0;
  for (const auto& [f, k] : c) n += k;
  return n;
}

}  // namespace

TEST(Stats, FrameFrequenciesMatchManifest) {
  const FrameCounts counts = frame_frequencies(mini(), {});
  EXPECT_EQ(nlohmann::json(counts), manifest().at("frames"));
}

TEST(Stats, ConstructionMatrixMatchesManifest) {
  EXPECT_EQ(to_json(construction_by_frame(mini(), {})), manifest().at("constructions"));
}

TEST(Stats, RoleLinksMatchManifest) {
  for (const auto& [frame, expected] : manifest().at("role_links").items()) {
    EXPECT_EQ(to_json(role_link_frequencies(mini(), frame, {})), expected) << frame;
  }
}

TEST(Stats, FilterBySourceMatchesScan) {
  const std::string source = mini().documents()[0].meta.source;
  CorpusFilter f;
  f.documents = {pred("source", Comparator::eq, {source})};
  std::int64_t expected = 0;
  for (const auto& d : mini().documents()) {
    if (d.meta.source == source) expected += static_cast<std::int64_t>(d.instances.size());
  }
  EXPECT_EQ(total(frame_frequencies(mini(), f)), expected);
}

TEST(Stats, FilterByEventAttributeAndDateRange) {
  CorpusFilter f;
  f.events = {pred("region", Comparator::in, {"Lazio", "Sicilia"})};
  f.documents = {pred("pub_date", Comparator::range, {"2016-01-01", "2016-12-31"})};
  std::int64_t expected = 0;
  for (const auto& d : mini().documents()) {
    const EventRecord* e = mini().event_of(d);
    if (!e) continue;
    const auto it = e->attributes.find("region");
    if (it == e->attributes.end() || (it->second != "Lazio" && it->second != "Sicilia")) continue;
    if (d.meta.pub_date < Date::parse("2016-01-01") || Date::parse("2016-12-31") < d.meta.pub_date) continue;
    expected += static_cast<std::int64_t>(d.instances.size());
  }
  EXPECT_EQ(total(frame_frequencies(mini(), f)), expected);
}

TEST(Stats, FrameRestrictionFilter) {
  CorpusFilter f;
  f.frames = std::set<std::string>{"Death"};
  const FrameCounts counts = frame_frequencies(mini(), f);
  ASSERT_EQ(counts.size(), 1u);
  EXPECT_EQ(counts.at("Death"), manifest().at("frames").at("Death").get<std::int64_t>());
}

TEST(Stats, UnknownFilterKeyListsKnownKeys) {
  CorpusFilter f;
  f.documents = {pred("outlet", Comparator::eq, {"x"})};
  try {
    frame_frequencies(mini(), f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unknown_filter_key");
    EXPECT_NE(std::string(e.what()).find("source"), std::string::npos) << e.what();
  }
  CorpusFilter g;
  g.events = {pred("planet", Comparator::eq, {"x"})};
  EXPECT_THROW(frame_frequencies(mini(), g), Error);
}

TEST(Stats, BadFilterValues) {
  CorpusFilter f;
  f.documents = {pred("pub_date", Comparator::range, {"2019-01-01"})};
  EXPECT_THROW(frame_frequencies(mini(), f), Error);
  f.documents = {pred("pub_date", Comparator::eq, {"yesterday"})};
  EXPECT_THROW(frame_frequencies(mini(), f), Error);
}

TEST(Stats, AnalysisRequired) {
  const Corpus raw = load_corpus(mini_paths(), kb());
  EXPECT_THROW(construction_by_frame(raw, {}), Error);
  EXPECT_THROW(role_link_frequencies(raw, "Killing", {}), Error);
  EXPECT_THROW(foregrounding_share(raw, "Killing", {}, kb()), Error);
}

TEST(TimeLag, LagThirteenLandsInSecondWeek) {
  const Corpus c = dated_corpus({"2020-01-14"});
  const TimeLagHistogram h = time_lag_histogram(c, {}, {}, 7);
  ASSERT_EQ(h.buckets.size(), 2u);
  EXPECT_EQ(h.buckets[1].start, 7);
  EXPECT_EQ(h.buckets[1].end, 14);
  EXPECT_EQ(h.buckets[1].counts.at("Killing"), 1);
  EXPECT_TRUE(h.buckets[0].counts.empty());
}

TEST(TimeLag, BoundariesAndNegativeLag) {
  const Corpus c = dated_corpus({"2020-01-01", "2020-01-07", "2020-01-08", "2019-12-25"});
  const TimeLagHistogram h = time_lag_histogram(c, {"Killing"}, {}, 7);
  ASSERT_EQ(h.buckets.size(), 2u);
  // lags 0, 6, -7 (clamped) in [0, 7); lag 7 in [7, 14)
  EXPECT_EQ(h.buckets[0].counts.at("Killing"), 3);
  EXPECT_EQ(h.buckets[1].counts.at("Killing"), 1);
  EXPECT_EQ(h.negative_lag, 1);
  EXPECT_EQ(h.missing_event, 0);
  EXPECT_THROW(time_lag_histogram(c, {}, {}, 0), Error);
}

TEST(TimeLag, BucketsAreContiguousAndEmptyGapsKept) {
  const Corpus c = dated_corpus({"2020-01-01", "2020-02-01"});
  const TimeLagHistogram h = time_lag_histogram(c, {}, {}, 10);
  ASSERT_EQ(h.buckets.size(), 4u);
  for (std::size_t k = 0; k < h.buckets.size(); ++k) {
    EXPECT_EQ(h.buckets[k].start, static_cast<int>(k) * 10);
    EXPECT_EQ(h.buckets[k].end, static_cast<int>(k + 1) * 10);
  }
  EXPECT_TRUE(h.buckets[1].counts.empty());
}

TEST(TimeLag, MiniCorpusMatchesPlantedLags) {
  const TimeLagHistogram h = time_lag_histogram(mini(), {}, {}, 7);
  EXPECT_EQ(h.negative_lag, manifest().at("negative_lag").get<std::int64_t>());
  EXPECT_EQ(h.missing_event, manifest().at("missing_event").get<std::int64_t>());
  std::map<int, FrameCounts> expected;
  for (const auto& [lag, counts] : manifest().at("instances_by_lag").items()) {
    const int bucket = std::max(0, std::stoi(lag)) / 7;
    for (const auto& [frame, n] : counts.items()) expected[bucket][frame] += n.get<std::int64_t>();
  }
  for (const TimeLagBucket& b : h.buckets) {
    const auto it = expected.find(b.start / 7);
    EXPECT_EQ(b.counts, it == expected.end() ? FrameCounts{} : it->second) << b.start;
  }
}

TEST(Foregrounding, RuleExamples) {
  PerspectiveAnnotation a;
  a.construction = Construction::vrb_passive;
  EXPECT_TRUE(is_victim_foregrounding(a, "Killing", kb()));
  a.construction = Construction::vrb_active;
  a.role_links = {{"Killer", "nsubj↓", true}, {"Victim", "obj↓", true}};
  EXPECT_FALSE(is_victim_foregrounding(a, "Killing", kb()));
  a.construction = Construction::nonverbal;
  a.role_links = {{"Victim", "nsubj↓", true}};
  EXPECT_TRUE(is_victim_foregrounding(a, "Killing", kb()));
  a.role_links = {{"Victim", "*", true}, {"Killer", "*", true}};
  EXPECT_FALSE(is_victim_foregrounding(a, "Killing", kb()));
  a.role_links = {{"Victim", "nmod↓", true}};
  EXPECT_FALSE(is_victim_foregrounding(a, "Killing", kb()));
  a.role_links = {{"Victim", "nsubj↓", true}, {"Killer", "obl↓", true}};
  EXPECT_TRUE(is_victim_foregrounding(a, "Killing", kb()));
}

TEST(Foregrounding, ConfigurableRule) {
  PerspectiveAnnotation a;
  a.construction = Construction::vrb_passive;
  ForegroundingRule rule;
  rule.constructions.clear();
  EXPECT_FALSE(is_victim_foregrounding(a, "Killing", kb(), rule));
  a.role_links = {{"Victim", "obj↓", true}};
  rule.prominent_paths.insert("obj↓");
  EXPECT_TRUE(is_victim_foregrounding(a, "Killing", kb(), rule));
}

TEST(Foregrounding, PlantedSharesOnMiniCorpus) {
  const ForegroundingShare k = foregrounding_share(mini(), "Killing", {}, kb());
  EXPECT_EQ(k.foregrounding, 90);
  EXPECT_EQ(k.denominator, 150);
  EXPECT_DOUBLE_EQ(k.share, 0.6);
  const ForegroundingShare d = foregrounding_share(mini(), "Death", {}, kb());
  EXPECT_EQ(d.foregrounding, 79);
  EXPECT_EQ(d.denominator, 100);
  EXPECT_DOUBLE_EQ(d.share, 0.79);
}

TEST(Foregrounding, Errors) {
  EXPECT_THROW(foregrounding_share(mini(), "Catastrophe", {}, kb()), Error);
  EXPECT_THROW(foregrounding_share(mini(), "Nope", {}, kb()), Error);
  CorpusFilter none;
  none.documents = {pred("source", Comparator::eq, {"nowhere"})};
  const ForegroundingShare s = foregrounding_share(mini(), "Killing", none, kb());
  EXPECT_EQ(s.denominator, 0);
  EXPECT_EQ(s.share, 0.0);
}

TEST(PathPattern, Globbing) {
  EXPECT_TRUE(path_matches("*", "↑--nsubj↓"));
  EXPECT_TRUE(path_matches("*nsubj↓", "↑--nsubj↓"));
  EXPECT_TRUE(path_matches("↑--*", "↑--nsubj↓"));
  EXPECT_FALSE(path_matches("obj↓", "nsubj↓"));
  EXPECT_FALSE(path_matches("nsubj↓", "nsubj↓--det↓"));
  EXPECT_TRUE(path_matches("\\*", "*"));
  EXPECT_FALSE(path_matches("\\*", "nsubj↓"));
  EXPECT_TRUE(path_matches("*--*", "a--b--c"));
  EXPECT_FALSE(path_matches("", "a"));
  EXPECT_TRUE(path_matches("", ""));
}

TEST(Sampling, DeterministicAndOrdered) {
  FeatureQuery q;
  q.frame = "Killing";
  const auto a = sample_sentences(mini(), q, 10, 7);
  const auto b = sample_sentences(mini(), q, 10, 7);
  ASSERT_EQ(a.size(), 10u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].doc_id, b[i].doc_id);
    EXPECT_EQ(a[i].sent_id, b[i].sent_id);
    EXPECT_EQ(a[i].matches, b[i].matches);
    if (i) EXPECT_LT(std::tie(a[i - 1].doc_id, a[i - 1].sent_id), std::tie(a[i].doc_id, a[i].sent_id));
  }
  const auto c = sample_sentences(mini(), q, 10, 8);
  bool differs = false;
  for (std::size_t i = 0; i < c.size(); ++i) differs |= c[i].sent_id != a[i].sent_id || c[i].doc_id != a[i].doc_id;
  EXPECT_TRUE(differs);
}

TEST(Sampling, SmallPoolReturnsEverything) {
  FeatureQuery q;
  q.frame = "Killing";
  q.construction = Construction::vrb_passive;
  const auto all = sample_sentences(mini(), q, 100000, 1);
  std::set<std::pair<std::string, std::string>> expected;
  for (const auto& d : mini().documents()) {
    for (std::size_t i = 0; i < d.instances.size(); ++i) {
      const auto pos = *mini().document_position(d.doc_id());
      const auto* ann = mini().annotation({pos, i});
      if (d.instances[i].frame == "Killing" && ann->construction == Construction::vrb_passive) {
        expected.emplace(d.doc_id(), d.instances[i].sent_id);
      }
    }
  }
  EXPECT_EQ(all.size(), expected.size());
  for (const auto& s : all) {
    EXPECT_TRUE(expected.count({s.doc_id, s.sent_id}));
    for (InstanceRef ref : s.matches) EXPECT_EQ(mini().annotation(ref)->construction, Construction::vrb_passive);
  }
}

TEST(Sampling, RoleLinkQueryAndErrors) {
  FeatureQuery q;
  q.role_link = RoleLinkQuery{"Victim", "nsubj↓"};
  for (const auto& s : sample_sentences(mini(), q, 50, 1)) {
    bool found = false;
    for (InstanceRef ref : s.matches) {
      for (const auto& l : mini().annotation(ref)->role_links) found |= l.role == "Victim" && l.path == "nsubj↓";
    }
    EXPECT_TRUE(found);
  }
  EXPECT_THROW(sample_sentences(mini(), q, 0, 1), Error);
  EXPECT_THROW(sample_sentences(mini(), FeatureQuery{}, 5, 1), Error);
}

TEST(Sampling, RootQuery) {
  FeatureQuery q;
  q.frame = "Killing";
  q.is_root = true;
  std::int64_t n = 0;
  for (const auto& s : sample_sentences(mini(), q, 100000, 1)) n += static_cast<std::int64_t>(s.matches.size());
  EXPECT_EQ(n, manifest().at("root_instances").at("Killing").get<std::int64_t>());
}

TEST(FocusScores, SurveyTable) {
  struct Row {
    const char* frame;
    Construction c;
    double m, v, o, e;
  };
  using C = Construction;
  const Row expected[] = {
      {"Catastrophe", C::nonverbal, 1.319, 2.713, 0.760, 2.190},
      {"Dead_or_alive", C::nonverbal, 1.195, 3.387, 1.386, 1.993},
      {"Dead_or_alive", C::vrb_unaccusative, 1.983, 3.529, 1.566, 1.539},
      {"Death", C::nonverbal, 0.967, 3.247, 1.507, 1.914},
      {"Death", C::vrb_unaccusative, 1.867, 3.921, 1.690, 1.286},
      {"Event", C::nonverbal, 1.431, 1.503, 1.186, 2.339},
      {"Event", C::vrb_impersonal, 1.169, 2.201, 1.309, 1.949},
      {"Killing", C::nonverbal, 2.007, 2.387, 1.032, 1.673},
      {"Killing", C::other, 2.410, 2.345, 1.198, 1.663},
      {"Killing", C::vrb_active, 3.897, 2.659, 1.570, 1.651},
      {"Killing", C::vrb_passive, 1.947, 3.425, 1.491, 1.315},
  };
  ASSERT_EQ(focus_score_table().size(), std::size(expected));
  for (const Row& r : expected) {
    const auto s = focus_scores(r.frame, r.c);
    ASSERT_TRUE(s) << r.frame;
    EXPECT_DOUBLE_EQ(s->murderer, r.m);
    EXPECT_DOUBLE_EQ(s->victim, r.v);
    EXPECT_DOUBLE_EQ(s->object, r.o);
    EXPECT_DOUBLE_EQ(s->concept_emotion, r.e);
  }
  EXPECT_FALSE(focus_scores("Killing", C::vrb_impersonal));
}

TEST(DocumentView, GroupsInstancesBySentence) {
  const CorpusDocument& doc = mini().documents()[3];
  const auto view = document_view(mini(), doc.doc_id());
  ASSERT_EQ(view.size(), doc.sentences.size());
  std::size_t n = 0;
  for (const auto& v : view) {
    for (InstanceRef ref : v.instances) EXPECT_EQ(mini().instance(ref).sent_id, v.sentence->sent_id);
    n += v.instances.size();
  }
  EXPECT_EQ(n, doc.instances.size());
  try {
    document_view(mini(), "missing");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_found);
  }
}

TEST(Csv, HeadersAndBoundaries) {
  std::ostringstream f;
  write_csv(f, FrameCounts{{"Death", 2}, {"Killing", 3}});
  EXPECT_EQ(f.str(), "frame,count\nDeath,2\nKilling,3\n");
  TimeLagHistogram h;
  h.bucket_days = 7;
  h.buckets = {{0, 7, {{"Killing", 1}}}, {7, 14, {{"Killing", 2}}}};
  std::ostringstream t;
  write_csv(t, h);
  EXPECT_EQ(t.str(), "bucket_start,bucket_end,frame,count\n0,7,Killing,1\n7,14,Killing,2\n");
  std::ostringstream r;
  write_csv(r, "Killing", RoleLinkCounts{{"Victim", {{"a,b", 1}}}});
  EXPECT_EQ(r.str(), "frame,role,path,count\nKilling,Victim,\"a,b\",1\n");
}

TEST(Properties, ConsistencyOverRandomCorpora) {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const synthetic::Output gen = random_corpus(rng);
    const Corpus c = analyze_corpus(gen.build(), kb());
    CorpusFilter narrow;
    narrow.documents = {pred("source", Comparator::eq, {c.documents()[0].meta.source})};
    const FrameCounts all = frame_frequencies(c, {});
    const FrameCounts some = frame_frequencies(c, narrow);
    for (const auto& [frame, n] : some) EXPECT_LE(n, all.at(frame));
    for (const auto& [frame, row] : construction_by_frame(c, {})) {
      std::int64_t sum = 0;
      for (const auto& [k, n] : row) sum += n;
      EXPECT_EQ(sum, all.at(frame));
    }
    for (const char* frame : {"Killing", "Death"}) {
      const auto s = foregrounding_share(c, frame, {}, kb());
      EXPECT_EQ(s.denominator, all.count(frame) ? all.at(frame) : 0);
      EXPECT_LE(s.foregrounding, s.denominator);
    }
    const TimeLagHistogram h = time_lag_histogram(c, {}, {}, 5);
    std::int64_t binned = h.missing_event;
    for (const auto& b : h.buckets) binned += total(b.counts);
    EXPECT_EQ(binned, total(all));
  }
}
