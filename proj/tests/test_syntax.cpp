#include <gtest/gtest.h>

#include "oracles.hpp"
#include "perspective/error.hpp"
#include "perspective/syntax.hpp"
#include "support.hpp"

using namespace perspective;
using namespace testing_support;

namespace {

const FrameKB& kb() {
  static const FrameKB k = bundled_kb();
  return k;
}

FrameInstance instance(const std::string& frame, TokenSpan trigger, std::vector<RoleSpan> roles = {}) {
  FrameInstance i;
  i.instance_id = "i";
  i.doc_id = "d";
  i.sent_id = "s1";
  i.frame = frame;
  i.trigger = trigger;
  i.roles = std::move(roles);
  return i;
}

// "the homicide happened"
Sentence homicide_happened() {
  return make_sentence({{"the", Upos::DET, 2, "det"},
                        {"homicide", Upos::NOUN, 3, "nsubj"},
                        {"happened", Upos::VERB, 0, "root", "VerbForm=Fin"}});
}

}  // namespace

TEST(TriggerHead, SingleToken) {
  const Sentence s = homicide_happened();
  EXPECT_EQ(trigger_head(s, {1, 2}), 1);
}

TEST(TriggerHead, HeadOfTwoTokenSpan) {
  // "take place": "place" (pos 1) depends on "take" (pos 0)
  const Sentence s = make_sentence({{"take", Upos::VERB, 0, "root"}, {"place", Upos::NOUN, 1, "obj"}});
  EXPECT_EQ(trigger_head(s, {0, 2}), 0);
  const Sentence t = make_sentence({{"the", Upos::DET, 2, "det"}, {"murderer", Upos::NOUN, 0, "root"}});
  EXPECT_EQ(trigger_head(t, {0, 2}), 1);
}

TEST(TriggerHead, AgreesWithDepthOracleOnRandomTrees) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = rng.between(1, 12);
    const Sentence s = random_tree(rng, n);
    const int a = rng.between(0, n - 1), b = rng.between(0, n - 1);
    const TokenSpan span{std::min(a, b), std::max(a, b) + 1};
    ASSERT_EQ(trigger_head(s, span), oracle::trigger_head(s, span)) << "trial " << trial;
  }
}

TEST(Classify, ConstructionsCascade) {
  // nonverbal: NOUN trigger regardless of frame agentivity
  const Sentence murder = make_sentence(
      {{"The", Upos::DET, 2, "det"}, {"murder", Upos::NOUN, 0, "root"}, {"of", Upos::ADP, 4, "case"}, {"MLK", Upos::PROPN, 2, "nmod"}});
  EXPECT_EQ(classify_construction(murder, instance("Killing", {1, 2}), kb()), Construction::nonverbal);

  const Sentence died = make_sentence(
      {{"The", Upos::DET, 2, "det"}, {"victim", Upos::NOUN, 3, "nsubj"}, {"died", Upos::VERB, 0, "root", "VerbForm=Fin"}});
  EXPECT_EQ(classify_construction(died, instance("Death", {2, 3}), kb()), Construction::vrb_unaccusative);

  const Sentence occurred = make_sentence(
      {{"The", Upos::DET, 2, "det"}, {"event", Upos::NOUN, 3, "nsubj"}, {"occurred", Upos::VERB, 0, "root", "VerbForm=Fin"}});
  EXPECT_EQ(classify_construction(occurred, instance("Event", {2, 3}), kb()), Construction::vrb_impersonal);

  const Sentence hit = make_sentence({{"The", Upos::DET, 2, "det"},
                                      {"cyclist", Upos::NOUN, 4, "nsubj:pass"},
                                      {"was", Upos::AUX, 4, "aux:pass"},
                                      {"hit", Upos::VERB, 0, "root"}});
  EXPECT_EQ(classify_construction(hit, instance("Cause_impact", {3, 4}), kb()), Construction::vrb_passive);
}

TEST(Classify, PassiveEvidenceSources) {
  const auto label = [](const Sentence& s) { return classify_construction(s, instance("Killing", {1, 2}), kb()); };
  // aux:pass child
  EXPECT_EQ(label(make_sentence({{"was", Upos::AUX, 2, "aux:pass"}, {"killed", Upos::VERB, 0, "root"}})),
            Construction::vrb_passive);
  // nsubj:pass child only
  EXPECT_EQ(label(make_sentence({{"she", Upos::PRON, 2, "nsubj:pass"}, {"killed", Upos::VERB, 0, "root"}})),
            Construction::vrb_passive);
  // Voice=Pass only
  EXPECT_EQ(label(make_sentence({{"x", Upos::NOUN, 2, "obj"}, {"killed", Upos::VERB, 0, "root", "Voice=Pass"}})),
            Construction::vrb_passive);
}

TEST(Classify, ActiveAndOther) {
  const auto label = [](const Sentence& s, TokenSpan t) { return classify_construction(s, instance("Killing", t), kb()); };
  // finite head
  EXPECT_EQ(label(make_sentence({{"x", Upos::NOUN, 2, "obj"}, {"killed", Upos::VERB, 0, "root", "VerbForm=Fin"}}), {1, 2}),
            Construction::vrb_active);
  // finite auxiliary child
  EXPECT_EQ(label(make_sentence({{"has", Upos::AUX, 2, "aux", "VerbForm=Fin"}, {"killed", Upos::VERB, 0, "root", "VerbForm=Part"}}),
                  {1, 2}),
            Construction::vrb_active);
  // overt nsubj, no morphology
  EXPECT_EQ(label(make_sentence({{"he", Upos::PRON, 2, "nsubj"}, {"killed", Upos::VERB, 0, "root"}}), {1, 2}),
            Construction::vrb_active);
  // bare infinitive
  EXPECT_EQ(label(make_sentence({{"tried", Upos::VERB, 0, "root", "VerbForm=Fin"},
                                 {"to", Upos::PART, 3, "mark"},
                                 {"kill", Upos::VERB, 1, "xcomp", "VerbForm=Inf"}}),
                  {2, 3}),
            Construction::other);
}

TEST(Classify, AuxTriggerCountsAsVerbal) {
  const Sentence s = make_sentence({{"it", Upos::PRON, 2, "nsubj"}, {"was", Upos::AUX, 0, "root", "VerbForm=Fin"}});
  EXPECT_EQ(classify_construction(s, instance("Event", {1, 2}), kb()), Construction::vrb_impersonal);
  EXPECT_EQ(classify_construction(s, instance("Killing", {1, 2}), kb()), Construction::vrb_active);
}

TEST(Classify, UnknownFrameIsAnError) {
  EXPECT_THROW(classify_construction(homicide_happened(), instance("Nope", {2, 3}), kb()), Error);
}

TEST(Classify, UnrelatedTokensDoNotChangeLabel) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    Sentence s = random_tree(rng, rng.between(2, 12));
    const int t = rng.between(0, s.size() - 1);
    const FrameInstance inst = instance(rng.below(2) ? "Killing" : "Death", {t, t + 1});
    const Construction before = classify_construction(s, inst, kb());
    for (Token& tok : s.tokens) {
      if (tok.index - 1 == t || tok.head == t + 1) continue;
      tok.form = "zz";
      tok.lemma = "zz";
      tok.upos = Upos::X;
      tok.feats = {{"VerbForm", "Fin"}};
    }
    EXPECT_EQ(classify_construction(s, inst, kb()), before);
  }
}

TEST(RoleLinks, PaperLabelShapes) {
  const Sentence event = make_sentence(
      {{"the", Upos::DET, 2, "det"}, {"event", Upos::NOUN, 3, "nsubj"}, {"happened", Upos::VERB, 0, "root"}});
  EXPECT_EQ(role_dependency_links(event, instance("Event", {2, 3}, {{"Event", {0, 2}}}), 3).at(0).label(),
            "Event:nsubj↓");

  const Sentence assassin = make_sentence(
      {{"the", Upos::DET, 2, "det"}, {"assassin", Upos::NOUN, 0, "root"}, {"of", Upos::ADP, 4, "case"}, {"JFK", Upos::PROPN, 2, "nmod"}});
  EXPECT_EQ(role_dependency_links(assassin, instance("Killing", {1, 2}, {{"Killer", {1, 2}}}), 3).at(0).label(),
            "Killer:*");

  const Sentence prisoner = make_sentence({{"the", Upos::DET, 2, "det"},
                                           {"prisoner", Upos::NOUN, 3, "nsubj"},
                                           {"remains", Upos::VERB, 0, "root"},
                                           {"in", Upos::ADP, 5, "case"},
                                           {"detention", Upos::NOUN, 3, "obl"}});
  EXPECT_EQ(role_dependency_links(prisoner, instance("Detaining", {4, 5}, {{"Suspect", {0, 2}}}), 3).at(0).label(),
            "Suspect:↑--nsubj↓");
}

TEST(RoleLinks, StepCapLeavesLinkUnresolved) {
  const Sentence prisoner = make_sentence({{"the", Upos::DET, 2, "det"},
                                           {"prisoner", Upos::NOUN, 3, "nsubj"},
                                           {"remains", Upos::VERB, 0, "root"},
                                           {"in", Upos::ADP, 5, "case"},
                                           {"detention", Upos::NOUN, 3, "obl"}});
  const auto links = role_dependency_links(prisoner, instance("Detaining", {4, 5}, {{"Suspect", {0, 2}}}), 1);
  EXPECT_EQ(links.at(0).path, "?");
  EXPECT_FALSE(links.at(0).resolved);
  EXPECT_THROW(role_dependency_links(prisoner, instance("Detaining", {4, 5}), 0), Error);
}

TEST(RoleLinks, OneLinkPerRoleInOrder) {
  const Sentence s = homicide_happened();
  const auto links = role_dependency_links(s, instance("Event", {2, 3}, {{"B", {0, 1}}, {"A", {1, 2}}, {"B", {2, 3}}}), 3);
  ASSERT_EQ(links.size(), 3u);
  EXPECT_EQ(links[0].label(), "B:nsubj↓--det↓");
  EXPECT_EQ(links[1].label(), "A:nsubj↓");
  EXPECT_EQ(links[2].label(), "B:*");
}

TEST(RoleLinks, TieBreakPrefersFewerUpSteps) {
  // From "b": "c" is amod↓ and "a" is ↑, both one step away.
  const Sentence v =
      make_sentence({{"c", Upos::ADJ, 2, "amod"}, {"b", Upos::NOUN, 3, "obj"}, {"a", Upos::VERB, 0, "root"}});
  EXPECT_EQ(role_dependency_links(v, instance("Killing", {1, 2}, {{"R", {0, 1}}}), 3).at(0).path, "amod↓");
  EXPECT_EQ(role_dependency_links(v, instance("Killing", {1, 2}, {{"R", {2, 3}}}), 3).at(0).path, "↑");
  // Span holding both: the downward path wins.
  const Sentence w = make_sentence({{"b", Upos::NOUN, 3, "obj"}, {"c", Upos::ADJ, 1, "amod"}, {"a", Upos::VERB, 0, "root"}});
  EXPECT_EQ(role_dependency_links(w, instance("Killing", {0, 1}, {{"R", {1, 3}}}), 3).at(0).path, "amod↓");
  // Equal up-steps: smaller string wins.
  const Sentence x = make_sentence({{"b", Upos::VERB, 0, "root"}, {"p", Upos::NOUN, 1, "obj"}, {"q", Upos::NOUN, 1, "nsubj"}});
  EXPECT_EQ(role_dependency_links(x, instance("Killing", {0, 1}, {{"R", {1, 3}}}), 3).at(0).path, "nsubj↓");
}

TEST(RoleLinks, AgreesWithExhaustiveOracleOnRandomTrees) {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = rng.between(1, 12);
    const Sentence s = random_tree(rng, n);
    const int t = rng.between(0, n - 1);
    const int a = rng.between(0, n - 1), b = rng.between(0, n - 1);
    const RoleSpan role{"R", {std::min(a, b), std::max(a, b) + 1}};
    const int max_steps = rng.between(1, 6);
    const auto got = role_dependency_links(s, instance("Killing", {t, t + 1}, {role}), max_steps).at(0);
    ASSERT_EQ(got, oracle::role_link(s, t, role, max_steps)) << "trial " << trial;
  }
}

TEST(RoleLinks, RenderParseRoundTrip) {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.between(2, 12);
    const Sentence s = random_tree(rng, n);
    const int t = rng.between(0, n - 1);
    const int r = rng.between(0, n - 1);
    if (r == t) continue;
    const auto link = role_dependency_links(s, instance("Killing", {t, t + 1}, {{"R", {r, r + 1}}}), 12).at(0);
    ASSERT_TRUE(link.resolved);
    const auto steps = parse_path(link.path);
    EXPECT_EQ(render_path(steps), link.path);
    EXPECT_LE(static_cast<int>(steps.size()), 12);
  }
  EXPECT_THROW(parse_path("*"), Error);
  EXPECT_THROW(parse_path("?"), Error);
  EXPECT_THROW(parse_path("nsubj"), Error);
}

TEST(RootStatus, PaperExamples) {
  const Sentence s = homicide_happened();
  EXPECT_TRUE(root_status(s, instance("Killing", {1, 2}), Construction::nonverbal));
  EXPECT_TRUE(root_status(s, instance("Event", {2, 3}), Construction::vrb_impersonal));

  // "he was arrested for homicide ten years later"
  const Sentence arrested = make_sentence({{"he", Upos::PRON, 3, "nsubj:pass"},
                                           {"was", Upos::AUX, 3, "aux:pass"},
                                           {"arrested", Upos::VERB, 0, "root"},
                                           {"for", Upos::ADP, 5, "case"},
                                           {"homicide", Upos::NOUN, 3, "obl"},
                                           {"ten", Upos::NUM, 7, "nummod"},
                                           {"years", Upos::NOUN, 8, "obl:npmod"},
                                           {"later", Upos::ADV, 3, "advmod"}});
  EXPECT_FALSE(root_status(arrested, instance("Killing", {4, 5}), Construction::nonverbal));

  const Sentence single = make_sentence({{"Murder", Upos::NOUN, 0, "root"}});
  EXPECT_TRUE(root_status(single, instance("Killing", {0, 1}), Construction::nonverbal));
}

TEST(RootStatus, VerbalMeansDeprelRoot) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const Sentence s = random_tree(rng, rng.between(1, 12));
    const int t = rng.between(0, s.size() - 1);
    EXPECT_EQ(root_status(s, instance("Killing", {t, t + 1}), Construction::vrb_active), s.at(t).deprel == "root");
  }
}

TEST(AnalyzeCorpus, SerialEqualsParallelAndIsIdempotent) {
  const Corpus raw = load_corpus(mini_paths(), kb());
  const Corpus a = analyze_corpus(raw, kb(), 3, Execution::serial);
  const Corpus b = analyze_corpus(raw, kb(), 3, Execution::parallel);
  EXPECT_EQ(a.slots(), b.slots());
  EXPECT_EQ(analyze_corpus(a, kb(), 3, Execution::serial).slots(), a.slots());
  std::size_t n = 0;
  for (const auto& d : a.slots()) n += d.size();
  EXPECT_EQ(n, raw.instance_count());
  EXPECT_EQ(a.failed_count(), 0u);
}

TEST(AnalyzeCorpus, BadInstanceIsRecordedNotFatal) {
  CorpusDocument doc;
  doc.meta.doc_id = "d";
  doc.meta.source = "x";
  doc.sentences.push_back(homicide_happened());
  FrameInstance ok = instance("Event", {2, 3});
  ok.instance_id = "ok";
  FrameInstance bad = instance("Event", {5, 9});
  bad.instance_id = "bad";
  doc.instances = {bad, ok};
  const Corpus c = Corpus::build({doc}, {});
  const Corpus a = analyze_corpus(c, kb());
  EXPECT_EQ(a.failed_count(), 1u);
  EXPECT_FALSE(a.slot({0, 0}).ok());
  EXPECT_NE(a.slot({0, 0}).error.find("bad"), std::string::npos) << a.slot({0, 0}).error;
  EXPECT_TRUE(a.slot({0, 1}).ok());
}

TEST(AnalyzeCorpus, EmptyCorpus) {
  const Corpus c = Corpus::build({}, {});
  const Corpus a = analyze_corpus(c, kb());
  EXPECT_TRUE(a.analyzed());
  EXPECT_TRUE(a.slots().empty());
}
