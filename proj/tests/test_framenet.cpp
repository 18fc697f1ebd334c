#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "perspective/error.hpp"
#include "perspective/framenet.hpp"
#include "support.hpp"

using namespace perspective;
using namespace testing_support;

namespace {

FrameKB toy_kb(int frames) {
  FrameKB kb;
  for (int i = 0; i < frames; ++i) {
    FrameEntry e;
    e.name = "F" + std::to_string(i);
    e.core_roles = {"Agent", "Patient"};
    kb.add_frame(e);
  }
  return kb;
}

}  // namespace

TEST(FrameKB, ToyKbWithoutRelations) {
  const FrameKB kb = toy_kb(5);
  EXPECT_EQ(kb.size(), 5u);
  EXPECT_TRUE(kb.relations().empty());
  const auto r = kb.alternatives({"F1"}, default_alternative_relations(), 1);
  EXPECT_TRUE(r.added.empty());
  EXPECT_EQ(r.frames, std::vector<std::string>{"F1"});
}

TEST(FrameKB, BundledKbCoversRoleMappingFrames) {
  const FrameKB kb = bundled_kb();
  for (const char* f : {"Abusing", "Attack", "Causation", "Cause_harm", "Cause_motion", "Dead_or_alive", "Death",
                        "Emotion_directed", "Event", "Experience_bodily_harm", "Hit_target", "Killing", "Quarreling",
                        "Rape", "Use_firearm", "Catastrophe", "Impact", "Cause_impact"}) {
    EXPECT_TRUE(kb.contains(f)) << f;
    EXPECT_EQ(kb.role_mapping(f) == nullptr, std::string_view(f) == "Catastrophe" || std::string_view(f) == "Impact" ||
                                                 std::string_view(f) == "Cause_impact")
        << f;
  }
}

TEST(FrameKB, AgentivityRows) {
  const FrameKB kb = bundled_kb();
  EXPECT_EQ(kb.agentivity("Killing"), Agentivity::active);
  EXPECT_EQ(kb.agentivity("Death"), Agentivity::non_active);
  EXPECT_EQ(kb.agentivity("Event"), Agentivity::no_participant);
  EXPECT_EQ(kb.agentivity("Cause_impact"), Agentivity::active);
  EXPECT_EQ(kb.agentivity("Impact"), Agentivity::non_active);
}

TEST(FrameKB, AgentivityDefaults) {
  FrameKB kb;
  FrameEntry event;
  event.name = "Event";
  kb.add_frame(event);
  FrameEntry other;
  other.name = "Other";
  kb.add_frame(other);
  EXPECT_EQ(kb.agentivity("Event"), Agentivity::no_participant);
  EXPECT_EQ(kb.agentivity("Other"), Agentivity::non_active);
  std::istringstream table("# frame\tclass\nOther\tactive\n");
  kb.read_agentivity(table);
  EXPECT_EQ(kb.agentivity("Other"), Agentivity::active);
}

TEST(FrameKB, AgentivityTableNamingUnknownFrameFails) {
  FrameKB kb = toy_kb(1);
  std::istringstream table("Nope\tactive\n");
  try {
    kb.read_agentivity(table);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unknown_frame");
  }
}

TEST(FrameKB, MalformedAgentivityClass) {
  FrameKB kb = toy_kb(1);
  std::istringstream table("F0\tsometimes\n");
  EXPECT_THROW(kb.read_agentivity(table), Error);
}

TEST(FrameKB, RoleClasses) {
  const FrameKB kb = bundled_kb();
  EXPECT_EQ(kb.role_class("Killing", "Victim"), RoleClass::victim_like);
  EXPECT_EQ(kb.role_class("Killing", "Killer"), RoleClass::perpetrator_like);
  EXPECT_EQ(kb.role_class("Killing", "Cause"), RoleClass::cause_like);
  EXPECT_EQ(kb.role_class("Death", "Protagonist"), RoleClass::victim_like);
  EXPECT_EQ(kb.role_class("Killing", "Place"), RoleClass::other);
  EXPECT_EQ(kb.role_class("Experience_bodily_harm", "Body_part"), RoleClass::perpetrator_like);
  EXPECT_THROW(kb.role_class("Nope", "Victim"), Error);
}

TEST(FrameKB, RoleClassTotalOverFramesAndRoles) {
  const FrameKB kb = bundled_kb();
  for (const FrameEntry& f : kb.frames()) {
    for (const auto* roles : {&f.core_roles, &f.non_core_roles}) {
      for (const std::string& r : *roles) EXPECT_NO_THROW(kb.role_class(f.name, r));
    }
  }
}

TEST(FrameKB, RoleMappingRejectsForeignRole) {
  FrameKB kb = toy_kb(1);
  std::istringstream table("F0\tKiller\t-\t-\n");
  try {
    kb.read_role_mapping(table);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unknown_role");
  }
}

TEST(FrameKB, CompiledRecords) {
  FrameKB kb;
  std::istringstream in(
      R"({"kind":"frame","name":"A","definition":"d","core_roles":["X"],"lexical_units":["run.v","pass away.v"]})"
      "\n"
      R"({"kind":"frame","name":"B","definition":"e","core_roles":["Y"],"lexical_units":[]})"
      "\n"
      R"({"kind":"relation","type":"Causative_of","parent":"A","child":"B"})"
      "\n");
  kb.read_compiled(in);
  EXPECT_EQ(kb.size(), 2u);
  ASSERT_EQ(kb.at("A").lexical_units.size(), 2u);
  EXPECT_EQ(kb.at("A").lexical_units[1].lemma, "pass away");
  EXPECT_EQ(kb.at("A").lexical_units[1].pos, "v");
  EXPECT_EQ(kb.relations().size(), 1u);
}

TEST(FrameKB, CompiledErrors) {
  const auto fails = [](const std::string& text, const std::string& code) {
    FrameKB kb;
    std::istringstream in(text);
    try {
      kb.read_compiled(in);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code) << e.what();
      return;
    }
    ADD_FAILURE() << "no error for " << text;
  };
  fails("{\"kind\":\"frame\",\"name\":\"A\"}\n{\"kind\":\"frame\",\"name\":\"A\"}\n", "duplicate_frame");
  fails("{\"kind\":\"frame\",\"name\":\"A\"}\n{\"kind\":\"relation\",\"type\":\"Friend_of\",\"parent\":\"A\",\"child\":\"A\"}\n",
        "unknown_relation_type");
  fails("{\"kind\":\"frame\",\"name\":\"A\"}\n{\"kind\":\"relation\",\"type\":\"Uses\",\"parent\":\"A\",\"child\":\"Z\"}\n",
        "unknown_frame");
}

TEST(FrameKB, LexicalUnitNames) {
  EXPECT_EQ(LexicalUnit::from_name("murder.v"), (LexicalUnit{"murder", "v"}));
  EXPECT_EQ(LexicalUnit::from_name("take place.v"), (LexicalUnit{"take place", "v"}));
  EXPECT_EQ(LexicalUnit::from_name("U.S."), (LexicalUnit{"U.S.", ""}));
}

TEST(Alternatives, ImpactReachesCauseImpact) {
  const FrameKB kb = bundled_kb();
  const auto r = kb.alternatives({"Impact"}, {RelationType::Causative_of}, 1);
  EXPECT_NE(std::find(r.added.begin(), r.added.end(), "Cause_impact"), r.added.end());
}

TEST(Alternatives, DeathMatchesEdgeScan) {
  const FrameKB kb = bundled_kb();
  const std::set<RelationType> wl{RelationType::Causative_of, RelationType::Inchoative_of};
  const auto r = kb.alternatives({"Death"}, wl, 1);
  const auto expected = oracle::alternatives(kb, {"Death"}, wl, 1);
  EXPECT_EQ(std::set<std::string>(r.added.begin(), r.added.end()), expected);
  EXPECT_TRUE(std::is_sorted(r.added.begin(), r.added.end()));
  EXPECT_TRUE(std::is_sorted(r.frames.begin(), r.frames.end()));
}

TEST(Alternatives, MatchesOracleForEveryFrameHopsAndWhitelist) {
  const FrameKB kb = bundled_kb();
  const std::vector<std::set<RelationType>> whitelists = {
      default_alternative_relations(),
      {RelationType::Inheritance},
      {RelationType::Inheritance, RelationType::Uses, RelationType::See_also, RelationType::Causative_of},
  };
  for (const auto& wl : whitelists) {
    for (int hops = 1; hops <= 3; ++hops) {
      for (const FrameEntry& f : kb.frames()) {
        const auto r = kb.alternatives({f.name}, wl, hops);
        EXPECT_EQ(std::set<std::string>(r.added.begin(), r.added.end()), oracle::alternatives(kb, {f.name}, wl, hops))
            << f.name << " hops " << hops;
      }
    }
  }
}

TEST(Alternatives, MonotoneInHopsAndWhitelist) {
  const FrameKB kb = bundled_kb();
  const std::set<RelationType> small{RelationType::Causative_of};
  std::set<RelationType> big = default_alternative_relations();
  big.insert(RelationType::Inheritance);
  for (const FrameEntry& f : kb.frames()) {
    const auto a = kb.alternatives({f.name}, small, 1).frames;
    const auto b = kb.alternatives({f.name}, big, 1).frames;
    const auto c = kb.alternatives({f.name}, big, 2).frames;
    EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end())) << f.name;
    EXPECT_TRUE(std::includes(c.begin(), c.end(), b.begin(), b.end())) << f.name;
  }
}

TEST(Alternatives, Errors) {
  const FrameKB kb = bundled_kb();
  EXPECT_THROW(kb.alternatives({"Nope"}, default_alternative_relations(), 1), Error);
  EXPECT_THROW(kb.alternatives({"Death"}, {}, 1), Error);
  EXPECT_THROW(kb.alternatives({"Death"}, default_alternative_relations(), 0), Error);
}
