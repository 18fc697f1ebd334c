#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace perspective {

enum class Agentivity { active, non_active, no_participant };

std::optional<Agentivity> parse_agentivity(std::string_view text);
std::string_view to_string(Agentivity a);

enum class RelationType {
  Inheritance, Perspective_on, Causative_of, Inchoative_of, Uses, Subframe,
  Precedes, See_also
};

std::optional<RelationType> parse_relation_type(std::string_view text);
std::string_view to_string(RelationType t);

struct LexicalUnit {
  std::string lemma;  // may contain spaces or underscores for multiword LUs
  std::string pos;    // FrameNet POS suffix, e.g. "v", "n"; may be empty

  // "murder.v" -> {murder, v}. A name without a recognised suffix keeps
  // the whole string as lemma.
  static LexicalUnit from_name(std::string_view name);
  std::string name() const { return pos.empty() ? lemma : lemma + "." + pos; }
  friend bool operator==(const LexicalUnit&, const LexicalUnit&) = default;
};

struct FrameEntry {
  std::string name;
  std::string definition;
  std::vector<std::string> core_roles;
  std::vector<std::string> non_core_roles;
  std::vector<LexicalUnit> lexical_units;
  std::vector<std::string> example_sentences;
  Agentivity agentivity = Agentivity::non_active;

  bool has_role(std::string_view role) const;
};

struct FrameRelation {
  RelationType type;
  std::string parent;
  std::string child;
  friend bool operator==(const FrameRelation&, const FrameRelation&) = default;
};

struct RoleMapping {
  std::string frame;
  std::vector<std::string> perpetrator_like;
  std::vector<std::string> victim_like;
  std::vector<std::string> cause_like;
};

enum class RoleClass { perpetrator_like, victim_like, cause_like, other };
std::string_view to_string(RoleClass c);

struct AlternativesResult {
  std::vector<std::string> frames;  // input plus added, sorted
  std::vector<std::string> added;   // reachable frames not in the input, sorted
};

inline const std::set<RelationType>& default_alternative_relations() {
  static const std::set<RelationType> kDefault{
      RelationType::Perspective_on, RelationType::Causative_of,
      RelationType::Inchoative_of};
  return kDefault;
}

class FrameKB {
 public:
  // Parses the compiled line-delimited KB: {"kind":"frame",...} and
  // {"kind":"relation",...} records.
  void read_compiled(std::istream& in);
  // Two tab-separated columns: frame, class. '#' starts a comment.
  void read_agentivity(std::istream& in);
  // Four tab-separated columns: frame, perpetrator_like, victim_like,
  // cause_like; '-' for none, '|' separates alternatives.
  void read_role_mapping(std::istream& in);

  const FrameEntry* find(std::string_view name) const;
  // Throws Error(not_found, "unknown_frame").
  const FrameEntry& at(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  const std::vector<FrameEntry>& frames() const { return frames_; }
  const std::vector<FrameRelation>& relations() const { return relations_; }
  std::size_t size() const { return frames_.size(); }

  Agentivity agentivity(std::string_view frame) const { return at(frame).agentivity; }

  const RoleMapping* role_mapping(std::string_view frame) const;
  bool has_role_mappings() const { return !role_maps_.empty(); }
  RoleClass role_class(std::string_view frame, std::string_view role) const;

  // Frames reachable within `hops` steps along whitelisted relations in
  // either direction. Throws on unknown input frames, hops < 1 or an empty
  // whitelist.
  AlternativesResult alternatives(const std::set<std::string>& frames,
                                  const std::set<RelationType>& whitelist,
                                  int hops) const;

  // Adds a frame directly; used by tests and generators.
  void add_frame(FrameEntry entry);
  void add_relation(FrameRelation relation);

 private:
  std::vector<FrameEntry> frames_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
  std::vector<FrameRelation> relations_;
  std::map<std::string, RoleMapping, std::less<>> role_maps_;
  std::set<std::string, std::less<>> explicit_agentivity_;
};

struct KbPaths {
  std::filesystem::path kb;
  std::filesystem::path agentivity;
  std::optional<std::filesystem::path> role_map;
};

// Frames missing from the agentivity table default to non_active, except
// "Event", which is no_participant.
FrameKB load_kb(const KbPaths& paths);

}  // namespace perspective
