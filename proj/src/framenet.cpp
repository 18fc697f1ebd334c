#include "perspective/framenet.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include <json.hpp>

#include "perspective/error.hpp"
#include "text_util.hpp"

namespace perspective {

using detail::line_ref;
using detail::split;
using detail::trim;
using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 8> kRelationNames = {
    "Inheritance", "Perspective_on", "Causative_of", "Inchoative_of",
    "Uses",        "Subframe",       "Precedes",     "See_also"};

constexpr std::array<std::string_view, 12> kLuPos = {
    "v", "n", "a", "adv", "prep", "num", "c", "scon", "art", "intj", "pron", "idio"};

std::vector<std::string> string_list(const json& record, const char* key) {
  std::vector<std::string> out;
  if (const auto it = record.find(key); it != record.end()) {
    for (const auto& item : *it) out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<std::string> role_cell(std::string_view cell) {
  std::vector<std::string> roles;
  cell = trim(cell);
  if (cell.empty() || cell == "-") return roles;
  for (std::string_view r : split(cell, '|')) roles.emplace_back(trim(r));
  return roles;
}

bool list_contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// Splits a table line into tab-separated cells, dropping '#' comments.
// Returns false for blank or comment-only lines.
bool table_cells(std::string raw, std::vector<std::string_view>& cells, std::string& storage) {
  if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
  storage = std::move(raw);
  if (trim(storage).empty()) return false;
  cells = split(trim(storage), '\t');
  return true;
}

}  // namespace

std::optional<Agentivity> parse_agentivity(std::string_view text) {
  if (text == "active") return Agentivity::active;
  if (text == "non_active" || text == "non-active") return Agentivity::non_active;
  if (text == "no_participant") return Agentivity::no_participant;
  return std::nullopt;
}

std::string_view to_string(Agentivity a) {
  switch (a) {
    case Agentivity::active: return "active";
    case Agentivity::non_active: return "non_active";
    case Agentivity::no_participant: return "no_participant";
  }
  return "non_active";
}

std::optional<RelationType> parse_relation_type(std::string_view text) {
  for (std::size_t i = 0; i < kRelationNames.size(); ++i) {
    if (kRelationNames[i] == text) return static_cast<RelationType>(i);
  }
  return std::nullopt;
}

std::string_view to_string(RelationType t) { return kRelationNames[static_cast<std::size_t>(t)]; }

std::string_view to_string(RoleClass c) {
  switch (c) {
    case RoleClass::perpetrator_like: return "perpetrator_like";
    case RoleClass::victim_like: return "victim_like";
    case RoleClass::cause_like: return "cause_like";
    case RoleClass::other: return "other";
  }
  return "other";
}

LexicalUnit LexicalUnit::from_name(std::string_view name) {
  const std::size_t dot = name.rfind('.');
  if (dot != std::string_view::npos && dot > 0) {
    const std::string_view suffix = name.substr(dot + 1);
    if (std::find(kLuPos.begin(), kLuPos.end(), suffix) != kLuPos.end()) {
      return LexicalUnit{std::string(name.substr(0, dot)), std::string(suffix)};
    }
  }
  return LexicalUnit{std::string(name), {}};
}

bool FrameEntry::has_role(std::string_view role) const {
  return list_contains(core_roles, role) || list_contains(non_core_roles, role);
}

void FrameKB::add_frame(FrameEntry entry) {
  if (by_name_.count(entry.name)) {
    throw input_error("duplicate_frame", "duplicate frame \"" + entry.name + "\"");
  }
  if (!explicit_agentivity_.count(entry.name)) {
    entry.agentivity = entry.name == "Event" ? Agentivity::no_participant : Agentivity::non_active;
  }
  by_name_.emplace(entry.name, frames_.size());
  frames_.push_back(std::move(entry));
}

void FrameKB::add_relation(FrameRelation relation) { relations_.push_back(std::move(relation)); }

void FrameKB::read_compiled(std::istream& in) {
  std::string raw;
  int line_no = 0;
  std::vector<std::pair<FrameRelation, int>> pending;
  while (std::getline(in, raw)) {
    ++line_no;
    if (trim(raw).empty()) continue;
    json record;
    try {
      record = json::parse(raw);
    } catch (const json::exception& e) {
      throw input_error("malformed_kb", "invalid KB record at " + line_ref(line_no) + ": " + e.what());
    }
    try {
      const std::string kind = record.at("kind").get<std::string>();
      if (kind == "frame") {
        FrameEntry entry;
        entry.name = record.at("name").get<std::string>();
        entry.definition = record.value("definition", "");
        entry.core_roles = string_list(record, "core_roles");
        entry.non_core_roles = string_list(record, "non_core_roles");
        for (const std::string& lu : string_list(record, "lexical_units")) {
          entry.lexical_units.push_back(LexicalUnit::from_name(lu));
        }
        entry.example_sentences = string_list(record, "examples");
        try {
          add_frame(std::move(entry));
        } catch (const Error& e) {
          throw input_error(e.code(), std::string(e.what()) + " at " + line_ref(line_no));
        }
      } else if (kind == "relation") {
        const std::string type = record.at("type").get<std::string>();
        const auto parsed = parse_relation_type(type);
        if (!parsed) {
          throw input_error("unknown_relation_type",
                            "unknown relation type \"" + type + "\" at " + line_ref(line_no));
        }
        pending.emplace_back(FrameRelation{*parsed, record.at("parent").get<std::string>(),
                                           record.at("child").get<std::string>()},
                             line_no);
      } else {
        throw input_error("malformed_kb", "unknown record kind \"" + kind + "\" at " + line_ref(line_no));
      }
    } catch (const json::exception& e) {
      throw input_error("malformed_kb", "invalid KB record at " + line_ref(line_no) + ": " + e.what());
    }
  }
  for (auto& [rel, line] : pending) {
    if (!contains(rel.parent) || !contains(rel.child)) {
      throw input_error("unknown_frame", "relation " + rel.parent + " -> " + rel.child +
                                             " names an unknown frame at " + line_ref(line));
    }
    relations_.push_back(std::move(rel));
  }
}

void FrameKB::read_agentivity(std::istream& in) {
  std::string raw, storage;
  std::vector<std::string_view> cells;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!table_cells(raw, cells, storage)) continue;
    if (cells.size() != 2) {
      throw input_error("malformed_agentivity", "expected 2 columns at " + line_ref(line_no));
    }
    const std::string frame(trim(cells[0]));
    const auto cls = parse_agentivity(trim(cells[1]));
    if (!cls) {
      throw input_error("malformed_agentivity", "unknown agentivity class \"" +
                                                    std::string(trim(cells[1])) + "\" at " + line_ref(line_no));
    }
    const auto it = by_name_.find(frame);
    if (it == by_name_.end()) {
      throw input_error("unknown_frame", "agentivity table names unknown frame \"" + frame + "\" at " +
                                             line_ref(line_no));
    }
    frames_[it->second].agentivity = *cls;
    explicit_agentivity_.insert(frame);
  }
}

void FrameKB::read_role_mapping(std::istream& in) {
  std::string raw, storage;
  std::vector<std::string_view> cells;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!table_cells(raw, cells, storage)) continue;
    if (cells.size() != 4) {
      throw input_error("malformed_role_map", "expected 4 columns at " + line_ref(line_no));
    }
    RoleMapping m;
    m.frame = std::string(trim(cells[0]));
    const FrameEntry* entry = find(m.frame);
    if (!entry) {
      throw input_error("unknown_frame", "role mapping names unknown frame \"" + m.frame + "\" at " +
                                             line_ref(line_no));
    }
    m.perpetrator_like = role_cell(cells[1]);
    m.victim_like = role_cell(cells[2]);
    m.cause_like = role_cell(cells[3]);
    for (const auto* group : {&m.perpetrator_like, &m.victim_like, &m.cause_like}) {
      for (const std::string& role : *group) {
        if (!entry->has_role(role)) {
          throw input_error("unknown_role", "role \"" + role + "\" is not a role of " + m.frame +
                                                " at " + line_ref(line_no));
        }
      }
    }
    role_maps_[m.frame] = std::move(m);
  }
}

const FrameEntry* FrameKB::find(std::string_view name) const {
  const auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &frames_[it->second];
}

const FrameEntry& FrameKB::at(std::string_view name) const {
  if (const FrameEntry* e = find(name)) return *e;
  throw not_found("unknown_frame", "unknown frame \"" + std::string(name) + "\"");
}

const RoleMapping* FrameKB::role_mapping(std::string_view frame) const {
  const auto it = role_maps_.find(frame);
  return it == role_maps_.end() ? nullptr : &it->second;
}

RoleClass FrameKB::role_class(std::string_view frame, std::string_view role) const {
  at(frame);
  const RoleMapping* m = role_mapping(frame);
  if (!m) return RoleClass::other;
  if (list_contains(m->perpetrator_like, role)) return RoleClass::perpetrator_like;
  if (list_contains(m->victim_like, role)) return RoleClass::victim_like;
  if (list_contains(m->cause_like, role)) return RoleClass::cause_like;
  return RoleClass::other;
}

AlternativesResult FrameKB::alternatives(const std::set<std::string>& frames,
                                         const std::set<RelationType>& whitelist, int hops) const {
  if (hops < 1) throw input_error("bad_hops", "hops must be >= 1");
  if (whitelist.empty()) throw input_error("empty_whitelist", "relation whitelist is empty");
  for (const std::string& f : frames) at(f);

  std::set<std::string> reached = frames;
  std::set<std::string> frontier = frames;
  for (int hop = 0; hop < hops && !frontier.empty(); ++hop) {
    std::set<std::string> next;
    for (const FrameRelation& rel : relations_) {
      if (!whitelist.count(rel.type)) continue;
      if (frontier.count(rel.parent) && !reached.count(rel.child)) next.insert(rel.child);
      if (frontier.count(rel.child) && !reached.count(rel.parent)) next.insert(rel.parent);
    }
    reached.insert(next.begin(), next.end());
    frontier = std::move(next);
  }
  AlternativesResult result;
  result.frames.assign(reached.begin(), reached.end());
  for (const std::string& f : reached) {
    if (!frames.count(f)) result.added.push_back(f);
  }
  return result;
}

FrameKB load_kb(const KbPaths& paths) {
  const auto open = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw input_error("file_not_found", "cannot open " + p.string());
    return in;
  };
  FrameKB kb;
  {
    auto in = open(paths.kb);
    kb.read_compiled(in);
  }
  {
    auto in = open(paths.agentivity);
    kb.read_agentivity(in);
  }
  if (paths.role_map) {
    auto in = open(*paths.role_map);
    kb.read_role_mapping(in);
  }
  return kb;
}

}  // namespace perspective
