#include "perspective/synthetic.hpp"

#include <algorithm>
#include <fstream>

#include "perspective/error.hpp"
#include "perspective/random.hpp"
#include "perspective/syntax.hpp"

namespace perspective::synthetic {

namespace {

using nlohmann::json;

constexpr const char* kFin = "Mood=Ind|Tense=Past|VerbForm=Fin";
constexpr const char* kPres = "Mood=Ind|Tense=Pres|VerbForm=Fin";
constexpr const char* kPass = "Tense=Past|VerbForm=Part|Voice=Pass";
constexpr const char* kInf = "VerbForm=Inf";

// "{V}" and "{P}" forms are filled with a victim or perpetrator noun.
struct TokenSpec {
  const char* form;
  const char* lemma;
  Upos upos;
  const char* feats;
  int head;
  const char* deprel;
};

struct RoleSpec {
  const char* name;
  TokenSpan span;
  const char* path;
};

struct InstanceSpec {
  const char* frame;
  TokenSpan trigger;
  std::vector<RoleSpec> roles;
  Construction construction;
  bool is_root;
  bool foregrounding;
};

struct TemplateSpec {
  const char* key;
  std::vector<TokenSpec> tokens;
  std::vector<InstanceSpec> instances;
};

using C = Construction;
using U = Upos;

const std::vector<TemplateSpec>& templates() {
  static const std::vector<TemplateSpec> all = {
      {"killing_active",
       {{"The", "the", U::DET, "", 2, "det"},
        {"{P}", "", U::NOUN, "Number=Sing", 3, "nsubj"},
        {"killed", "kill", U::VERB, kFin, 0, "root"},
        {"the", "the", U::DET, "", 5, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 3, "obj"},
        {".", ".", U::PUNCT, "", 3, "punct"}},
       {{"Killing", {2, 3}, {{"Killer", {0, 2}, "nsubj↓"}, {"Victim", {3, 5}, "obj↓"}}, C::vrb_active, true, false}}},
      {"killing_passive_agent",
       {{"The", "the", U::DET, "", 2, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 4, "nsubj:pass"},
        {"was", "be", U::AUX, kFin, 4, "aux:pass"},
        {"killed", "kill", U::VERB, kPass, 0, "root"},
        {"by", "by", U::ADP, "", 7, "case"},
        {"the", "the", U::DET, "", 7, "det"},
        {"{P}", "", U::NOUN, "Number=Sing", 4, "obl:agent"},
        {".", ".", U::PUNCT, "", 4, "punct"}},
       {{"Killing",
         {3, 4},
         {{"Victim", {0, 2}, "nsubj:pass↓"}, {"Killer", {4, 7}, "obl:agent↓"}},
         C::vrb_passive,
         true,
         true}}},
      {"killing_passive",
       {{"The", "the", U::DET, "", 2, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 4, "nsubj:pass"},
        {"was", "be", U::AUX, kFin, 4, "aux:pass"},
        {"killed", "kill", U::VERB, kPass, 0, "root"},
        {"yesterday", "yesterday", U::ADV, "", 4, "advmod"},
        {".", ".", U::PUNCT, "", 4, "punct"}},
       {{"Killing", {3, 4}, {{"Victim", {0, 2}, "nsubj:pass↓"}}, C::vrb_passive, true, true}}},
      {"killing_passive_embedded",
       {{"Police", "police", U::NOUN, "", 2, "nsubj"},
        {"say", "say", U::VERB, kPres, 0, "root"},
        {"the", "the", U::DET, "", 4, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 6, "nsubj:pass"},
        {"was", "be", U::AUX, kFin, 6, "aux:pass"},
        {"murdered", "murder", U::VERB, kPass, 2, "ccomp"},
        {".", ".", U::PUNCT, "", 2, "punct"}},
       {{"Killing", {5, 6}, {{"Victim", {2, 4}, "nsubj:pass↓"}}, C::vrb_passive, false, true}}},
      {"killing_nominal_subject",
       {{"The", "the", U::DET, "", 2, "det"},
        {"murder", "murder", U::NOUN, "Number=Sing", 6, "nsubj"},
        {"of", "of", U::ADP, "", 5, "case"},
        {"the", "the", U::DET, "", 5, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 2, "nmod"},
        {"shocked", "shock", U::VERB, kFin, 0, "root"},
        {"the", "the", U::DET, "", 8, "det"},
        {"town", "town", U::NOUN, "Number=Sing", 6, "obj"},
        {".", ".", U::PUNCT, "", 6, "punct"}},
       {{"Killing", {1, 2}, {{"Victim", {3, 5}, "nmod↓"}}, C::nonverbal, true, false}}},
      {"killing_nominal_object",
       {{"Police", "police", U::NOUN, "", 2, "nsubj"},
        {"investigate", "investigate", U::VERB, kPres, 0, "root"},
        {"the", "the", U::DET, "", 4, "det"},
        {"murder", "murder", U::NOUN, "Number=Sing", 2, "obj"},
        {"of", "of", U::ADP, "", 7, "case"},
        {"the", "the", U::DET, "", 7, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 4, "nmod"},
        {".", ".", U::PUNCT, "", 2, "punct"}},
       {{"Killing", {3, 4}, {{"Victim", {5, 7}, "nmod↓"}}, C::nonverbal, false, false}}},
      {"killing_agent_noun",
       {{"The", "the", U::DET, "", 2, "det"},
        {"killer", "killer", U::NOUN, "Number=Sing", 6, "nsubj"},
        {"of", "of", U::ADP, "", 5, "case"},
        {"the", "the", U::DET, "", 5, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 2, "nmod"},
        {"fled", "flee", U::VERB, kFin, 0, "root"},
        {".", ".", U::PUNCT, "", 6, "punct"}},
       {{"Killing", {1, 2}, {{"Killer", {0, 2}, "*"}, {"Victim", {3, 5}, "nmod↓"}}, C::nonverbal, true, false}}},
      {"killing_infinitive",
       {{"The", "the", U::DET, "", 2, "det"},
        {"{P}", "", U::NOUN, "Number=Sing", 3, "nsubj"},
        {"tried", "try", U::VERB, kFin, 0, "root"},
        {"to", "to", U::PART, "", 5, "mark"},
        {"kill", "kill", U::VERB, kInf, 3, "xcomp"},
        {"the", "the", U::DET, "", 7, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 5, "obj"},
        {".", ".", U::PUNCT, "", 3, "punct"}},
       {{"Killing", {4, 5}, {{"Killer", {0, 2}, "↑--nsubj↓"}, {"Victim", {5, 7}, "obj↓"}}, C::other, false, false}}},
      {"arrest_relative_killing",
       {{"Police", "police", U::NOUN, "", 2, "nsubj"},
        {"arrested", "arrest", U::VERB, kFin, 0, "root"},
        {"the", "the", U::DET, "", 4, "det"},
        {"{P}", "", U::NOUN, "Number=Sing", 2, "obj"},
        {"who", "who", U::PRON, "PronType=Rel", 6, "nsubj"},
        {"killed", "kill", U::VERB, kFin, 4, "acl:relcl"},
        {"the", "the", U::DET, "", 8, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 6, "obj"},
        {".", ".", U::PUNCT, "", 2, "punct"}},
       {{"Arrest", {1, 2}, {{"Authorities", {0, 1}, "nsubj↓"}, {"Suspect", {2, 4}, "obj↓"}}, C::vrb_active, true, false},
        {"Killing", {5, 6}, {{"Killer", {2, 4}, "↑"}, {"Victim", {6, 8}, "obj↓"}}, C::vrb_active, false, false}}},
      {"death_unaccusative",
       {{"The", "the", U::DET, "", 2, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 3, "nsubj"},
        {"died", "die", U::VERB, kFin, 0, "root"},
        {"yesterday", "yesterday", U::ADV, "", 3, "advmod"},
        {".", ".", U::PUNCT, "", 3, "punct"}},
       {{"Death", {2, 3}, {{"Protagonist", {0, 2}, "nsubj↓"}}, C::vrb_unaccusative, true, true}}},
      {"death_unaccusative_embedded",
       {{"Police", "police", U::NOUN, "", 2, "nsubj"},
        {"said", "say", U::VERB, kFin, 0, "root"},
        {"the", "the", U::DET, "", 4, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 5, "nsubj"},
        {"died", "die", U::VERB, kFin, 2, "ccomp"},
        {".", ".", U::PUNCT, "", 2, "punct"}},
       {{"Death", {4, 5}, {{"Protagonist", {2, 4}, "nsubj↓"}}, C::vrb_unaccusative, false, true}}},
      {"death_deceased",
       {{"The", "the", U::DET, "", 2, "det"},
        {"deceased", "deceased", U::NOUN, "Number=Sing", 4, "nsubj:pass"},
        {"was", "be", U::AUX, kFin, 4, "aux:pass"},
        {"identified", "identify", U::VERB, kPass, 0, "root"},
        {".", ".", U::PUNCT, "", 4, "punct"}},
       {{"Death", {1, 2}, {{"Protagonist", {0, 2}, "*"}}, C::nonverbal, true, true}}},
      {"death_nominal_subject",
       {{"The", "the", U::DET, "", 2, "det"},
        {"death", "death", U::NOUN, "Number=Sing", 6, "nsubj"},
        {"of", "of", U::ADP, "", 5, "case"},
        {"the", "the", U::DET, "", 5, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 2, "nmod"},
        {"shocked", "shock", U::VERB, kFin, 0, "root"},
        {"the", "the", U::DET, "", 8, "det"},
        {"city", "city", U::NOUN, "Number=Sing", 6, "obj"},
        {".", ".", U::PUNCT, "", 6, "punct"}},
       {{"Death", {1, 2}, {{"Protagonist", {3, 5}, "nmod↓"}}, C::nonverbal, true, false}}},
      {"death_nominal_object",
       {{"Neighbours", "neighbour", U::NOUN, "Number=Plur", 2, "nsubj"},
        {"mourned", "mourn", U::VERB, kFin, 0, "root"},
        {"the", "the", U::DET, "", 4, "det"},
        {"death", "death", U::NOUN, "Number=Sing", 2, "obj"},
        {"of", "of", U::ADP, "", 7, "case"},
        {"the", "the", U::DET, "", 7, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 4, "nmod"},
        {".", ".", U::PUNCT, "", 2, "punct"}},
       {{"Death", {3, 4}, {{"Protagonist", {5, 7}, "nmod↓"}}, C::nonverbal, false, false}}},
      {"event_impersonal",
       {{"The", "the", U::DET, "", 2, "det"},
        {"tragedy", "tragedy", U::NOUN, "Number=Sing", 3, "nsubj"},
        {"happened", "happen", U::VERB, kFin, 0, "root"},
        {"on", "on", U::ADP, "", 5, "case"},
        {"Sunday", "Sunday", U::PROPN, "", 3, "obl"},
        {".", ".", U::PUNCT, "", 3, "punct"}},
       {{"Event", {2, 3}, {{"Event", {0, 2}, "nsubj↓"}, {"Time", {3, 5}, "obl↓"}}, C::vrb_impersonal, true, false},
        {"Catastrophe", {1, 2}, {{"Undesirable_event", {0, 2}, "*"}}, C::nonverbal, true, false}}},
      {"catastrophe_object",
       {{"Neighbours", "neighbour", U::NOUN, "Number=Plur", 2, "nsubj"},
        {"described", "describe", U::VERB, kFin, 0, "root"},
        {"the", "the", U::DET, "", 4, "det"},
        {"tragedy", "tragedy", U::NOUN, "Number=Sing", 2, "obj"},
        {".", ".", U::PUNCT, "", 2, "punct"}},
       {{"Catastrophe", {3, 4}, {{"Undesirable_event", {2, 4}, "*"}}, C::nonverbal, false, false}}},
      {"arrest_active",
       {{"Police", "police", U::NOUN, "", 2, "nsubj"},
        {"arrested", "arrest", U::VERB, kFin, 0, "root"},
        {"the", "the", U::DET, "", 4, "det"},
        {"{P}", "", U::NOUN, "Number=Sing", 2, "obj"},
        {".", ".", U::PUNCT, "", 2, "punct"}},
       {{"Arrest", {1, 2}, {{"Authorities", {0, 1}, "nsubj↓"}, {"Suspect", {2, 4}, "obj↓"}}, C::vrb_active, true, false}}},
      {"arrest_passive",
       {{"The", "the", U::DET, "", 2, "det"},
        {"{P}", "", U::NOUN, "Number=Sing", 4, "nsubj:pass"},
        {"was", "be", U::AUX, kFin, 4, "aux:pass"},
        {"arrested", "arrest", U::VERB, kPass, 0, "root"},
        {".", ".", U::PUNCT, "", 4, "punct"}},
       {{"Arrest", {3, 4}, {{"Suspect", {0, 2}, "nsubj:pass↓"}}, C::vrb_passive, true, false}}},
      {"dead_copula",
       {{"The", "the", U::DET, "", 2, "det"},
        {"{V}", "", U::NOUN, "Number=Sing", 4, "nsubj"},
        {"was", "be", U::AUX, kFin, 4, "cop"},
        {"dead", "dead", U::ADJ, "", 0, "root"},
        {".", ".", U::PUNCT, "", 4, "punct"}},
       {{"Dead_or_alive", {3, 4}, {{"Protagonist", {0, 2}, "nsubj↓"}}, C::nonverbal, true, true}}},
      {"quarrel_active",
       {{"The", "the", U::DET, "", 2, "det"},
        {"couple", "couple", U::NOUN, "Number=Sing", 3, "nsubj"},
        {"argued", "argue", U::VERB, kFin, 0, "root"},
        {"often", "often", U::ADV, "", 3, "advmod"},
        {".", ".", U::PUNCT, "", 3, "punct"}},
       {{"Quarreling", {2, 3}, {{"Arguers", {0, 2}, "nsubj↓"}}, C::vrb_active, true, false}}},
      {"filler",
       {{"Neighbours", "neighbour", U::NOUN, "Number=Plur", 2, "nsubj"},
        {"spoke", "speak", U::VERB, kFin, 0, "root"},
        {"to", "to", U::ADP, "", 4, "case"},
        {"reporters", "reporter", U::NOUN, "Number=Plur", 2, "obl"},
        {".", ".", U::PUNCT, "", 2, "punct"}},
       {}},
  };
  return all;
}

const std::vector<std::string> kVictims = {"woman", "girl", "mother", "wife", "student"};
const std::vector<std::string> kPerpetrators = {"husband", "partner", "man", "boyfriend", "neighbour"};
const std::vector<std::string> kSources = {"corriere", "gazzetta", "messaggero", "repubblica", "stampa"};
const std::vector<std::pair<std::string, std::string>> kPlaces = {
    {"Roma", "Lazio"}, {"Milano", "Lombardia"}, {"Napoli", "Campania"}, {"Torino", "Piemonte"}, {"Palermo", "Sicilia"}};

std::vector<std::size_t> templates_where(const std::string& frame, std::optional<bool> foregrounding) {
  std::vector<std::size_t> out;
  const auto& all = templates();
  for (std::size_t t = 0; t < all.size(); ++t) {
    for (const InstanceSpec& inst : all[t].instances) {
      if (inst.frame != frame) continue;
      if (foregrounding && inst.foregrounding != *foregrounding) continue;
      out.push_back(t);
      break;
    }
  }
  return out;
}

// Templates whose instances avoid Killing and Death.
std::vector<std::size_t> other_templates() {
  std::vector<std::size_t> out;
  const auto& all = templates();
  for (std::size_t t = 0; t < all.size(); ++t) {
    if (all[t].instances.empty()) continue;
    const bool planted = std::any_of(all[t].instances.begin(), all[t].instances.end(), [](const InstanceSpec& i) {
      return std::string_view(i.frame) == "Killing" || std::string_view(i.frame) == "Death";
    });
    if (!planted) out.push_back(t);
  }
  return out;
}

class Builder {
 public:
  explicit Builder(Output& out) : out_(out) {}

  void add_sentence(const std::string& doc_id, int sent_no, const TemplateSpec& tpl, SplitMix64& rng) {
    Sentence s;
    s.sent_id = "s" + std::to_string(sent_no);
    const std::string victim = kVictims[rng.below(kVictims.size())];
    const std::string perp = kPerpetrators[rng.below(kPerpetrators.size())];
    for (std::size_t i = 0; i < tpl.tokens.size(); ++i) {
      const TokenSpec& ts = tpl.tokens[i];
      Token t;
      t.index = static_cast<int>(i) + 1;
      t.form = ts.form;
      if (t.form == "{V}") t.form = victim;
      if (t.form == "{P}") t.form = perp;
      t.lemma = *ts.lemma ? ts.lemma : t.form;
      t.upos = ts.upos;
      t.xpos = "";
      t.feats = parse_features(*ts.feats ? ts.feats : "_");
      t.head = ts.head;
      t.deprel = ts.deprel;
      t.deps = "";
      if (i + 2 == tpl.tokens.size() && tpl.tokens.back().upos == Upos::PUNCT) t.misc = "SpaceAfter=No";
      else t.misc.clear();
      s.tokens.push_back(std::move(t));
    }
    s.text = surface_text(s);
    int k = 0;
    for (const InstanceSpec& is : tpl.instances) {
      FrameInstance inst;
      inst.doc_id = doc_id;
      inst.sent_id = s.sent_id;
      inst.instance_id = doc_id + ":" + s.sent_id + ":" + std::to_string(k++);
      inst.frame = is.frame;
      inst.trigger = is.trigger;
      PlantedInstance planted{is.construction, is.is_root, is.foregrounding, {}};
      for (const RoleSpec& r : is.roles) {
        inst.roles.push_back(RoleSpan{r.name, r.span});
        planted.links.push_back(RoleDependencyLink{r.name, r.path, true});
      }
      out_.instances.push_back(std::move(inst));
      out_.planted.push_back(std::move(planted));
    }
    out_.sentences.push_back(ParsedSentence{doc_id, std::move(s)});
  }

 private:
  Output& out_;
};

void tally(Output& out) {
  Truth& t = out.truth;
  t = Truth{};
  t.documents = static_cast<std::int64_t>(out.documents.size());
  t.sentences = static_cast<std::int64_t>(out.sentences.size());
  t.instances = static_cast<std::int64_t>(out.instances.size());
  std::map<std::string, const DocumentMeta*> docs;
  for (const DocumentMeta& d : out.documents) docs[d.doc_id] = &d;
  std::map<std::string, const EventRecord*> events;
  for (const EventRecord& e : out.events) events[e.event_id] = &e;
  for (std::size_t i = 0; i < out.instances.size(); ++i) {
    const FrameInstance& inst = out.instances[i];
    const PlantedInstance& p = out.planted[i];
    ++t.frames[inst.frame];
    auto& row = t.constructions[inst.frame];
    for (Construction c : kAllConstructions) row.try_emplace(c, 0);
    ++row[p.construction];
    for (const RoleDependencyLink& l : p.links) ++t.role_links[inst.frame][l.role][l.path];
    t.foregrounding.try_emplace(inst.frame, 0);
    if (p.foregrounding) ++t.foregrounding[inst.frame];
    t.root_instances.try_emplace(inst.frame, 0);
    if (p.is_root) ++t.root_instances[inst.frame];
    const DocumentMeta& doc = *docs.at(inst.doc_id);
    if (!doc.event_id) {
      ++t.missing_event;
      continue;
    }
    const int lag = doc.pub_date - events.at(*doc.event_id)->event_date;
    if (lag < 0) ++t.negative_lag;
    ++t.instances_by_lag[lag][inst.frame];
  }
}

}  // namespace

json Truth::to_json() const {
  json cons = json::object();
  for (const auto& [frame, row] : constructions) {
    for (const auto& [c, n] : row) cons[frame][std::string(to_string(c))] = n;
  }
  json lags = json::object();
  for (const auto& [lag, counts] : instances_by_lag) lags[std::to_string(lag)] = counts;
  return {{"documents", documents},
          {"sentences", sentences},
          {"instances", instances},
          {"frames", frames},
          {"constructions", cons},
          {"role_links", role_links},
          {"foregrounding", foregrounding},
          {"root_instances", root_instances},
          {"instances_by_lag", lags},
          {"negative_lag", negative_lag},
          {"missing_event", missing_event}};
}

std::size_t template_count() { return templates().size(); }

Output generate(const Config& config) {
  if (config.documents < 1) throw input_error("bad_config", "documents must be >= 1");
  if (config.events < 1) throw input_error("bad_config", "events must be >= 1");
  if (config.killing_foregrounding < 0 || config.killing_foregrounding > config.killing_instances ||
      config.death_foregrounding < 0 || config.death_foregrounding > config.death_instances) {
    throw input_error("bad_config", "foregrounding counts must lie in [0, instances]");
  }
  if (config.other_instances < 0) throw input_error("bad_config", "other_instances must be >= 0");
  if (config.documents_without_event < 0 || config.negative_lag_documents < 0 ||
      config.documents_without_event + config.negative_lag_documents > config.documents) {
    throw input_error("bad_config", "special document counts exceed the number of documents");
  }
  if (config.max_lag_days < 0) throw input_error("bad_config", "max_lag_days must be >= 0");

  SplitMix64 rng(config.seed);
  const auto& all = templates();

  // One entry per sentence to generate. Each primary-frame draw plants one
  // Killing or Death instance; other templates may add further frames.
  std::vector<std::size_t> plan;
  const auto draw = [&](const std::vector<std::size_t>& pool, int n) {
    for (int i = 0; i < n; ++i) plan.push_back(pool[rng.below(pool.size())]);
  };
  draw(templates_where("Killing", true), config.killing_foregrounding);
  draw(templates_where("Killing", false), config.killing_instances - config.killing_foregrounding);
  draw(templates_where("Death", true), config.death_foregrounding);
  draw(templates_where("Death", false), config.death_instances - config.death_foregrounding);
  draw(other_templates(), config.other_instances);
  const std::size_t filler = all.size() - 1;
  while (plan.size() < static_cast<std::size_t>(config.documents)) plan.push_back(filler);
  rng.shuffle(plan);

  // Every document gets at least one sentence.
  std::vector<std::vector<std::size_t>> per_doc(static_cast<std::size_t>(config.documents));
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const std::size_t d = i < per_doc.size() ? i : rng.below(per_doc.size());
    per_doc[d].push_back(plan[i]);
  }

  Output out;
  const Date base = Date::parse("2015-01-01");
  for (int e = 0; e < config.events; ++e) {
    EventRecord ev;
    char id[32];
    std::snprintf(id, sizeof id, "e%03d", e + 1);
    ev.event_id = id;
    ev.event_date = Date::from_days(base.days() + rng.between(0, 3 * 365));
    const auto& place = kPlaces[rng.below(kPlaces.size())];
    ev.attributes = {{"location", place.first}, {"region", place.second}};
    out.events.push_back(std::move(ev));
  }

  std::vector<int> kind(per_doc.size(), 0);  // 0 normal, 1 no event, 2 negative lag
  std::vector<std::size_t> order(per_doc.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  for (int i = 0; i < config.documents_without_event; ++i) kind[order[static_cast<std::size_t>(i)]] = 1;
  for (int i = 0; i < config.negative_lag_documents; ++i) {
    kind[order[static_cast<std::size_t>(config.documents_without_event + i)]] = 2;
  }

  Builder builder(out);
  for (std::size_t d = 0; d < per_doc.size(); ++d) {
    char id[32];
    std::snprintf(id, sizeof id, "d%04zu", d + 1);
    DocumentMeta meta;
    meta.doc_id = id;
    meta.source = kSources[rng.below(kSources.size())];
    meta.title = "Report " + meta.doc_id;
    meta.url = "https://news.example.org/" + meta.source + "/" + meta.doc_id;
    if (kind[d] == 1) {
      meta.pub_date = Date::from_days(base.days() + rng.between(0, 3 * 365));
    } else {
      const EventRecord& ev = out.events[rng.below(out.events.size())];
      meta.event_id = ev.event_id;
      const int lag = kind[d] == 2 ? -rng.between(1, 3) : rng.between(0, config.max_lag_days);
      meta.pub_date = Date::from_days(ev.event_date.days() + lag);
    }
    int sent_no = 0;
    for (std::size_t t : per_doc[d]) builder.add_sentence(meta.doc_id, ++sent_no, all[t], rng);
    out.documents.push_back(std::move(meta));
  }
  tally(out);
  return out;
}

Output template_showcase() {
  Output out;
  SplitMix64 rng(7);
  Builder builder(out);
  const auto& all = templates();
  DocumentMeta meta;
  meta.doc_id = "showcase";
  meta.pub_date = Date::parse("2016-01-01");
  meta.source = "synthetic";
  for (std::size_t t = 0; t < all.size(); ++t) builder.add_sentence(meta.doc_id, static_cast<int>(t) + 1, all[t], rng);
  out.documents.push_back(meta);
  tally(out);
  return out;
}

Corpus Output::build() const {
  std::vector<CorpusDocument> docs;
  std::map<std::string, std::size_t> pos;
  for (const DocumentMeta& m : documents) {
    pos[m.doc_id] = docs.size();
    docs.push_back(CorpusDocument{m, {}, {}});
  }
  for (const ParsedSentence& s : sentences) docs.at(pos.at(s.doc_id)).sentences.push_back(s.sentence);
  for (const FrameInstance& i : instances) docs.at(pos.at(i.doc_id)).instances.push_back(i);
  return Corpus::build(std::move(docs), events);
}

void Output::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  const auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw input_error("write_failed", "cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("corpus.conllu");
    write_conllu(f, sentences);
  }
  {
    auto f = open("frames.jsonl");
    write_frame_annotations(f, instances);
  }
  {
    auto f = open("documents.jsonl");
    write_document_meta(f, documents);
  }
  {
    auto f = open("events.jsonl");
    write_events(f, events);
  }
  {
    auto f = open("manifest.json");
    f << truth.to_json().dump(2) << "\n";
  }
}

}  // namespace perspective::synthetic
