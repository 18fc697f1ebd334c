#include "perspective/syntax.hpp"

#include <array>
#include <limits>
#include <queue>

#include "perspective/error.hpp"
#include "perspective/records.hpp"

namespace perspective {

namespace {

constexpr std::array<std::string_view, 6> kConstructionNames = {
    "nonverbal", "vrb_impersonal", "vrb_unaccusative", "vrb_passive", "vrb_active", "other"};

std::string_view base_relation(std::string_view deprel) {
  return deprel.substr(0, deprel.find(':'));
}

bool in_span(TokenSpan span, int position) { return span.contains(position); }

}  // namespace

std::string_view to_string(Construction c) { return kConstructionNames[static_cast<std::size_t>(c)]; }

std::optional<Construction> parse_construction(std::string_view text) {
  for (std::size_t i = 0; i < kConstructionNames.size(); ++i) {
    if (kConstructionNames[i] == text) return static_cast<Construction>(i);
  }
  return std::nullopt;
}

std::string render_path(const std::vector<PathStep>& steps) {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += "--";
    if (steps[i].up) {
      out += kUpArrow;
    } else {
      out += steps[i].deprel;
      out += kDownArrow;
    }
  }
  return out;
}

std::vector<PathStep> parse_path(std::string_view rendered) {
  std::vector<PathStep> steps;
  if (rendered.empty() || rendered == "*" || rendered == "?") {
    throw input_error("bad_path", "not a step path: \"" + std::string(rendered) + "\"");
  }
  while (true) {
    const std::size_t sep = rendered.find("--");
    const std::string_view step = rendered.substr(0, sep);
    if (step == kUpArrow) {
      steps.push_back(PathStep{true, {}});
    } else if (step.size() > kDownArrow.size() && step.ends_with(kDownArrow)) {
      steps.push_back(PathStep{false, std::string(step.substr(0, step.size() - kDownArrow.size()))});
    } else {
      throw input_error("bad_path", "malformed path step \"" + std::string(step) + "\"");
    }
    if (sep == std::string_view::npos) break;
    rendered.remove_prefix(sep + 2);
  }
  return steps;
}

int trigger_head(const Sentence& sentence, TokenSpan trigger) {
  int best = -1;
  int best_depth = std::numeric_limits<int>::max();
  for (int p = trigger.start; p < trigger.end; ++p) {
    const int head = sentence.at(p).head;
    if (head != 0 && in_span(trigger, head - 1)) continue;
    const int d = sentence.depth(p);
    if (d < best_depth) {
      best = p;
      best_depth = d;
    }
  }
  return best;
}

Construction classify_construction(const Sentence& sentence, const FrameInstance& instance,
                                   const FrameKB& kb) {
  const FrameEntry& frame = kb.at(instance.frame);
  const int head = trigger_head(sentence, instance.trigger);
  const Token& t = sentence.at(head);
  if (t.upos != Upos::VERB && t.upos != Upos::AUX) return Construction::nonverbal;
  if (frame.agentivity == Agentivity::no_participant) return Construction::vrb_impersonal;
  if (frame.agentivity == Agentivity::non_active) return Construction::vrb_unaccusative;

  bool passive = t.feature("Voice") == "Pass";
  bool finite = t.feature("VerbForm") == "Fin";
  bool subject = false;
  for (const Token& child : sentence.tokens) {
    if (child.head != t.index) continue;
    if (child.deprel == "aux:pass" || child.deprel == "nsubj:pass") passive = true;
    if (base_relation(child.deprel) == "aux" && child.feature("VerbForm") == "Fin") finite = true;
    if (child.deprel == "nsubj") subject = true;
  }
  if (passive) return Construction::vrb_passive;
  if (finite || subject) return Construction::vrb_active;
  return Construction::other;
}

std::vector<RoleDependencyLink> role_dependency_links(const Sentence& sentence,
                                                      const FrameInstance& instance, int max_steps) {
  if (max_steps < 1) throw input_error("bad_max_steps", "max_steps must be >= 1");
  const int n = sentence.size();
  const int start = trigger_head(sentence, instance.trigger);

  // BFS over the undirected tree; the path to each token is unique.
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::vector<int> prev(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    if (sentence.at(p).head != 0) children[static_cast<std::size_t>(sentence.at(p).head - 1)].push_back(p);
  }
  std::queue<int> queue;
  dist[static_cast<std::size_t>(start)] = 0;
  queue.push(start);
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop();
    const auto visit = [&](int next) {
      if (dist[static_cast<std::size_t>(next)] >= 0) return;
      dist[static_cast<std::size_t>(next)] = dist[static_cast<std::size_t>(cur)] + 1;
      prev[static_cast<std::size_t>(next)] = cur;
      queue.push(next);
    };
    if (sentence.at(cur).head != 0) visit(sentence.at(cur).head - 1);
    for (int c : children[static_cast<std::size_t>(cur)]) visit(c);
  }

  const auto steps_to = [&](int target) {
    std::vector<PathStep> steps;
    for (int cur = target; cur != start; cur = prev[static_cast<std::size_t>(cur)]) {
      const int from = prev[static_cast<std::size_t>(cur)];
      if (sentence.at(from).head == cur + 1) {
        steps.push_back(PathStep{true, {}});
      } else {
        steps.push_back(PathStep{false, sentence.at(cur).deprel});
      }
    }
    return std::vector<PathStep>(steps.rbegin(), steps.rend());
  };

  std::vector<RoleDependencyLink> links;
  links.reserve(instance.roles.size());
  for (const RoleSpan& role : instance.roles) {
    if (in_span(role.span, start)) {
      links.push_back(RoleDependencyLink{role.name, "*", true});
      continue;
    }
    int best_len = std::numeric_limits<int>::max();
    for (int p = role.span.start; p < role.span.end; ++p) best_len = std::min(best_len, dist[static_cast<std::size_t>(p)]);
    if (best_len > max_steps) {
      links.push_back(RoleDependencyLink{role.name, "?", false});
      continue;
    }
    int best_ups = std::numeric_limits<int>::max();
    std::string best_path;
    for (int p = role.span.start; p < role.span.end; ++p) {
      if (dist[static_cast<std::size_t>(p)] != best_len) continue;
      const auto steps = steps_to(p);
      int ups = 0;
      for (const PathStep& s : steps) ups += s.up ? 1 : 0;
      std::string rendered = render_path(steps);
      if (ups < best_ups || (ups == best_ups && rendered < best_path)) {
        best_ups = ups;
        best_path = std::move(rendered);
      }
    }
    links.push_back(RoleDependencyLink{role.name, best_path, true});
  }
  return links;
}

bool root_status(const Sentence& sentence, const FrameInstance& instance, Construction construction) {
  const Token& t = sentence.at(trigger_head(sentence, instance.trigger));
  if (is_verbal(construction)) return t.head == 0;
  if (t.head == 0) return true;
  return (t.deprel == "nsubj" || t.deprel == "nsubj:pass") && sentence.at(t.head - 1).head == 0;
}

PerspectiveAnnotation analyze_instance(const Sentence& sentence, const FrameInstance& instance,
                                       const FrameKB& kb, int max_steps) {
  if (instance.trigger.empty() || instance.trigger.start < 0 || instance.trigger.end > sentence.size()) {
    throw input_error("span_out_of_bounds", "trigger span out of bounds");
  }
  PerspectiveAnnotation a;
  a.instance_id = instance.instance_id;
  a.trigger_head = trigger_head(sentence, instance.trigger);
  a.construction = classify_construction(sentence, instance, kb);
  a.role_links = role_dependency_links(sentence, instance, max_steps);
  a.is_root = root_status(sentence, instance, a.construction);
  return a;
}

namespace kernels {

namespace {

std::vector<AnnotationSlot> analyze_document(const CorpusDocument& doc, const FrameKB& kb, int max_steps) {
  std::vector<AnnotationSlot> slots(doc.instances.size());
  for (std::size_t i = 0; i < doc.instances.size(); ++i) {
    const FrameInstance& inst = doc.instances[i];
    try {
      const Sentence* s = doc.find_sentence(inst.sent_id);
      if (!s) throw input_error("dangling_reference", "sentence " + inst.sent_id + " not found");
      for (const RoleSpan& r : inst.roles) {
        if (r.span.empty() || r.span.start < 0 || r.span.end > s->size()) {
          throw input_error("span_out_of_bounds", "role " + r.name + " span out of bounds");
        }
      }
      slots[i].annotation = analyze_instance(*s, inst, kb, max_steps);
    } catch (const std::exception& e) {
      slots[i].error = inst.instance_id + ": " + e.what();
    }
  }
  return slots;
}

}  // namespace

std::vector<std::vector<AnnotationSlot>> analyze_documents_serial(const Corpus& corpus, const FrameKB& kb,
                                                                  int max_steps) {
  const auto& docs = corpus.documents();
  std::vector<std::vector<AnnotationSlot>> out(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) out[d] = analyze_document(docs[d], kb, max_steps);
  return out;
}

std::vector<std::vector<AnnotationSlot>> analyze_documents_parallel(const Corpus& corpus, const FrameKB& kb,
                                                                    int max_steps) {
  const auto& docs = corpus.documents();
  std::vector<std::vector<AnnotationSlot>> out(docs.size());
  const auto n = static_cast<long>(docs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long d = 0; d < n; ++d) {
    out[static_cast<std::size_t>(d)] = analyze_document(docs[static_cast<std::size_t>(d)], kb, max_steps);
  }
  return out;
}

}  // namespace kernels

Corpus analyze_corpus(const Corpus& corpus, const FrameKB& kb, int max_steps, Execution execution) {
  if (max_steps < 1) throw input_error("bad_max_steps", "max_steps must be >= 1");
  auto slots = execution == Execution::serial ? kernels::analyze_documents_serial(corpus, kb, max_steps)
                                              : kernels::analyze_documents_parallel(corpus, kb, max_steps);
  return corpus.with_annotations(std::move(slots), max_steps);
}

void write_annotation_records(std::ostream& out, const Corpus& corpus) {
  for (std::size_t d = 0; d < corpus.documents().size(); ++d) {
    for (std::size_t i = 0; i < corpus.documents()[d].instances.size(); ++i) {
      out << annotation_record(corpus, InstanceRef{d, i}).dump() << '\n';
    }
  }
}

}  // namespace perspective
