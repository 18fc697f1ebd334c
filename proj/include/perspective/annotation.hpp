#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perspective {

// 0-based, end-exclusive range over sentence token positions.
struct TokenSpan {
  int start = 0;
  int end = 0;

  bool empty() const { return end <= start; }
  bool contains(int position) const { return position >= start && position < end; }
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct RoleSpan {
  std::string name;
  TokenSpan span;
  friend bool operator==(const RoleSpan&, const RoleSpan&) = default;
};

struct FrameInstance {
  std::string instance_id;
  std::string doc_id;
  std::string sent_id;
  std::string frame;
  TokenSpan trigger;
  std::vector<RoleSpan> roles;
  friend bool operator==(const FrameInstance&, const FrameInstance&) = default;
};

enum class Construction {
  nonverbal, vrb_impersonal, vrb_unaccusative, vrb_passive, vrb_active, other
};

inline constexpr Construction kAllConstructions[] = {
    Construction::nonverbal,   Construction::vrb_impersonal,
    Construction::vrb_unaccusative, Construction::vrb_passive,
    Construction::vrb_active,  Construction::other};

std::string_view to_string(Construction c);
std::optional<Construction> parse_construction(std::string_view text);
inline bool is_verbal(Construction c) { return c != Construction::nonverbal; }

struct RoleDependencyLink {
  std::string role;
  std::string path;  // "*", "?" or steps such as "↑--nsubj↓"
  bool resolved = true;

  // "Role:path" as shown in the explorer.
  std::string label() const { return role + ":" + path; }
  friend bool operator==(const RoleDependencyLink&, const RoleDependencyLink&) = default;
};

struct PerspectiveAnnotation {
  std::string instance_id;
  Construction construction = Construction::other;
  std::vector<RoleDependencyLink> role_links;
  bool is_root = false;
  int trigger_head = 0;  // 0-based token position
  friend bool operator==(const PerspectiveAnnotation&, const PerspectiveAnnotation&) = default;
};

// Result slot for one instance; failed instances carry an error message.
struct AnnotationSlot {
  std::optional<PerspectiveAnnotation> annotation;
  std::string error;

  bool ok() const { return annotation.has_value(); }
  friend bool operator==(const AnnotationSlot&, const AnnotationSlot&) = default;
};

}  // namespace perspective
