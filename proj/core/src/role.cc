#include "trollrole/role.h"

#include <cctype>

#include "trollrole/errors.h"

namespace trollrole {
namespace {

// Lowercase and drop separators so "Center-Left", "center left" and
// "CENTER_LEFT" compare equal.
std::string squash(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '-' || c == '_' || c == ' ' || c == '\t') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string_view role_name(Role r) {
  switch (r) {
    case Role::kLeft:
      return "left";
    case Role::kNewsFeed:
      return "news_feed";
    case Role::kRight:
      return "right";
  }
  return "?";
}

std::optional<Role> parse_role(std::string_view s) {
  const std::string k = squash(s);
  if (k == "left" || k == "lefttroll") return Role::kLeft;
  if (k == "right" || k == "righttroll") return Role::kRight;
  if (k == "newsfeed" || k == "news") return Role::kNewsFeed;
  return std::nullopt;
}

std::string_view bias_name(Bias b) {
  switch (b) {
    case Bias::kLeft:
      return "LEFT";
    case Bias::kCenter:
      return "CENTER";
    case Bias::kRight:
      return "RIGHT";
  }
  return "?";
}

std::optional<Bias> parse_bias(std::string_view s) {
  const std::string k = squash(s);
  if (k == "left") return Bias::kLeft;
  if (k == "center") return Bias::kCenter;
  if (k == "right") return Bias::kRight;
  return std::nullopt;
}

Bias collapse_bias(std::string_view raw_label) {
  const std::string k = squash(raw_label);
  if (k == "extremeleft" || k == "left") return Bias::kLeft;
  if (k == "extremeright" || k == "right") return Bias::kRight;
  if (k == "centerleft" || k == "center" || k == "centerright") {
    return Bias::kCenter;
  }
  throw FormatError("unknown bias label '" + std::string(raw_label) + "'");
}

}  // namespace trollrole
