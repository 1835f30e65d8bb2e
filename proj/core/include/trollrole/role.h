#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace trollrole {

// Troll roles in canonical order. The numeric value is the class index used
// by every classifier and posterior in the library.
enum class Role : int { kLeft = 0, kNewsFeed = 1, kRight = 2 };

inline constexpr std::size_t kNumRoles = 3;
inline constexpr std::array<Role, kNumRoles> kAllRoles = {
    Role::kLeft, Role::kNewsFeed, Role::kRight};

constexpr std::size_t role_index(Role r) { return static_cast<std::size_t>(r); }
constexpr Role role_from_index(std::size_t i) { return static_cast<Role>(i); }

// "left", "news_feed", "right".
std::string_view role_name(Role r);

// Inverse of role_name. Also accepts the IRA account categories
// ("LeftTroll", "NewsFeed", "RightTroll"), case-insensitively.
std::optional<Role> parse_role(std::string_view s);

// Three-way media bias after collapsing the seven raw MBFC labels.
enum class Bias : int { kLeft = 0, kCenter = 1, kRight = 2 };

inline constexpr std::array<Bias, 3> kAllBiases = {Bias::kLeft, Bias::kCenter,
                                                   Bias::kRight};

// "LEFT", "CENTER", "RIGHT".
std::string_view bias_name(Bias b);
std::optional<Bias> parse_bias(std::string_view s);

// Extreme-Left/Left -> LEFT, Center-Left/Center/Center-Right -> CENTER,
// Extreme-Right/Right -> RIGHT. Matching ignores case, spaces, '-' and '_'.
// Throws FormatError on anything else.
Bias collapse_bias(std::string_view raw_label);

// Media-to-user label mapping: LEFT -> left, CENTER -> news feed,
// RIGHT -> right.
constexpr Role map_bias_to_role(Bias b) {
  switch (b) {
    case Bias::kLeft:
      return Role::kLeft;
    case Bias::kCenter:
      return Role::kNewsFeed;
    case Bias::kRight:
      return Role::kRight;
  }
  return Role::kNewsFeed;
}

constexpr Bias map_role_to_bias(Role r) {
  switch (r) {
    case Role::kLeft:
      return Bias::kLeft;
    case Role::kNewsFeed:
      return Bias::kCenter;
    case Role::kRight:
      return Bias::kRight;
  }
  return Bias::kCenter;
}

}  // namespace trollrole
