#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "trollrole/embedding.h"
#include "trollrole/role.h"

namespace trollrole {

// Planted-community corpus: each role owns a share of the hashtags, of the
// mentionable accounts and of the media. Every hashtag, mention and link in
// a tweet comes from the author's own community, except that with
// probability `noise` it is drawn from another role's community instead.
struct SyntheticConfig {
  std::size_t users = 300;
  std::size_t hashtags = 200;
  std::size_t media = 60;
  std::size_t external_accounts = 150;
  std::size_t tweets_per_user = 20;
  double noise = 0.10;
  // Relative role sizes in canonical order.
  std::array<double, kNumRoles> role_weights{1.0, 1.0, 1.0};
  // Each role's pools are split further into this many sub-communities.
  std::size_t subcommunities = 1;
  // Authors outside the three roles (category "HashtagGamer") who tweet
  // from random pools.
  std::size_t extra_users = 0;
  double mention_troll_probability = 0.2;
  double url_probability = 0.35;
  double short_link_probability = 0.5;
  // Stand-in for encoder text vectors: role centroid * signal + N(0, 1/d).
  std::size_t text_dim = 768;
  double text_signal = 0.5;
  std::uint64_t seed = 1;
};

struct SyntheticTweet {
  std::string author;
  std::string content;
  std::string category;  // IRA account_category
};

struct SyntheticMedia {
  std::string domain;
  std::string raw_bias;  // seven-way MBFC label
};

struct SyntheticCorpus {
  std::vector<SyntheticTweet> tweets;
  std::vector<SyntheticMedia> media;
  std::vector<std::pair<std::string, std::string>> expansions;
  std::vector<std::pair<std::string, Role>> user_roles;  // target users only
  EmbeddingTable text;  // one row per target user

  std::string tweets_csv() const;
  std::string media_csv() const;
  std::string expansion_csv() const;
  // tweets.csv, media.csv, expansion.csv, text.vec
  void write(const std::filesystem::path& dir) const;
};

SyntheticCorpus generate_synthetic(const SyntheticConfig& config);

}  // namespace trollrole
