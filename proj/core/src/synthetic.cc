#include "trollrole/synthetic.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "rng.h"
#include "trollrole/csv.h"
#include "trollrole/errors.h"

namespace trollrole {
namespace {

constexpr std::array<const char*, kNumRoles> kCategory = {"LeftTroll", "NewsFeed",
                                                          "RightTroll"};
constexpr std::array<const char*, kNumRoles> kRolePrefix = {"left", "news", "right"};

const std::vector<std::vector<std::string>>& raw_bias_labels() {
  static const std::vector<std::vector<std::string>> labels = {
      {"Extreme-Left", "Left"},
      {"Center-Left", "Center", "Center-Right"},
      {"Right", "Extreme-Right"}};
  return labels;
}

const std::array<const char*, 16> kFiller = {
    "breaking", "today", "news", "people", "vote", "watch", "now", "read",
    "america", "local", "update", "report", "city", "week", "why", "truth"};

// Items of one community with Zipf(1) popularity.
class Pool {
 public:
  void add(std::string item) { items_.push_back(std::move(item)); }
  bool empty() const { return items_.empty(); }

  void finalize() {
    cumulative_.resize(items_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      acc += 1.0 / static_cast<double>(i + 1);
      cumulative_[i] = acc;
    }
  }

  template <typename Rng>
  const std::string& draw(Rng& rng) const {
    std::uniform_real_distribution<double> u(0.0, cumulative_.back());
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u(rng));
    if (it == cumulative_.end()) --it;
    return items_[static_cast<std::size_t>(it - cumulative_.begin())];
  }

 private:
  std::vector<std::string> items_;
  std::vector<double> cumulative_;
};

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticConfig& cfg) {
  if (cfg.users < kNumRoles || cfg.subcommunities < 1 ||
      cfg.hashtags < kNumRoles * cfg.subcommunities ||
      cfg.external_accounts < kNumRoles * cfg.subcommunities ||
      cfg.media < kNumRoles || cfg.tweets_per_user < 1 || cfg.text_dim < 1 ||
      !(cfg.noise >= 0.0 && cfg.noise <= 1.0)) {
    throw ConfigError("synthetic generator configuration out of range");
  }
  const std::size_t groups = kNumRoles * cfg.subcommunities;
  auto group_of = [&](std::size_t role, std::size_t sub) {
    return role * cfg.subcommunities + sub;
  };

  std::vector<Pool> tag_pools(groups), account_pools(groups), troll_pools(groups);
  std::array<Pool, kNumRoles> media_pools;
  for (std::size_t i = 0; i < cfg.hashtags; ++i) {
    const std::size_t g = i % groups;
    tag_pools[g].add("Tag" + std::to_string(g) + "x" + std::to_string(i / groups));
  }
  for (std::size_t i = 0; i < cfg.external_accounts; ++i) {
    const std::size_t g = i % groups;
    account_pools[g].add("acct" + std::to_string(g) + "_" + std::to_string(i / groups));
  }

  SyntheticCorpus out;
  auto rng = internal::keyed_rng({cfg.seed, 0x53594E});

  for (std::size_t i = 0; i < cfg.media; ++i) {
    const std::size_t r = i % kNumRoles;
    const std::string domain =
        kRolePrefix[r] + std::string("-news") + std::to_string(i / kNumRoles) + ".com";
    const auto& labels = raw_bias_labels()[r];
    out.media.push_back({domain, labels[(i / kNumRoles) % labels.size()]});
    media_pools[r].add(domain);
  }

  // Role sizes proportional to the weights; remainder to the largest weights.
  const double wsum = cfg.role_weights[0] + cfg.role_weights[1] + cfg.role_weights[2];
  std::array<std::size_t, kNumRoles> counts{};
  std::size_t assigned = 0;
  for (std::size_t r = 0; r < kNumRoles; ++r) {
    counts[r] = static_cast<std::size_t>(
        std::floor(static_cast<double>(cfg.users) * cfg.role_weights[r] / wsum));
    assigned += counts[r];
  }
  for (std::size_t r = 0; assigned < cfg.users; r = (r + 1) % kNumRoles) {
    ++counts[r];
    ++assigned;
  }
  std::vector<std::size_t> roles;
  for (std::size_t r = 0; r < kNumRoles; ++r) roles.insert(roles.end(), counts[r], r);
  std::shuffle(roles.begin(), roles.end(), rng);

  struct User {
    std::string handle;
    std::size_t role;
    std::size_t group;
  };
  std::vector<User> users;
  std::uniform_int_distribution<std::size_t> pick_sub(0, cfg.subcommunities - 1);
  for (std::size_t i = 0; i < cfg.users; ++i) {
    char handle[32];
    std::snprintf(handle, sizeof(handle), "Troll%04zu", i);
    const std::size_t g = group_of(roles[i], pick_sub(rng));
    users.push_back({handle, roles[i], g});
    troll_pools[g].add(handle);
  }
  for (auto& p : tag_pools) p.finalize();
  for (auto& p : account_pools) p.finalize();
  for (auto& p : troll_pools) p.finalize();
  for (auto& p : media_pools) p.finalize();

  std::bernoulli_distribution is_noise(cfg.noise);
  std::uniform_int_distribution<std::size_t> other_role(1, kNumRoles - 1);
  std::uniform_int_distribution<std::size_t> any_group(0, groups - 1);
  // Community an item is drawn from: the author's own, or a random group of
  // another role.
  auto source_group = [&](std::size_t role, std::size_t group) {
    if (!is_noise(rng)) return group;
    const std::size_t r = (role + other_role(rng)) % kNumRoles;
    return group_of(r, pick_sub(rng));
  };

  std::bernoulli_distribution second_tag(0.5);
  std::bernoulli_distribution first_mention(0.6);
  std::bernoulli_distribution second_mention(0.2);
  std::bernoulli_distribution mention_troll(cfg.mention_troll_probability);
  std::bernoulli_distribution has_url(cfg.url_probability);
  std::bernoulli_distribution short_link(cfg.short_link_probability);
  std::bernoulli_distribution offsite_link(0.1);
  std::uniform_int_distribution<std::size_t> filler(0, kFiller.size() - 1);
  std::size_t link_counter = 0;

  auto make_tweet = [&](const User& u, bool random_pools) {
    std::ostringstream text;
    text << kFiller[filler(rng)] << ' ' << kFiller[filler(rng)];
    auto group = [&] {
      return random_pools ? any_group(rng) : source_group(u.role, u.group);
    };
    const int ntags = 1 + (second_tag(rng) ? 1 : 0);
    for (int t = 0; t < ntags; ++t) text << " #" << tag_pools[group()].draw(rng);
    const int nmentions = (first_mention(rng) ? 1 : 0) + (second_mention(rng) ? 1 : 0);
    for (int m = 0; m < nmentions; ++m) {
      const std::size_t g = group();
      const bool troll = mention_troll(rng) && !troll_pools[g].empty();
      text << " @" << (troll ? troll_pools[g] : account_pools[g]).draw(rng);
    }
    if (has_url(rng)) {
      const std::size_t g = group();
      const std::string& domain = media_pools[g / cfg.subcommunities].draw(rng);
      const std::string target =
          "http://www." + domain + "/story/" + std::to_string(link_counter);
      if (short_link(rng)) {
        const std::string code = "s" + std::to_string(link_counter);
        out.expansions.emplace_back("https://t.co/" + code, target);
        text << " https://t.co/" << code;
      } else {
        text << ' ' << target;
      }
      ++link_counter;
    }
    if (offsite_link(rng)) {
      text << " https://youtube.com/watch?v=" << link_counter++;
    }
    return text.str();
  };

  for (const auto& u : users) {
    for (std::size_t t = 0; t < cfg.tweets_per_user; ++t) {
      out.tweets.push_back({u.handle, make_tweet(u, false), kCategory[u.role]});
    }
    std::string lower = u.handle;
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.user_roles.emplace_back(lower, role_from_index(u.role));
  }
  for (std::size_t i = 0; i < cfg.extra_users; ++i) {
    const User u{"Gamer" + std::to_string(i), 0, 0};
    for (std::size_t t = 0; t < cfg.tweets_per_user; ++t) {
      out.tweets.push_back({u.handle, make_tweet(u, true), "HashtagGamer"});
    }
  }
  std::sort(out.user_roles.begin(), out.user_roles.end());

  // Text vectors.
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(cfg.text_dim));
  std::array<std::vector<double>, kNumRoles> centroids;
  for (auto& c : centroids) {
    c.resize(cfg.text_dim);
    for (double& v : c) v = gauss(rng) * inv_sqrt_d;
  }
  out.text = EmbeddingTable(cfg.text_dim, "text");
  std::vector<float> row(cfg.text_dim);
  for (const auto& [handle, role] : out.user_roles) {
    const auto& c = centroids[role_index(role)];
    for (std::size_t k = 0; k < cfg.text_dim; ++k) {
      row[k] = static_cast<float>(cfg.text_signal * c[k] + gauss(rng) * inv_sqrt_d);
    }
    out.text.add(NodeId::user(handle), row);
  }
  return out;
}

std::string SyntheticCorpus::tweets_csv() const {
  std::ostringstream out;
  write_csv_row(out, {"author", "content", "account_category"});
  for (const auto& t : tweets) write_csv_row(out, {t.author, t.content, t.category});
  return out.str();
}

std::string SyntheticCorpus::media_csv() const {
  std::ostringstream out;
  write_csv_row(out, {"domain", "bias"});
  for (const auto& m : media) write_csv_row(out, {m.domain, m.raw_bias});
  return out.str();
}

std::string SyntheticCorpus::expansion_csv() const {
  std::ostringstream out;
  write_csv_row(out, {"short_url", "resolved_url"});
  for (const auto& [s, r] : expansions) write_csv_row(out, {s, r});
  return out.str();
}

void SyntheticCorpus::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  auto put = [&](const char* name, const std::string& body) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (dir / name).string());
    f << body;
  };
  put("tweets.csv", tweets_csv());
  put("media.csv", media_csv());
  put("expansion.csv", expansion_csv());
  save_embedding_file(dir / "text.vec", text);
}

}  // namespace trollrole
