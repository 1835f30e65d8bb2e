#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trollrole/role.h"

namespace trollrole {

struct TweetRecord {
  std::string author;  // lowercase handle, never empty
  std::string text;
  std::optional<Role> role;
  std::vector<std::string> hashtags;       // lowercase, no '#'
  std::vector<std::string> mentions;       // lowercase, no '@'
  std::vector<std::string> cited_domains;  // media-list domains

  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

struct MediaRecord {
  std::string domain;
  Bias bias = Bias::kCenter;
};

// Bias-labelled news media keyed by domain.
class MediaList {
 public:
  MediaList() = default;
  explicit MediaList(std::vector<MediaRecord> records);

  const std::vector<MediaRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool contains(std::string_view domain) const;
  std::optional<Bias> bias_of(std::string_view domain) const;

  // Longest suffix of `host` (on label boundaries) that is a listed domain.
  std::optional<std::string> match_host(std::string_view host) const;

 private:
  std::vector<MediaRecord> records_;
  std::unordered_map<std::string, std::size_t> by_domain_;
};

// Offline short-URL -> resolved-URL table. Keys and lookups are normalized:
// scheme dropped and host lowercased; paths stay case-sensitive.
class ExpansionMap {
 public:
  void add(std::string_view short_url, std::string_view resolved_url);
  std::size_t size() const { return map_.size(); }

  // Follows the table until a URL has no entry. Returns nullopt on a cycle.
  std::optional<std::string> expand(std::string_view url) const;

 private:
  std::unordered_map<std::string, std::string> map_;
};

// Named warning counters. Nothing aborts on a warning; callers print the
// summary on the diagnostic stream.
class Diagnostics {
 public:
  void warn(const std::string& kind, std::size_t n = 1) { counts_[kind] += n; }
  std::size_t count(const std::string& kind) const;
  std::size_t total() const;
  const std::map<std::string, std::size_t>& counts() const { return counts_; }
  void merge(const Diagnostics& other);
  void print(std::ostream& out) const;

 private:
  std::map<std::string, std::size_t> counts_;
};

// '#' + at least one of [A-Za-z0-9_] or a non-ASCII letter-like code point.
// The '#' must not follow a word character. Lowercased, de-duplicated,
// first-occurrence order.
std::vector<std::string> extract_hashtags(std::string_view text);

// '@' + at least one of [A-Za-z0-9_], not preceded by a word character.
// Lowercased, de-duplicated, first-occurrence order.
std::vector<std::string> extract_mentions(std::string_view text);

// Scheme-qualified URLs in `text`.
std::vector<std::string> extract_urls(std::string_view text);

// Host of `url` (lowercased, "www." and port stripped), or nullopt when the
// URL is malformed.
std::optional<std::string> url_host(std::string_view url);

// Expands every URL through `expansion`, reduces it to a listed media domain
// and keeps the domains present in `media` (de-duplicated per tweet).
// Warnings: "url_expansion_cycle", "url_malformed".
std::vector<std::string> extract_cited_domains(std::string_view text,
                                               const ExpansionMap& expansion,
                                               const MediaList& media,
                                               Diagnostics* diag = nullptr);

struct ParseOptions {
  // When set, records whose role is not in the set are dropped (records
  // without a role are dropped too).
  std::optional<std::set<Role>> role_filter;
  // When both are set, cited_domains is filled.
  const ExpansionMap* expansion = nullptr;
  const MediaList* media = nullptr;
};

// Reads the tweet CSV (columns author, content, account_category; others
// ignored). Non-target categories are kept with role = nullopt. Rows with an
// empty author are skipped with warning "empty_author".
std::vector<TweetRecord> parse_tweets(std::istream& csv,
                                      const ParseOptions& options = {},
                                      Diagnostics* diag = nullptr);

// CSV domain,bias with the raw seven-way labels. Domains are normalized
// (lowercase, scheme/"www."/path dropped). Identical duplicates are warned
// ("duplicate_media") and dropped; conflicting duplicates throw.
MediaList parse_media_list(std::istream& csv, Diagnostics* diag = nullptr);

// CSV short_url,resolved_url.
ExpansionMap parse_expansion_map(std::istream& csv);

// Users citing each medium and the reverse relation.
class MediaCitationIndex {
 public:
  const std::map<std::string, std::set<std::string>>& by_media() const {
    return by_media_;
  }
  const std::map<std::string, std::set<std::string>>& by_user() const {
    return by_user_;
  }
  // C_m; empty for uncited or unknown media.
  const std::set<std::string>& citing_users(const std::string& domain) const;

  friend MediaCitationIndex build_citation_index(
      const std::vector<TweetRecord>& tweets, const MediaList& media);

 private:
  std::map<std::string, std::set<std::string>> by_media_;
  std::map<std::string, std::set<std::string>> by_user_;
};

// Every listed medium is a key (possibly with an empty user set). Cited
// domains missing from `media` are ignored.
MediaCitationIndex build_citation_index(const std::vector<TweetRecord>& tweets,
                                        const MediaList& media);

// Internal corpus format: one JSON object per line.
void write_corpus(std::ostream& out, const std::vector<TweetRecord>& tweets);
std::vector<TweetRecord> read_corpus(std::istream& in);

// handle,role CSV over the distinct authors carrying a role.
void write_user_labels(std::ostream& out,
                       const std::vector<TweetRecord>& tweets);
std::map<std::string, Role> read_user_labels(std::istream& in);

// Distinct authors whose role is set, in sorted order.
std::vector<std::string> labelled_authors(
    const std::vector<TweetRecord>& tweets);

}  // namespace trollrole
