#include "trollrole/ingest.h"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <unordered_set>

#include "json.hpp"
#include "trollrole/csv.h"
#include "trollrole/errors.h"

namespace trollrole {
namespace {

bool is_ascii_word(unsigned char c) {
  return std::isalnum(c) || c == '_';
}

char ascii_lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_lower(c);
  return out;
}

// Decodes the UTF-8 sequence at `pos`. Returns the code point and sets
// `len`; invalid sequences decode as U+FFFD with len 1.
char32_t decode_utf8(std::string_view s, std::size_t pos, std::size_t& len) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  len = 1;
  if (b0 < 0x80) return b0;
  int extra;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    return 0xFFFD;
  }
  if (pos + extra >= s.size()) return 0xFFFD;
  for (int i = 1; i <= extra; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return 0xFFFD;
    cp = (cp << 6) | (b & 0x3F);
  }
  len = static_cast<std::size_t>(extra) + 1;
  return cp;
}

// Non-ASCII code points that may appear inside a hashtag. Punctuation,
// symbol, emoji and formatting blocks terminate the tag.
bool is_hashtag_codepoint(char32_t cp) {
  if (cp < 0x80) return is_ascii_word(static_cast<unsigned char>(cp));
  if (cp == 0xFFFD) return false;
  if (cp <= 0xBF) return false;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE00 && cp <= 0xFE0F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  if (cp >= 0xFFF0 && cp <= 0xFFFF) return false;
  if (cp >= 0x1F000) return false;
  return true;
}

void push_unique(std::vector<std::string>& out, std::string value) {
  if (std::find(out.begin(), out.end(), value) == out.end()) {
    out.push_back(std::move(value));
  }
}

// Shared scanner for '#' and '@' tokens. `sigil` must not follow a word
// character; the body is the longest run accepted by `accept`.
template <typename Accept>
std::vector<std::string> extract_tokens(std::string_view text, char sigil,
                                        Accept accept) {
  std::vector<std::string> out;
  bool prev_word = false;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len;
    const char32_t cp = decode_utf8(text, i, len);
    if (cp == static_cast<char32_t>(sigil) && !prev_word) {
      std::size_t j = i + 1;
      while (j < text.size()) {
        std::size_t l2;
        const char32_t c2 = decode_utf8(text, j, l2);
        if (!accept(c2)) break;
        j += l2;
      }
      if (j > i + 1) {
        push_unique(out, ascii_lower(text.substr(i + 1, j - i - 1)));
        i = j;
        prev_word = true;
        continue;
      }
    }
    prev_word = is_hashtag_codepoint(cp);
    i += len;
  }
  return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (ascii_lower(s[i]) != prefix[i]) return false;
  }
  return true;
}

std::string_view strip_scheme(std::string_view url) {
  if (starts_with_ci(url, "https://")) return url.substr(8);
  if (starts_with_ci(url, "http://")) return url.substr(7);
  return url;
}

// Lookup key for the expansion table: no scheme, lowercase host, no single
// trailing slash.
std::string expansion_key(std::string_view url) {
  std::string_view rest = strip_scheme(url);
  const std::size_t slash = rest.find_first_of("/?#");
  std::string key = ascii_lower(rest.substr(0, slash));
  if (slash != std::string_view::npos) key.append(rest.substr(slash));
  if (key.size() > 1 && key.back() == '/') key.pop_back();
  return key;
}

bool valid_host(std::string_view host) {
  if (host.empty() || host.front() == '.' || host.back() == '.') return false;
  if (host.find('.') == std::string_view::npos) return false;
  if (host.find("..") != std::string_view::npos) return false;
  for (char c : host) {
    const auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || c == '.' || c == '-')) return false;
  }
  return true;
}

std::string normalize_domain(std::string_view raw) {
  std::string_view s = raw;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  auto host = url_host(s);
  if (!host) {
    throw FormatError("invalid media domain '" + std::string(raw) + "'");
  }
  return *host;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

}  // namespace

// ---------------------------------------------------------------------------
// MediaList / ExpansionMap / Diagnostics

MediaList::MediaList(std::vector<MediaRecord> records)
    : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (!by_domain_.emplace(records_[i].domain, i).second) {
      throw FormatError("duplicate media domain '" + records_[i].domain + "'");
    }
  }
}

bool MediaList::contains(std::string_view domain) const {
  return by_domain_.count(std::string(domain)) > 0;
}

std::optional<Bias> MediaList::bias_of(std::string_view domain) const {
  auto it = by_domain_.find(std::string(domain));
  if (it == by_domain_.end()) return std::nullopt;
  return records_[it->second].bias;
}

std::optional<std::string> MediaList::match_host(std::string_view host) const {
  while (true) {
    if (contains(host)) return std::string(host);
    const std::size_t dot = host.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    host.remove_prefix(dot + 1);
    if (host.find('.') == std::string_view::npos) return std::nullopt;
  }
}

void ExpansionMap::add(std::string_view short_url,
                       std::string_view resolved_url) {
  map_[expansion_key(short_url)] = std::string(resolved_url);
}

std::optional<std::string> ExpansionMap::expand(std::string_view url) const {
  std::string current(url);
  std::unordered_set<std::string> seen;
  std::string key = expansion_key(current);
  seen.insert(key);
  while (true) {
    auto it = map_.find(key);
    if (it == map_.end()) return current;
    current = it->second;
    key = expansion_key(current);
    if (!seen.insert(key).second) return std::nullopt;
  }
}

std::size_t Diagnostics::count(const std::string& kind) const {
  auto it = counts_.find(kind);
  return it == counts_.end() ? 0 : it->second;
}

std::size_t Diagnostics::total() const {
  std::size_t n = 0;
  for (const auto& [k, v] : counts_) n += v;
  return n;
}

void Diagnostics::merge(const Diagnostics& other) {
  for (const auto& [k, v] : other.counts_) counts_[k] += v;
}

void Diagnostics::print(std::ostream& out) const {
  for (const auto& [k, v] : counts_) {
    out << "warning: " << k << ": " << v << '\n';
  }
}

// ---------------------------------------------------------------------------
// Token extraction

std::vector<std::string> extract_hashtags(std::string_view text) {
  return extract_tokens(text, '#', is_hashtag_codepoint);
}

std::vector<std::string> extract_mentions(std::string_view text) {
  return extract_tokens(text, '@', [](char32_t cp) {
    return cp < 0x80 && is_ascii_word(static_cast<unsigned char>(cp));
  });
}

std::vector<std::string> extract_urls(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const bool boundary =
        i == 0 || std::isspace(static_cast<unsigned char>(text[i - 1])) ||
        std::string_view("([{<\"'").find(text[i - 1]) != std::string_view::npos;
    if (boundary && (starts_with_ci(text.substr(i), "http://") ||
                     starts_with_ci(text.substr(i), "https://"))) {
      std::size_t j = i;
      while (j < text.size() &&
             !std::isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != '"' && text[j] != '<' && text[j] != '>') {
        ++j;
      }
      std::string_view url = text.substr(i, j - i);
      // Trailing punctuation and the ellipsis of truncated retweets.
      while (!url.empty()) {
        if (url.size() >= 3 && url.substr(url.size() - 3) == "\xE2\x80\xA6") {
          url.remove_suffix(3);
        } else if (std::string_view(".,;:!?)]}'").find(url.back()) !=
                   std::string_view::npos) {
          url.remove_suffix(1);
        } else {
          break;
        }
      }
      out.emplace_back(url);
      i = j;
      continue;
    }
    ++i;
  }
  return out;
}

std::optional<std::string> url_host(std::string_view url) {
  std::string_view rest = strip_scheme(url);
  if (rest.find("://") != std::string_view::npos &&
      rest.find("://") < rest.find_first_of("/?#")) {
    return std::nullopt;  // unsupported scheme
  }
  std::string_view authority = rest.substr(0, rest.find_first_of("/?#"));
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
    authority.remove_prefix(at + 1);
  }
  if (const auto colon = authority.find(':'); colon != std::string_view::npos) {
    authority = authority.substr(0, colon);
  }
  std::string host = ascii_lower(authority);
  if (host.size() > 4 && host.compare(0, 4, "www.") == 0) host.erase(0, 4);
  if (!valid_host(host)) return std::nullopt;
  return host;
}

std::vector<std::string> extract_cited_domains(std::string_view text,
                                               const ExpansionMap& expansion,
                                               const MediaList& media,
                                               Diagnostics* diag) {
  std::vector<std::string> out;
  for (const std::string& url : extract_urls(text)) {
    const auto resolved = expansion.expand(url);
    if (!resolved) {
      if (diag) diag->warn("url_expansion_cycle");
      continue;
    }
    const auto host = url_host(*resolved);
    if (!host) {
      if (diag) diag->warn("url_malformed");
      continue;
    }
    if (auto domain = media.match_host(*host)) push_unique(out, *domain);
  }
  return out;
}

// ---------------------------------------------------------------------------
// File readers

std::vector<TweetRecord> parse_tweets(std::istream& csv,
                                      const ParseOptions& options,
                                      Diagnostics* diag) {
  CsvReader reader(csv);
  std::vector<std::string> row;
  if (!reader.next(row)) {
    throw FormatError("tweet file is empty (expected a header row)");
  }
  const CsvHeader header(row);
  const std::size_t author_col = header.require("author");
  const std::size_t content_col = header.require("content");
  const std::size_t category_col = header.require("account_category");
  const std::size_t needed =
      std::max({author_col, content_col, category_col}) + 1;

  std::vector<TweetRecord> out;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    if (row.size() < needed) {
      if (diag) diag->warn("short_row");
      continue;
    }
    TweetRecord rec;
    std::string author = ascii_lower(trim(row[author_col]));
    if (!author.empty() && author.front() == '@') author.erase(0, 1);
    if (author.empty()) {
      if (diag) diag->warn("empty_author");
      continue;
    }
    rec.role = parse_role(row[category_col]);
    if (options.role_filter &&
        (!rec.role || options.role_filter->count(*rec.role) == 0)) {
      continue;
    }
    rec.author = std::move(author);
    rec.text = std::move(row[content_col]);
    rec.hashtags = extract_hashtags(rec.text);
    rec.mentions = extract_mentions(rec.text);
    if (options.expansion && options.media) {
      rec.cited_domains = extract_cited_domains(rec.text, *options.expansion,
                                                *options.media, diag);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

MediaList parse_media_list(std::istream& csv, Diagnostics* diag) {
  CsvReader reader(csv);
  std::vector<std::string> row;
  if (!reader.next(row)) throw FormatError("media file is empty");
  const CsvHeader header(row);
  const std::size_t domain_col = header.require("domain");
  const std::size_t bias_col = header.require("bias");
  std::vector<MediaRecord> records;
  std::unordered_map<std::string, Bias> seen;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    const std::string where = " (line " + std::to_string(reader.record_line()) + ")";
    if (row.size() <= std::max(domain_col, bias_col)) {
      throw FormatError("short media row" + where);
    }
    MediaRecord rec;
    try {
      rec.domain = normalize_domain(row[domain_col]);
      rec.bias = collapse_bias(trim(row[bias_col]));
    } catch (const FormatError& e) {
      throw FormatError(e.what() + where);
    }
    auto [it, inserted] = seen.emplace(rec.domain, rec.bias);
    if (!inserted) {
      if (it->second != rec.bias) {
        throw FormatError("conflicting bias for duplicate domain '" +
                          rec.domain + "'" + where);
      }
      if (diag) diag->warn("duplicate_media");
      continue;
    }
    records.push_back(std::move(rec));
  }
  return MediaList(std::move(records));
}

ExpansionMap parse_expansion_map(std::istream& csv) {
  CsvReader reader(csv);
  std::vector<std::string> row;
  ExpansionMap map;
  if (!reader.next(row)) return map;
  const CsvHeader header(row);
  const std::size_t short_col = header.require("short_url");
  const std::size_t resolved_col = header.require("resolved_url");
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() <= std::max(short_col, resolved_col)) {
      throw FormatError("short expansion row (line " +
                        std::to_string(reader.record_line()) + ")");
    }
    map.add(trim(row[short_col]), trim(row[resolved_col]));
  }
  return map;
}

// ---------------------------------------------------------------------------
// Citation index

const std::set<std::string>& MediaCitationIndex::citing_users(
    const std::string& domain) const {
  static const std::set<std::string> kEmpty;
  auto it = by_media_.find(domain);
  return it == by_media_.end() ? kEmpty : it->second;
}

MediaCitationIndex build_citation_index(const std::vector<TweetRecord>& tweets,
                                        const MediaList& media) {
  MediaCitationIndex index;
  for (const auto& m : media.records()) index.by_media_[m.domain];
  for (const auto& t : tweets) {
    for (const auto& d : t.cited_domains) {
      auto it = index.by_media_.find(d);
      if (it == index.by_media_.end()) continue;
      it->second.insert(t.author);
      index.by_user_[t.author].insert(d);
    }
  }
  return index;
}

// ---------------------------------------------------------------------------
// Internal formats

void write_corpus(std::ostream& out, const std::vector<TweetRecord>& tweets) {
  for (const auto& t : tweets) {
    nlohmann::json j;
    j["author"] = t.author;
    j["text"] = t.text;
    j["role"] = t.role ? nlohmann::json(std::string(role_name(*t.role)))
                       : nlohmann::json(nullptr);
    j["hashtags"] = t.hashtags;
    j["mentions"] = t.mentions;
    j["cited_domains"] = t.cited_domains;
    out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
        << '\n';
  }
}

std::vector<TweetRecord> read_corpus(std::istream& in) {
  std::vector<TweetRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    try {
      const auto j = nlohmann::json::parse(line);
      TweetRecord t;
      t.author = j.at("author").get<std::string>();
      t.text = j.at("text").get<std::string>();
      if (!j.at("role").is_null()) {
        t.role = parse_role(j.at("role").get<std::string>());
        if (!t.role) throw FormatError("bad role");
      }
      t.hashtags = j.at("hashtags").get<std::vector<std::string>>();
      t.mentions = j.at("mentions").get<std::vector<std::string>>();
      t.cited_domains = j.at("cited_domains").get<std::vector<std::string>>();
      if (t.author.empty()) throw FormatError("empty author");
      out.push_back(std::move(t));
    } catch (const std::exception& e) {
      throw FormatError("corpus line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return out;
}

std::vector<std::string> labelled_authors(
    const std::vector<TweetRecord>& tweets) {
  std::set<std::string> users;
  for (const auto& t : tweets) {
    if (t.role) users.insert(t.author);
  }
  return {users.begin(), users.end()};
}

void write_user_labels(std::ostream& out,
                       const std::vector<TweetRecord>& tweets) {
  std::map<std::string, Role> labels;
  for (const auto& t : tweets) {
    if (t.role) labels.emplace(t.author, *t.role);
  }
  write_csv_row(out, {"handle", "role"});
  for (const auto& [handle, role] : labels) {
    write_csv_row(out, {handle, std::string(role_name(role))});
  }
}

std::map<std::string, Role> read_user_labels(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> row;
  std::map<std::string, Role> out;
  if (!reader.next(row)) return out;
  const CsvHeader header(row);
  const std::size_t handle_col = header.require("handle");
  const std::size_t role_col = header.require("role");
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() <= std::max(handle_col, role_col)) {
      throw FormatError("short label row (line " +
                        std::to_string(reader.record_line()) + ")");
    }
    const auto role = parse_role(row[role_col]);
    if (!role) {
      throw FormatError("unknown role '" + row[role_col] + "' (line " +
                        std::to_string(reader.record_line()) + ")");
    }
    out[ascii_lower(trim(row[handle_col]))] = *role;
  }
  return out;
}

}  // namespace trollrole
