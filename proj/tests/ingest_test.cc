#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "support/oracles.h"
#include "trollrole/csv.h"
#include "trollrole/errors.h"
#include "trollrole/ingest.h"
#include "trollrole/synthetic.h"

namespace trollrole {
namespace {

using Strings = std::vector<std::string>;

std::vector<TweetRecord> parse(const std::string& csv, const ParseOptions& opts = {},
                               Diagnostics* diag = nullptr) {
  std::istringstream in(csv);
  return parse_tweets(in, opts, diag);
}

MediaList media_of(const std::string& csv) {
  std::istringstream in(csv);
  return parse_media_list(in);
}

TEST(ParseTweets, RoleFromCategory) {
  const auto t = parse(
      "author,content,account_category\n"
      "chirrmorre,\"Exit poll: Wisconsin GOP voters excited, scared about Trump #politics\","
      "RightTroll\n"
      "gamer1,#games all day,HashtagGamer\n");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].author, "chirrmorre");
  EXPECT_EQ(t[0].role, Role::kRight);
  EXPECT_EQ(t[0].hashtags, Strings{"politics"});
  EXPECT_EQ(t[1].role, std::nullopt);
}

TEST(ParseTweets, EmptyStreamWithHeader) {
  EXPECT_TRUE(parse("author,content,account_category\n").empty());
}

TEST(ParseTweets, ExtraColumnsAndOrder) {
  const auto t = parse(
      "external_author_id,account_category,content,Author\n"
      "1,LeftTroll,hi @Bob,AliceX\n");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].author, "alicex");
  EXPECT_EQ(t[0].role, Role::kLeft);
  EXPECT_EQ(t[0].mentions, Strings{"bob"});
}

TEST(ParseTweets, MissingColumnNamed) {
  try {
    parse("author,text,account_category\nx,y,LeftTroll\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("content"), std::string::npos);
  }
}

TEST(ParseTweets, EmptyAuthorSkippedWithWarning) {
  Diagnostics diag;
  const auto t = parse(
      "author,content,account_category\n"
      ",orphan,LeftTroll\n"
      "a,kept,NewsFeed\n",
      {}, &diag);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].role, Role::kNewsFeed);
  EXPECT_EQ(diag.count("empty_author"), 1u);
}

TEST(ParseTweets, RoleFilter) {
  ParseOptions opts;
  opts.role_filter = std::set<Role>{Role::kLeft};
  const auto t = parse(
      "author,content,account_category\n"
      "a,x,LeftTroll\nb,y,RightTroll\nc,z,Commercial\n",
      opts);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].author, "a");
}

TEST(ParseTweets, QuotedMultilineContent) {
  const auto t = parse(
      "author,content,account_category\r\n"
      "a,\"line one #a\nline \"\"two\"\" #b\",LeftTroll\r\n");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].text, "line one #a\nline \"two\" #b");
  EXPECT_EQ(t[0].hashtags, (Strings{"a", "b"}));
}

TEST(ExtractHashtags, Examples) {
  EXPECT_EQ(extract_hashtags(
                "Exit poll: Wisconsin GOP voters excited, scared about Trump #politics"),
            Strings{"politics"});
  EXPECT_TRUE(extract_hashtags("").empty());
  EXPECT_EQ(extract_hashtags("#Vote #vote now"), Strings{"vote"});
  EXPECT_TRUE(extract_hashtags("# alone and a#b").empty());
  EXPECT_EQ(extract_hashtags("(#MAGA), #tcot!"), (Strings{"maga", "tcot"}));
}

TEST(ExtractMentions, Examples) {
  EXPECT_EQ(extract_mentions("@MichaelSkolnik @KatrinaPierson @samesfandiari Trump "
                             "folks need to stop going on CNN."),
            (Strings{"michaelskolnik", "katrinapierson", "samesfandiari"}));
  EXPECT_TRUE(extract_mentions("no mentions here").empty());
  EXPECT_EQ(extract_mentions("@a @A @b"), (Strings{"a", "b"}));
  EXPECT_TRUE(extract_mentions("mail me at x@example.com").empty());
}

std::string random_text(std::mt19937_64& rng) {
  static const std::string alphabet = "aAbBzZ09_ #@#@.,!-:'\n";
  std::uniform_int_distribution<std::size_t> len(0, 40);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s(len(rng), ' ');
  for (char& c : s) c = alphabet[pick(rng)];
  return s;
}

TEST(ExtractTokens, MatchesReferenceTokenizer) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::string text = random_text(rng);
    EXPECT_EQ(extract_hashtags(text), oracle::sigil_tokens(text, '#')) << text;
    EXPECT_EQ(extract_mentions(text), oracle::sigil_tokens(text, '@')) << text;
  }
}

TEST(ExtractTokens, CaseInvariantAndIdempotent) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) {
    const std::string text = random_text(rng);
    std::string upper = text;
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    EXPECT_EQ(extract_hashtags(text), extract_hashtags(upper));
    EXPECT_EQ(extract_mentions(text), extract_mentions(upper));

    const auto tags = extract_hashtags(text);
    std::string joined;
    for (const auto& t : tags) joined += "#" + t + " ";
    EXPECT_EQ(extract_hashtags(joined), tags);
  }
}

TEST(ExtractCitedDomains, ExpansionMapLookup) {
  ExpansionMap map;
  map.add("t.co/uPTneTMNM5", "http://www.foxnews.com/x");
  const MediaList media = media_of("domain,bias\nfoxnews.com,Right\ncnn.com,Left\n");
  EXPECT_EQ(extract_cited_domains("read https://t.co/uPTneTMNM5", map, media),
            Strings{"foxnews.com"});
  EXPECT_TRUE(extract_cited_domains("no links at all", map, media).empty());
  EXPECT_TRUE(
      extract_cited_domains("https://example.org/story", map, media).empty());
}

TEST(ExtractCitedDomains, RecursiveExpansionAndSubdomains) {
  ExpansionMap map;
  map.add("https://t.co/a", "http://bit.ly/b");
  map.add("http://bit.ly/b", "https://edition.CNN.com/2016/x");
  const MediaList media = media_of("domain,bias\ncnn.com,Left\n");
  EXPECT_EQ(extract_cited_domains("https://t.co/a https://t.co/a", map, media),
            Strings{"cnn.com"});
}

TEST(ExtractCitedDomains, CycleAndMalformedWarn) {
  ExpansionMap map;
  map.add("https://t.co/a", "https://t.co/b");
  map.add("https://t.co/b", "https://t.co/a");
  const MediaList media = media_of("domain,bias\ncnn.com,Left\n");
  Diagnostics diag;
  EXPECT_TRUE(
      extract_cited_domains("https://t.co/a and http:// and https://cnn.com", map, media,
                            &diag) == Strings{"cnn.com"});
  EXPECT_EQ(diag.count("url_expansion_cycle"), 1u);
  EXPECT_EQ(diag.count("url_malformed"), 1u);
}

TEST(UrlHost, Normalization) {
  EXPECT_EQ(url_host("https://WWW.FoxNews.com:443/a?b"), "foxnews.com");
  EXPECT_EQ(url_host("http://user@cnn.com"), "cnn.com");
  EXPECT_EQ(url_host("https://"), std::nullopt);
}

TEST(MediaList, NormalizesAndRejectsConflicts) {
  const MediaList m = media_of(
      "domain,bias\nhttps://www.Breitbart.com/,Extreme-Right\nbreitbart.com,Right\n");
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m.records()[0].domain, "breitbart.com");
  EXPECT_EQ(m.bias_of("breitbart.com"), Bias::kRight);
  EXPECT_THROW(media_of("domain,bias\na.com,Left\na.com,Right\n"), FormatError);
  EXPECT_THROW(media_of("domain,bias\na.com,Leftish\n"), FormatError);
}

TEST(CollapseBias, TotalAndSurjective) {
  const Strings raw = {"Extreme-Left", "Left",  "Center-Left",  "Center",
                       "Center-Right", "Right", "Extreme-Right"};
  const std::vector<Bias> expected = {Bias::kLeft,   Bias::kLeft,  Bias::kCenter,
                                      Bias::kCenter, Bias::kCenter, Bias::kRight,
                                      Bias::kRight};
  std::set<Bias> image;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    EXPECT_EQ(collapse_bias(raw[i]), expected[i]) << raw[i];
    image.insert(collapse_bias(raw[i]));
  }
  EXPECT_EQ(image.size(), 3u);
  EXPECT_THROW(collapse_bias("Satire"), FormatError);
}

TEST(CitationIndex, SetSemantics) {
  const MediaList media = media_of("domain,bias\nfoxnews.com,Right\ncnn.com,Left\n");
  ParseOptions opts;
  ExpansionMap map;
  opts.expansion = &map;
  opts.media = &media;
  std::string csv = "author,content,account_category\n";
  for (int i = 0; i < 5; ++i) csv += "u1,http://foxnews.com/" + std::to_string(i) + ",RightTroll\n";
  csv += "u2,https://www.foxnews.com/z,RightTroll\n";
  const auto index = build_citation_index(parse(csv, opts), media);
  EXPECT_EQ(index.citing_users("foxnews.com"), (std::set<std::string>{"u1", "u2"}));
  EXPECT_TRUE(index.citing_users("cnn.com").empty());
  EXPECT_EQ(index.by_media().count("cnn.com"), 1u);
}

TEST(CitationIndex, KeyedOverFullMediaList) {
  std::string csv = "domain,bias\n";
  const std::pair<const char*, int> groups[] = {{"Left", 341}, {"Right", 619}, {"Center", 372}};
  for (const auto& [label, n] : groups) {
    for (int i = 0; i < n; ++i) {
      csv += std::string(label) + std::to_string(i) + ".com," + label + "\n";
    }
  }
  const MediaList media = media_of(csv);
  const auto index = build_citation_index({}, media);
  EXPECT_EQ(index.by_media().size(), 1332u);
}

SyntheticCorpus small_corpus() {
  SyntheticConfig cfg;
  cfg.users = 60;
  cfg.tweets_per_user = 6;
  cfg.extra_users = 5;
  cfg.text_dim = 4;
  return generate_synthetic(cfg);
}

std::vector<TweetRecord> parse_corpus(const SyntheticCorpus& c, MediaList& media,
                                      ExpansionMap& map) {
  std::istringstream m(c.media_csv()), e(c.expansion_csv()), t(c.tweets_csv());
  media = parse_media_list(m);
  map = parse_expansion_map(e);
  ParseOptions opts;
  opts.media = &media;
  opts.expansion = &map;
  return parse_tweets(t, opts);
}

TEST(CitationIndex, MutualInverseAndBoundedByAuthors) {
  MediaList media;
  ExpansionMap map;
  const auto tweets = parse_corpus(small_corpus(), media, map);
  const auto index = build_citation_index(tweets, media);
  std::set<std::string> authors, cited;
  for (const auto& t : tweets) authors.insert(t.author);
  std::size_t forward = 0;
  for (const auto& [m, users] : index.by_media()) {
    for (const auto& u : users) {
      ++forward;
      cited.insert(u);
      EXPECT_EQ(index.by_user().at(u).count(m), 1u);
    }
  }
  std::size_t backward = 0;
  for (const auto& [u, ms] : index.by_user()) backward += ms.size();
  EXPECT_EQ(forward, backward);
  EXPECT_GT(forward, 0u);
  EXPECT_LE(cited.size(), authors.size());
}

TEST(Corpus, RoundTrip) {
  MediaList media;
  ExpansionMap map;
  const auto tweets = parse_corpus(small_corpus(), media, map);
  ASSERT_FALSE(tweets.empty());
  std::stringstream buf;
  buf << "# provenance line\n";
  write_corpus(buf, tweets);
  EXPECT_EQ(read_corpus(buf), tweets);
}

TEST(Corpus, RoundTripOddText) {
  TweetRecord t;
  t.author = "a";
  t.text = "quote \" backslash \\ newline\n tab\t emoji \xF0\x9F\x98\x80";
  t.role = Role::kNewsFeed;
  t.hashtags = {"x"};
  std::stringstream buf;
  write_corpus(buf, {t});
  EXPECT_EQ(read_corpus(buf), std::vector<TweetRecord>{t});
}

TEST(UserLabels, RoundTrip) {
  MediaList media;
  ExpansionMap map;
  const auto tweets = parse_corpus(small_corpus(), media, map);
  std::stringstream buf;
  write_user_labels(buf, tweets);
  const auto labels = read_user_labels(buf);
  EXPECT_EQ(labels.size(), 60u);
  for (const auto& t : tweets) {
    if (t.role) {
      EXPECT_EQ(labels.at(t.author), *t.role);
    }
  }
  EXPECT_EQ(labelled_authors(tweets).size(), 60u);
}

TEST(Csv, SkipsCommentLines) {
  std::istringstream in("# a=1\n# b=2\nx,y\n1,2\n");
  CsvReader r(in);
  std::vector<std::string> f;
  ASSERT_TRUE(r.next(f));
  EXPECT_EQ(f, (Strings{"x", "y"}));
  EXPECT_EQ(r.record_line(), 3u);
  ASSERT_TRUE(r.next(f));
  EXPECT_EQ(f, (Strings{"1", "2"}));
  EXPECT_FALSE(r.next(f));
}

TEST(Csv, UnterminatedQuoteThrows) {
  std::istringstream in("a,\"open\n");
  CsvReader r(in);
  std::vector<std::string> f;
  EXPECT_THROW(r.next(f), FormatError);
}

}  // namespace
}  // namespace trollrole
