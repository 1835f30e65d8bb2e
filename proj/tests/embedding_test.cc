#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "support/oracles.h"
#include "trollrole/embedding.h"
#include "trollrole/errors.h"
#include "trollrole/experiments.h"

namespace trollrole {
namespace {

EmbeddingTable parse(const std::string& text) {
  std::istringstream in(text);
  return read_embedding_text(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const FormatError& e) {
    const std::string msg = e.what();
    const auto pos = msg.find("line ");
    if (pos == std::string::npos) return 0;
    return std::stoul(msg.substr(pos + 5));
  }
  return 0;
}

TEST(VectorFile, ParsesSingleRow) {
  const EmbeddingTable t = parse("1 3\nuser:a 1 0 0\n");
  EXPECT_EQ(t.dim(), 3u);
  ASSERT_EQ(t.size(), 1u);
  const auto row = t.find(NodeId::user("a"));
  ASSERT_TRUE(row.has_value());
  EXPECT_EQ((*row)[0], 1.0f);
  EXPECT_EQ((*row)[2], 0.0f);
}

TEST(VectorFile, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("2 3\nuser:a 1 0 0\nuser:b 1 0\n"), 3u);
  EXPECT_EQ(error_line("1 2\nuser:a 1 nan\n"), 2u);
  EXPECT_EQ(error_line("1 2\nuser:a 1 inf\n"), 2u);
  EXPECT_EQ(error_line("1 2\nuser:a 1 x\n"), 2u);
  EXPECT_EQ(error_line("2 1\nuser:a 1\nuser:a 2\n"), 3u);
  EXPECT_EQ(error_line("one two\n"), 1u);
  EXPECT_THROW(parse("3 1\nuser:a 1\n"), FormatError);
  EXPECT_THROW(parse("1 1\nuser:a 1\nuser:b 2\n"), FormatError);
}

TEST(VectorFile, RoundTripIsExact) {
  std::mt19937_64 rng(3);
  std::normal_distribution<float> g(0.0f, 3.0f);
  EmbeddingTable t(5);
  for (int i = 0; i < 50; ++i) {
    std::vector<float> v(5);
    for (float& x : v) x = g(rng);
    t.add(NodeId::user("u" + std::to_string(i)), v);
  }
  t.add(NodeId::tag("maga"), std::vector<float>{1e-30f, -0.0f, 1e30f, 0.1f, 7.0f});
  std::ostringstream out;
  write_embedding_text(out, t);
  const EmbeddingTable back = parse(out.str());
  EXPECT_EQ(back, t);
  std::ostringstream again;
  write_embedding_text(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(VectorFile, LoadsTextWidthFromHeader) {
  const auto dir = oracle::temp_dir("vecload");
  EmbeddingTable t(768);
  t.add(NodeId::user("a"), std::vector<float>(768, 0.25f));
  save_embedding_file(dir / "text.vec", t);
  const EmbeddingTable back = load_embedding_file(dir / "text.vec");
  EXPECT_EQ(back.dim(), 768u);
  EXPECT_EQ(back.name(), "text");
}

TEST(EmbeddingTable, RejectsBadRows) {
  EmbeddingTable t(2);
  EXPECT_THROW(t.add(NodeId::user("a"), std::vector<float>{1.0f}), ConfigError);
  EXPECT_THROW(t.add(NodeId::user("a"), std::vector<float>{1.0f, NAN}), ConfigError);
  t.add(NodeId::user("a"), std::vector<float>{1.0f, 2.0f});
  EXPECT_THROW(t.add(NodeId::user("a"), std::vector<float>{1.0f, 2.0f}), ConfigError);
  EXPECT_THROW(EmbeddingTable(0), ConfigError);
}

TEST(Restrict, Examples) {
  EmbeddingTable t(2);
  t.add(NodeId::user("a"), std::vector<float>{1, 2});
  t.add(NodeId::user("b"), std::vector<float>{3, 4});
  const std::vector<NodeId> want = {NodeId::user("a"), NodeId::user("zz")};
  const RestrictResult r = restrict_table(t, want);
  ASSERT_EQ(r.table.size(), 1u);
  EXPECT_EQ((*r.table.find(NodeId::user("a")))[1], 2.0f);
  EXPECT_EQ(r.missing, std::vector<NodeId>{NodeId::user("zz")});

  const RestrictResult empty = restrict_table(t, std::vector<NodeId>{});
  EXPECT_EQ(empty.table.size(), 0u);
  EXPECT_EQ(empty.table.dim(), 2u);
}

TEST(Restrict, U2mTableToTrollUsers) {
  std::vector<TweetRecord> tweets(3);
  tweets[0].author = "t1";
  tweets[0].role = Role::kLeft;
  tweets[0].mentions = {"cnn", "t2"};
  tweets[1].author = "t2";
  tweets[1].role = Role::kRight;
  tweets[1].mentions = {"foxnews"};
  tweets[2].author = "t3";
  tweets[2].role = Role::kNewsFeed;
  const NodeGraph u2m = build_u2m(tweets);
  WalkConfig w;
  w.walk_length = 5;
  w.walks_per_node = 2;
  SgnsConfig s;
  s.dim = 4;
  s.epochs = 1;
  const EmbeddingTable all = node2vec(u2m, w, s);
  EXPECT_EQ(all.size(), u2m.num_nodes());

  std::vector<NodeId> trolls;
  for (const auto& u : labelled_authors(tweets)) trolls.push_back(NodeId::user(u));
  const RestrictResult r = restrict_table(all, trolls);
  // Oracle: trolls that are graph nodes.
  std::set<NodeId> expected;
  for (const auto& id : trolls) {
    if (u2m.index_of(id)) expected.insert(id);
  }
  EXPECT_EQ(std::set<NodeId>(r.table.ids().begin(), r.table.ids().end()), expected);
  EXPECT_EQ(r.missing, std::vector<NodeId>{NodeId::user("t3")});
}

}  // namespace
}  // namespace trollrole
