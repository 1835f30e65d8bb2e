#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "trollrole/graph.h"
#include "trollrole/ingest.h"
#include "trollrole/labelprop.h"
#include "trollrole/logreg.h"
#include "trollrole/sgns.h"
#include "trollrole/synthetic.h"
#include "trollrole/walks.h"

namespace {

using namespace trollrole;

std::vector<TweetRecord> synthetic_tweets(std::size_t users) {
  SyntheticConfig cfg;
  cfg.users = users;
  cfg.text_dim = 1;
  const SyntheticCorpus c = generate_synthetic(cfg);
  std::istringstream m(c.media_csv()), e(c.expansion_csv()), t(c.tweets_csv());
  const MediaList media = parse_media_list(m);
  const ExpansionMap expansion = parse_expansion_map(e);
  ParseOptions opts;
  opts.media = &media;
  opts.expansion = &expansion;
  return parse_tweets(t, opts);
}

void BM_ParseTweets(benchmark::State& state) {
  SyntheticConfig cfg;
  cfg.users = static_cast<std::size_t>(state.range(0));
  cfg.text_dim = 1;
  const SyntheticCorpus c = generate_synthetic(cfg);
  const std::string csv = c.tweets_csv();
  for (auto _ : state) {
    std::istringstream in(csv);
    benchmark::DoNotOptimize(parse_tweets(in, {}));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * csv.size()));
}
BENCHMARK(BM_ParseTweets)->Arg(300)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_Walks(benchmark::State& state) {
  const NodeGraph g = build_u2h(synthetic_tweets(300));
  WalkConfig w;
  w.walks_per_node = 2;
  w.p = state.range(0) ? 0.5 : 1.0;
  w.q = state.range(0) ? 2.0 : 1.0;
  std::size_t tokens = 0;
  for (auto _ : state) {
    const WalkCorpus c = generate_walks(g, w);
    tokens += c.tokens.size();
    benchmark::DoNotOptimize(c.tokens.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(tokens));
}
BENCHMARK(BM_Walks)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Sgns(benchmark::State& state) {
  const NodeGraph g = build_u2m(synthetic_tweets(300));
  WalkConfig w;
  w.walk_length = 40;
  w.walks_per_node = 2;
  const WalkCorpus corpus = generate_walks(g, w);
  SgnsConfig s;
  s.dim = static_cast<std::size_t>(state.range(0));
  s.epochs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(train_sgns(corpus, g.num_nodes(), s).input.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * corpus.tokens.size()));
}
BENCHMARK(BM_Sgns)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_TrainLogReg(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const Eigen::Index d = 256;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd x(n, d);
  std::vector<Role> y(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = role_from_index(static_cast<std::size_t>(i % 3));
    for (Eigen::Index k = 0; k < d; ++k) x(i, k) = gauss(rng) + (k % 3 == i % 3 ? 0.3 : 0.0);
  }
  LogRegOptions opts;
  opts.max_iterations = 200;
  for (auto _ : state) benchmark::DoNotOptimize(train_logreg(x, y, opts).iterations);
}
BENCHMARK(BM_TrainLogReg)->Arg(240)->Arg(920)->Unit(benchmark::kMillisecond);

void BM_Lp2Graph(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FeatureMatrix users, media;
  users.values.resize(static_cast<Eigen::Index>(n), 256);
  media.values.resize(60, 256);
  for (FeatureMatrix* m : {&users, &media}) {
    for (Eigen::Index i = 0; i < m->values.size(); ++i) m->values.data()[i] = gauss(rng);
  }
  for (std::size_t i = 0; i < n; ++i) users.ids.push_back(NodeId::user("u" + std::to_string(i)));
  for (std::size_t i = 0; i < 60; ++i) media.ids.push_back(NodeId::media("m" + std::to_string(i)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_lp2_graph(users, media).graph.num_edges());
  }
}
BENCHMARK(BM_Lp2Graph)->Arg(917)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& state) {
  const auto tweets = synthetic_tweets(static_cast<std::size_t>(state.range(0)));
  const NodeGraph u2h = build_u2h(tweets), u2m = build_u2m(tweets);
  MediaList media;
  const auto index = build_citation_index(tweets, media);
  const auto users = labelled_authors(tweets);
  SimilarityGraph g = build_lp1_graph(u2h, u2m, index, users);
  for (std::size_t i = 0; i < users.size(); i += 5) {
    g.set_seed(NodeId::user(users[i]), role_from_index(i % 3));
  }
  for (auto _ : state) benchmark::DoNotOptimize(propagate(g).rounds);
}
BENCHMARK(BM_Propagate)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
