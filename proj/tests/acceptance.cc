// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/app.h"
#include "support/oracles.h"
#include "support/pipeline.h"
#include "trollrole/experiments.h"
#include "trollrole/graph.h"
#include "trollrole/ingest.h"
#include "trollrole/labelprop.h"
#include "trollrole/logreg.h"
#include "trollrole/metrics.h"
#include "trollrole/sgns.h"
#include "trollrole/synthetic.h"

using namespace trollrole;
namespace fs = std::filesystem;

namespace {

constexpr double kBaselineTol = 0.05;
constexpr double kGradientRelTol = 1e-4;
constexpr double kPosteriorSumTol = 1e-9;
constexpr double kMetricTol = 1e-9;
constexpr double kSyntheticT1Min = 95.0;
constexpr double kSyntheticT2Min = 85.0;
constexpr double kSyntheticSeconds = 120.0;
constexpr int kAblationWinsMin = 4;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

std::vector<RolePosterior> g_posteriors;  // collected for criterion 3

void collect(const ExperimentResult& r) {
  for (const auto& p : r.predictions) {
    g_posteriors.insert(g_posteriors.end(), p.posteriors.begin(), p.posteriors.end());
  }
}

const MetricsReport& report(const ExperimentResult& r, const std::string& method) {
  for (const auto& m : r.reports) {
    if (m.method == method) return m;
  }
  throw std::runtime_error("no report row " + method);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// --- 1 -------------------------------------------------------------------

Outcome baseline(std::array<std::size_t, kNumRoles> counts, bool use_f1, double expected) {
  const auto t = std::chrono::steady_clock::now();
  const MetricsReport r = majority_baseline(counts);
  const double got = use_f1 ? r.macro_f1 : r.accuracy;
  const double secs = seconds_since(t);
  const bool ok = std::abs(got - expected) <= kBaselineTol && secs < 1.0;
  return {ok, fmt("got %.4f", got) + fmt(" expected %.2f", expected) +
                  fmt(" +/- %.2f", kBaselineTol)};
}

// --- 2 -------------------------------------------------------------------

struct SeedScores {
  double t1 = 0.0;
  double t2 = 0.0;
};

SeedScores synthetic_scores(std::uint64_t seed) {
  SyntheticConfig cfg;
  cfg.seed = seed;
  cfg.text_dim = 8;
  const auto p = fixture::build(cfg, fixture::quick_settings(128, seed));
  ExperimentOptions opts;
  opts.seed = seed;
  const std::vector<FeatureCombination> c = {FeatureCombination::parse("u2h||u2m")};
  const auto t1 = run_t1(p->inputs(), c, opts);
  const auto t2 = run_t2(p->inputs(), c, opts);
  collect(t1);
  collect(t2);
  return {report(t1, "U2H || U2M").accuracy, report(t2, "U2H || U2M").accuracy};
}

Outcome synthetic_headline() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<SeedScores> s;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) s.push_back(synthetic_scores(seed));
  const double secs = seconds_since(start);
  int ordered = 0;
  std::string per_seed;
  for (const auto& x : s) {
    ordered += x.t1 >= x.t2 ? 1 : 0;
    per_seed += fmt(" %.1f", x.t1) + fmt("/%.1f", x.t2);
  }
  const bool ok = s[0].t1 >= kSyntheticT1Min && s[0].t2 >= kSyntheticT2Min && ordered == 5 &&
                  secs < kSyntheticSeconds;
  return {ok, fmt("seed 1 T1 %.2f", s[0].t1) + fmt(" T2 %.2f;", s[0].t2) +
                  " T1/T2 by seed" + per_seed + fmt("; %.1fs", secs)};
}

// --- 3 -------------------------------------------------------------------

double rel_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double scale = std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
  return std::sqrt(diff) / scale;
}

std::vector<double> central_difference(std::vector<double*> params,
                                       const std::function<double()>& f) {
  constexpr double h = 1e-5;
  std::vector<double> out;
  for (double* p : params) {
    const double keep = *p;
    *p = keep + h;
    const double up = f();
    *p = keep - h;
    const double down = f();
    *p = keep;
    out.push_back((up - down) / (2 * h));
  }
  return out;
}

double sgns_worst(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 0.7);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 8, k = 5;
    std::vector<double> c(d), o(d);
    std::vector<std::vector<double>> negs(k, std::vector<double>(d));
    for (double& x : c) x = g(rng);
    for (double& x : o) x = g(rng);
    for (auto& n : negs) {
      for (double& x : n) x = g(rng);
    }
    const SgnsGradient grad = sgns_loss_gradient(c, o, negs);
    auto loss = [&] { return sgns_loss_gradient(c, o, negs).loss; };
    std::vector<double*> params;
    std::vector<double> analytic;
    for (std::size_t i = 0; i < d; ++i) params.push_back(&c[i]);
    analytic.insert(analytic.end(), grad.d_center.begin(), grad.d_center.end());
    for (std::size_t i = 0; i < d; ++i) params.push_back(&o[i]);
    analytic.insert(analytic.end(), grad.d_context.begin(), grad.d_context.end());
    for (std::size_t n = 0; n < k; ++n) {
      for (std::size_t i = 0; i < d; ++i) params.push_back(&negs[n][i]);
      analytic.insert(analytic.end(), grad.d_negatives[n].begin(), grad.d_negatives[n].end());
    }
    worst = std::max(worst, rel_error(analytic, central_difference(params, loss)));
  }
  return worst;
}

std::vector<Role> random_labels(std::size_t n, std::mt19937_64& rng) {
  return oracle::random_roles(n, rng);
}

double logreg_worst(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 25, d = 6;
    Eigen::MatrixXd x(n, d);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
    const std::vector<Role> y = random_labels(n, rng);
    LogRegModel m = LogRegModel::zeros(d, trial % 2 ? 0.3 : 0.0);
    for (Eigen::Index i = 0; i < m.weights.size(); ++i) m.weights.data()[i] = g(rng);
    for (int i = 0; i < 3; ++i) m.bias[i] = g(rng);
    const LogRegGradient grad = logreg_gradient(m, x, y);
    std::vector<double*> params;
    std::vector<double> analytic;
    for (Eigen::Index i = 0; i < m.weights.size(); ++i) {
      params.push_back(m.weights.data() + i);
      analytic.push_back(grad.d_weights.data()[i]);
    }
    for (int i = 0; i < 3; ++i) {
      params.push_back(&m.bias[i]);
      analytic.push_back(grad.d_bias[i]);
    }
    auto loss = [&] { return logreg_objective(m, x, y); };
    worst = std::max(worst, rel_error(analytic, central_difference(params, loss)));
  }
  return worst;
}

Outcome numerical_checks() {
  std::mt19937_64 rng(3);
  const double sgns = sgns_worst(rng);
  const double lr = logreg_worst(rng);

  std::normal_distribution<double> g(0.0, 3.0);
  std::vector<RolePosterior> posteriors = g_posteriors;
  std::size_t loss_steps = 0, loss_increases = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 60, d = 4;
    Eigen::MatrixXd x(n, d);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
    const std::vector<Role> y = random_labels(n, rng);
    LogRegOptions opts;
    opts.l2 = trial % 3 == 0 ? 0.0 : 0.1 * trial;
    opts.max_iterations = 300;
    const LogRegFit fit = train_logreg(x, y, opts);
    for (std::size_t i = 1; i < fit.loss_history.size(); ++i) {
      ++loss_steps;
      if (fit.loss_history[i] > fit.loss_history[i - 1]) ++loss_increases;
    }
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      posteriors.push_back(predict_proba(fit.model, x.row(i).transpose()));
    }
    const std::array<RolePosterior, 2> pair{posteriors[posteriors.size() - 1],
                                            posteriors[posteriors.size() - 2]};
    posteriors.push_back(ensemble(pair));
  }
  double worst_sum = 0.0;
  for (const auto& p : posteriors) {
    worst_sum = std::max(worst_sum, std::abs(p.p[0] + p.p[1] + p.p[2] - 1.0));
  }
  const bool ok = sgns <= kGradientRelTol && lr <= kGradientRelTol &&
                  worst_sum <= kPosteriorSumTol && loss_increases == 0 && loss_steps > 0;
  return {ok, fmt("sgns rel err %.2e", sgns) + fmt(", logreg rel err %.2e", lr) +
                  fmt(" (tol %.0e)", kGradientRelTol) +
                  fmt("; max |sum-1| %.1e", worst_sum) + " over " +
                  std::to_string(posteriors.size()) + " posteriors; " +
                  std::to_string(loss_increases) + " loss increases in " +
                  std::to_string(loss_steps) + " steps"};
}

// --- 4 -------------------------------------------------------------------

Outcome metric_oracle() {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> len(1, 400);
  std::bernoulli_distribution copy(0.6);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = len(rng);
    const auto gold = oracle::random_roles(n, rng);
    auto pred = oracle::random_roles(n, rng);
    for (std::size_t i = 0; i < n; ++i) {
      if (copy(rng)) pred[i] = gold[i];
    }
    const auto o = oracle::score(gold, pred);
    worst = std::max({worst, std::abs(accuracy(gold, pred) - o.accuracy),
                      std::abs(macro_f1(gold, pred) - o.macro_f1)});
  }
  return {worst <= kMetricTol, fmt("100 vectors, max deviation %.1e", worst)};
}

oracle::EdgeSet edges_of(const NodeGraph& g) {
  oracle::EdgeSet out;
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    for (NodeIndex u : g.neighbors(v)) {
      if (v < u) {
        std::string a = g.node(v).str(), b = g.node(u).str();
        if (b < a) std::swap(a, b);
        out.emplace(a, b);
      }
    }
  }
  return out;
}

Outcome lp1_oracle() {
  std::size_t checked = 0, edges = 0;
  for (std::size_t users : {30u, 120u, 200u}) {
    SyntheticConfig cfg;
    cfg.users = users;
    cfg.extra_users = 10;
    cfg.tweets_per_user = 6;
    cfg.text_dim = 1;
    cfg.seed = users;
    const SyntheticCorpus c = generate_synthetic(cfg);
    std::istringstream m(c.media_csv()), e(c.expansion_csv()), t(c.tweets_csv());
    const MediaList media = parse_media_list(m);
    const ExpansionMap expansion = parse_expansion_map(e);
    ParseOptions opts;
    opts.media = &media;
    opts.expansion = &expansion;
    const auto tweets = parse_tweets(t, opts);
    const auto index = build_citation_index(tweets, media);
    const auto targets = labelled_authors(tweets);
    const auto g = build_lp1_graph(build_u2h(tweets), build_u2m(tweets), index, targets);
    const auto got = edges_of(g.graph);
    if (got != oracle::lp1_edges(tweets, index, targets)) {
      return {false, "edge sets differ at " + std::to_string(users) + " users"};
    }
    ++checked;
    edges += got.size();
  }
  return {true, std::to_string(checked) + " corpora up to 200 users, " +
                    std::to_string(edges) + " edges identical"};
}

Outcome lp_mode_property() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> role(0, kNumRoles - 1);
  std::size_t graphs = 0, oscillations = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const int n = size(rng);
    const double density = u(rng), seed_rate = u(rng) * 0.6;
    NodeGraph::Builder b;
    std::vector<NodeId> ids;
    for (int i = 0; i < n; ++i) {
      ids.push_back(NodeId::user("n" + std::to_string(i)));
      b.add_node(ids.back());
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (u(rng) < density) b.add_edge(ids[i], ids[j]);
      }
    }
    SimilarityGraph g{std::move(b).build(), {}};
    g.seeds.assign(g.graph.num_nodes(), std::nullopt);
    for (const auto& id : ids) {
      if (u(rng) < seed_rate) g.set_seed(id, role_from_index(role(rng)));
    }
    const LabelAssignment a = propagate(g);
    ++graphs;
    oscillations += a.oscillation ? 1 : 0;
    if (!a.converged) return {false, "no fixed point on trial " + std::to_string(trial)};
    for (NodeIndex v = 0; v < g.graph.num_nodes(); ++v) {
      if (g.seeds[v] || !a.labels[v]) continue;
      std::array<std::size_t, kNumRoles> counts{};
      for (NodeIndex w : g.graph.neighbors(v)) {
        if (a.labels[w]) ++counts[role_index(*a.labels[w])];
      }
      const std::size_t top = *std::max_element(counts.begin(), counts.end());
      if (top == 0 || counts[role_index(*a.labels[v])] != top) {
        return {false, "node off-mode on trial " + std::to_string(trial)};
      }
    }
  }
  return {true, std::to_string(graphs) + " graphs of <= 8 nodes (" +
                    std::to_string(oscillations) + " oscillating)"};
}

// --- 5 -------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  if (code != 0) std::cerr << "trollrole " << args[0] << ": " << err.str();
  return code;
}

const std::vector<std::string> kCompared = {
    "u2h.vec", "u2m.vec", "report_t1.txt", "report_t1.csv", "report_t2.txt", "report_t2.csv"};

// Runs the command-line pipeline in `dir` and returns the compared files.
std::vector<std::string> cli_pipeline(const fs::path& dir) {
  fs::remove_all(dir);
  const std::string d = dir.string();
  const std::string features = "u2h,u2h||u2m,u2h||u2m||text,u2h(+)u2m,u2h||u2m+lp1,u2h||u2m+lp2";
  const bool ok =
      cli({"synth", "--out-dir", d, "--seed", "7"}) == 0 &&
      cli({"ingest", "--out-dir", d, "--tweets", d + "/tweets.csv", "--media",
           d + "/media.csv", "--expansion", d + "/expansion.csv"}) == 0 &&
      cli({"embed", "--out-dir", d, "--deterministic", "--workers", "4", "--seed", "7"}) == 0 &&
      cli({"run-t1", "--out-dir", d, "--deterministic", "--seed", "7", "--text-embeddings",
           d + "/text.vec", "--features", features}) == 0 &&
      cli({"run-t2", "--out-dir", d, "--deterministic", "--seed", "7", "--text-embeddings",
           d + "/text.vec", "--features", features}) == 0;
  if (!ok) return {};
  std::vector<std::string> out;
  for (const auto& f : kCompared) out.push_back(slurp(dir / f));
  return out;
}

Outcome determinism() {
  const fs::path dir = oracle::temp_dir("acceptance_determinism") / "run";
  const auto first = cli_pipeline(dir);
  const auto second = cli_pipeline(dir);
  if (first.empty() || second.empty()) return {false, "pipeline failed"};
  std::string differing;
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < kCompared.size(); ++i) {
    bytes += first[i].size();
    if (first[i].empty() || first[i] != second[i]) differing += " " + kCompared[i];
  }
  if (!differing.empty()) return {false, "differs:" + differing};
  return {true, std::to_string(kCompared.size()) + " files, " + std::to_string(bytes) +
                    " bytes identical across two runs"};
}

// --- 6 -------------------------------------------------------------------

double ablation_accuracy(std::uint64_t seed, std::size_t dim) {
  SyntheticConfig cfg;
  cfg.seed = seed;
  cfg.subcommunities = 3;
  cfg.text_dim = 8;
  const auto p = fixture::build(cfg, fixture::quick_settings(dim, seed));
  ExperimentOptions opts;
  opts.seed = seed;
  const std::vector<FeatureCombination> c = {FeatureCombination::parse("u2h||u2m")};
  return report(run_t1(p->inputs(), c, opts), "U2H || U2M").accuracy;
}

Outcome ablation() {
  int wins = 0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const double small = ablation_accuracy(seed, 16);
    const double large = ablation_accuracy(seed, 128);
    wins += small < large ? 1 : 0;
    per_seed += fmt(" %.1f", small) + fmt("/%.1f", large);
  }
  return {wins >= kAblationWinsMin, std::to_string(wins) + "/5 seeds 16-dim < 128-dim (16/128 accuracy)" +
                                        per_seed};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1a", "IRA majority accuracy", [] { return baseline({233, 54, 630}, false, 68.7); }},
      {"1b", "IRA majority macro-F1", [] { return baseline({233, 54, 630}, true, 27.1); }},
      {"1c", "MBFC majority accuracy", [] { return baseline({341, 372, 619}, false, 46.5); }},
      {"1d", "MBFC majority macro-F1", [] { return baseline({341, 372, 619}, true, 21.1); }},
      {"2", "synthetic T1 >= 95, T2 >= 85, T1 >= T2 on 5 seeds, < 2 min", synthetic_headline},
      {"3", "gradients, posterior sums, monotone loss", numerical_checks},
      {"4a", "metrics vs confusion-matrix oracle", metric_oracle},
      {"4b", "LP1 vs pairwise oracle", lp1_oracle},
      {"4c", "propagation mode property", lp_mode_property},
      {"5", "deterministic pipeline byte-identical", determinism},
      {"6", "16-dim below 128-dim in >= 4 of 5 seeds", ablation},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << " " << c.name << ": " << o.detail
              << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
