#include "trollrole/walks.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "rng.h"
#include "trollrole/errors.h"

namespace trollrole {
namespace {

class WalkSampler {
 public:
  WalkSampler(const NodeGraph& graph, double p, double q)
      : graph_(graph),
        w_return_(1.0 / p),
        w_outward_(1.0 / q),
        w_max_(std::max({1.0, w_return_, w_outward_})) {}

  // Rejection sampling against the constant envelope w_max_: draws a
  // uniform neighbor and accepts it with probability weight / w_max_.
  template <typename Rng>
  NodeIndex step(std::optional<NodeIndex> previous, NodeIndex current,
                 Rng& rng) const {
    const auto adj = graph_.neighbors(current);
    std::uniform_int_distribution<std::size_t> pick(0, adj.size() - 1);
    if (!previous) return adj[pick(rng)];
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (true) {
      const NodeIndex next = adj[pick(rng)];
      double w;
      if (next == *previous) {
        w = w_return_;
      } else if (graph_.has_edge(next, *previous)) {
        w = 1.0;
      } else {
        w = w_outward_;
      }
      if (unit(rng) * w_max_ < w) return next;
    }
  }

 private:
  const NodeGraph& graph_;
  double w_return_;
  double w_outward_;
  double w_max_;
};

}  // namespace

void WalkConfig::validate() const {
  if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("p must be > 0");
  if (!(q > 0.0) || !std::isfinite(q)) throw ConfigError("q must be > 0");
  if (walk_length < 1) throw ConfigError("walk_length must be >= 1");
  if (walks_per_node < 1) throw ConfigError("walks_per_node must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

void WalkCorpus::append(std::span<const NodeIndex> walk) {
  tokens.insert(tokens.end(), walk.begin(), walk.end());
  offsets.push_back(tokens.size());
}

std::vector<double> transition_weights(const NodeGraph& graph,
                                       std::optional<NodeIndex> previous,
                                       NodeIndex current, double p, double q) {
  std::vector<double> w;
  for (NodeIndex next : graph.neighbors(current)) {
    if (!previous) {
      w.push_back(1.0);
    } else if (next == *previous) {
      w.push_back(1.0 / p);
    } else if (graph.has_edge(next, *previous)) {
      w.push_back(1.0);
    } else {
      w.push_back(1.0 / q);
    }
  }
  return w;
}

WalkCorpus generate_walks(const NodeGraph& graph, const WalkConfig& config) {
  config.validate();
  const std::size_t n = graph.num_nodes();
  const std::size_t total = n * config.walks_per_node;
  WalkSampler sampler(graph, config.p, config.q);

  // Start node of every walk slot.
  std::vector<NodeIndex> starts(total);
  {
    std::vector<NodeIndex> order(n);
    std::iota(order.begin(), order.end(), NodeIndex{0});
    for (std::size_t r = 0; r < config.walks_per_node; ++r) {
      auto rng = internal::keyed_rng({config.seed, 0x5157, r});
      std::shuffle(order.begin(), order.end(), rng);
      std::copy(order.begin(), order.end(), starts.begin() + r * n);
    }
  }

  std::vector<std::vector<NodeIndex>> walks(total);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t slot = begin; slot < end; ++slot) {
      const std::size_t round = slot / std::max<std::size_t>(n, 1);
      const NodeIndex start = starts[slot];
      auto rng = internal::keyed_rng({config.seed, round, start});
      auto& walk = walks[slot];
      walk.reserve(config.walk_length);
      walk.push_back(start);
      std::optional<NodeIndex> prev;
      while (walk.size() < config.walk_length) {
        const NodeIndex cur = walk.back();
        if (graph.degree(cur) == 0) break;
        const NodeIndex next = sampler.step(prev, cur, rng);
        prev = cur;
        walk.push_back(next);
      }
    }
  };

  const std::size_t workers = std::min(config.workers, std::max<std::size_t>(total, 1));
  if (workers <= 1) {
    run(0, total);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(total, b + chunk);
      if (b < e) pool.emplace_back(run, b, e);
    }
  }

  WalkCorpus corpus;
  std::size_t tokens = 0;
  for (const auto& w : walks) tokens += w.size();
  corpus.tokens.reserve(tokens);
  corpus.offsets.reserve(total + 1);
  for (const auto& w : walks) corpus.append(w);
  return corpus;
}

}  // namespace trollrole
