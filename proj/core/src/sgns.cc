#include "trollrole/sgns.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "rng.h"
#include "trollrole/errors.h"

namespace trollrole {
namespace {

template <typename Real>
Real sigmoid(Real x) {
  if (x >= 0) return Real(1) / (Real(1) + std::exp(-x));
  const Real e = std::exp(x);
  return e / (Real(1) + e);
}

// d loss / d (u . v) for one positive (label 1) or negative (label 0) term.
template <typename Real>
Real term_slope(Real dot, bool positive) {
  return sigmoid(dot) - (positive ? Real(1) : Real(0));
}

template <typename Real>
Real term_loss(Real dot, bool positive) {
  // -log s(x) = log(1 + e^-x), computed without overflow.
  const Real x = positive ? dot : -dot;
  return x > 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

constexpr float kMaxDot = 6.0f;

// Unigram^0.75 sampler over token ids.
class NegativeTable {
 public:
  NegativeTable(const WalkCorpus& corpus, std::size_t vocab) {
    std::vector<double> counts(vocab, 0.0);
    for (NodeIndex t : corpus.tokens) counts[t] += 1.0;
    cumulative_.resize(vocab);
    double acc = 0.0;
    for (std::size_t i = 0; i < vocab; ++i) {
      acc += counts[i] > 0 ? std::pow(counts[i], 0.75) : 0.0;
      cumulative_[i] = acc;
    }
  }

  template <typename Rng>
  NodeIndex sample(Rng& rng) const {
    std::uniform_real_distribution<double> u(0.0, cumulative_.back());
    const double x = u(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    if (it == cumulative_.end()) --it;
    return static_cast<NodeIndex>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

// Plain access for the single-worker path; relaxed atomics when workers
// share the vectors.
template <bool kShared>
struct Access {
  static float load(float* p) {
    if constexpr (kShared) {
      return std::atomic_ref<float>(*p).load(std::memory_order_relaxed);
    } else {
      return *p;
    }
  }
  static void store(float* p, float v) {
    if constexpr (kShared) {
      std::atomic_ref<float>(*p).store(v, std::memory_order_relaxed);
    } else {
      *p = v;
    }
  }
};

template <bool kShared>
class Trainer {
  using A = Access<kShared>;

 public:
  Trainer(SgnsModel& model, const NegativeTable& negatives,
          const SgnsConfig& config, std::size_t total_work)
      : model_(model),
        negatives_(negatives),
        config_(config),
        total_work_(static_cast<double>(std::max<std::size_t>(total_work, 1))) {}

  // Trains on walks [begin, end) for every epoch. `share` scales the local
  // progress into an estimate of global progress.
  void run(const WalkCorpus& corpus, std::size_t begin, std::size_t end,
           std::size_t worker, std::size_t share) {
    auto rng = internal::keyed_rng({config_.seed, 0x5347, worker});
    std::uniform_int_distribution<std::size_t> shrink(0, config_.window - 1);
    std::vector<float> grad(model_.dim);
    std::size_t processed = 0;
    for (std::size_t epoch = 0; epoch < config_.epochs; ++epoch) {
      for (std::size_t w = begin; w < end; ++w) {
        const auto walk = corpus.walk(w);
        for (std::size_t i = 0; i < walk.size(); ++i) {
          const double progress =
              static_cast<double>(processed * share) / total_work_;
          const float lr = static_cast<float>(
              config_.learning_rate * std::max(1e-4, 1.0 - progress));
          ++processed;
          const std::size_t reach = config_.window - shrink(rng);
          const std::size_t lo = i >= reach ? i - reach : 0;
          const std::size_t hi = std::min(walk.size() - 1, i + reach);
          for (std::size_t j = lo; j <= hi; ++j) {
            if (j == i) continue;
            update(walk[i], walk[j], lr, grad, rng);
          }
        }
      }
    }
  }

 private:
  template <typename Rng>
  void update(NodeIndex center, NodeIndex context, float lr,
              std::vector<float>& grad, Rng& rng) {
    const std::size_t d = model_.dim;
    float* in = model_.input.data() + std::size_t{center} * d;
    std::fill(grad.begin(), grad.end(), 0.0f);
    for (std::size_t k = 0; k <= config_.negatives; ++k) {
      NodeIndex target = context;
      if (k > 0) {
        target = negatives_.sample(rng);
        if (target == context) continue;
      }
      float* out = model_.output.data() + std::size_t{target} * d;
      float dot = 0.0f;
      for (std::size_t c = 0; c < d; ++c) dot += A::load(in + c) * A::load(out + c);
      // Saturate like the reference word2vec sigmoid table.
      const float g = -term_slope(std::clamp(dot, -kMaxDot, kMaxDot), k == 0) * lr;
      for (std::size_t c = 0; c < d; ++c) {
        const float o = A::load(out + c);
        grad[c] += g * o;
        A::store(out + c, o + g * A::load(in + c));
      }
    }
    for (std::size_t c = 0; c < d; ++c) A::store(in + c, A::load(in + c) + grad[c]);
  }

  SgnsModel& model_;
  const NegativeTable& negatives_;
  const SgnsConfig& config_;
  double total_work_;
};

}  // namespace

void SgnsConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (negatives < 1) throw ConfigError("negatives must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be > 0");
  }
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

SgnsModel train_sgns(const WalkCorpus& corpus, std::size_t vocab_size,
                     const SgnsConfig& config) {
  config.validate();
  if (corpus.tokens.empty()) throw ConfigError("walk corpus is empty");
  for (NodeIndex t : corpus.tokens) {
    if (t >= vocab_size) throw ConfigError("walk token outside vocabulary");
  }
  SgnsModel model;
  model.vocab = vocab_size;
  model.dim = config.dim;
  model.input.resize(vocab_size * config.dim);
  model.output.assign(vocab_size * config.dim, 0.0f);
  {
    auto rng = internal::keyed_rng({config.seed, 0x494E});
    const float half = 0.5f / static_cast<float>(config.dim);
    std::uniform_real_distribution<float> init(-half, half);
    for (float& v : model.input) v = init(rng);
  }

  const NegativeTable negatives(corpus, vocab_size);
  const std::size_t total_work = corpus.tokens.size() * config.epochs;
  const std::size_t walks = corpus.num_walks();
  const std::size_t workers = std::min(config.workers, walks);
  if (workers <= 1) {
    Trainer<false> trainer(model, negatives, config, total_work);
    trainer.run(corpus, 0, walks, 0, 1);
  } else {
    Trainer<true> trainer(model, negatives, config, total_work);
    std::vector<std::jthread> pool;
    const std::size_t chunk = (walks + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(walks, b + chunk);
      if (b < e) {
        pool.emplace_back([&, b, e, w] {
          trainer.run(corpus, b, e, w, workers);
        });
      }
    }
  }
  for (float v : model.input) {
    if (!std::isfinite(v)) {
      throw TrainingError("skip-gram training diverged; lower the learning rate");
    }
  }
  return model;
}

EmbeddingTable train_sgns(const WalkCorpus& corpus,
                          std::span<const NodeId> vocabulary,
                          const SgnsConfig& config) {
  const SgnsModel model = train_sgns(corpus, vocabulary.size(), config);
  EmbeddingTable table(config.dim);
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    table.add(vocabulary[i], model.input_row(i));
  }
  return table;
}

SgnsGradient sgns_loss_gradient(
    std::span<const double> center, std::span<const double> context,
    const std::vector<std::vector<double>>& negatives) {
  const std::size_t d = center.size();
  SgnsGradient g;
  g.d_center.assign(d, 0.0);
  auto term = [&](std::span<const double> u, bool positive,
                  std::vector<double>& d_u) {
    double dot = 0.0;
    for (std::size_t c = 0; c < d; ++c) dot += u[c] * center[c];
    g.loss += term_loss(dot, positive);
    const double slope = term_slope(dot, positive);
    d_u.assign(d, 0.0);
    for (std::size_t c = 0; c < d; ++c) {
      d_u[c] = slope * center[c];
      g.d_center[c] += slope * u[c];
    }
  };
  term(context, true, g.d_context);
  g.d_negatives.resize(negatives.size());
  for (std::size_t k = 0; k < negatives.size(); ++k) {
    term(negatives[k], false, g.d_negatives[k]);
  }
  return g;
}

EmbeddingTable node2vec(const NodeGraph& graph, const WalkConfig& walks,
                        const SgnsConfig& sgns) {
  if (graph.empty()) throw ConfigError("graph has no nodes");
  const WalkCorpus corpus = generate_walks(graph, walks);
  return train_sgns(corpus, graph.nodes(), sgns);
}

}  // namespace trollrole
