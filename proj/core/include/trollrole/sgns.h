#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trollrole/embedding.h"
#include "trollrole/graph.h"
#include "trollrole/walks.h"

namespace trollrole {

struct SgnsConfig {
  std::size_t dim = 128;
  std::size_t window = 10;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double learning_rate = 0.025;
  std::uint64_t seed = 1;
  // 1 = deterministic. More workers update shared vectors without locks and
  // results vary from run to run.
  std::size_t workers = 1;

  void validate() const;
};

// Input ("node") and output ("context") vectors, vocab x dim, row-major.
struct SgnsModel {
  std::size_t vocab = 0;
  std::size_t dim = 0;
  std::vector<float> input;
  std::vector<float> output;

  std::span<const float> input_row(std::size_t i) const {
    return {input.data() + i * dim, dim};
  }
};

// Trains skip-gram with negative sampling over the walks. Tokens are
// indices in [0, vocab_size). Learning rate decays linearly from
// config.learning_rate to 1e-4 of it; negatives come from the corpus
// unigram distribution raised to 0.75. Input vectors start uniform in
// [-0.5/d, 0.5/d]; output vectors start at zero. Throws TrainingError if
// the vectors blow up (learning rates around 1 and above can).
SgnsModel train_sgns(const WalkCorpus& corpus, std::size_t vocab_size,
                     const SgnsConfig& config);

// Same, returning the input vectors keyed by `vocabulary[token]`.
EmbeddingTable train_sgns(const WalkCorpus& corpus,
                          std::span<const NodeId> vocabulary,
                          const SgnsConfig& config);

// Loss of one (center, context, negatives) example and its gradient:
//   L = -log s(u_o . v_c) - sum_k log s(-u_k . v_c)
struct SgnsGradient {
  double loss = 0.0;
  std::vector<double> d_center;
  std::vector<double> d_context;
  std::vector<std::vector<double>> d_negatives;
};

SgnsGradient sgns_loss_gradient(std::span<const double> center,
                                std::span<const double> context,
                                const std::vector<std::vector<double>>& negatives);

// node2vec: biased walks over `graph`, then SGNS. The table holds every
// graph node; callers restrict it to the ids they export.
EmbeddingTable node2vec(const NodeGraph& graph, const WalkConfig& walks,
                        const SgnsConfig& sgns);

}  // namespace trollrole
