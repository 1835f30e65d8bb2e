#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trollrole/graph.h"

namespace trollrole {

struct WalkConfig {
  double p = 1.0;  // return parameter
  double q = 1.0;  // in-out parameter
  std::size_t walk_length = 80;
  std::size_t walks_per_node = 10;
  std::uint64_t seed = 1;
  std::size_t workers = 1;

  // Throws ConfigError when any field is out of range.
  void validate() const;
};

// Walks stored back to back. Walk i is tokens[offsets[i], offsets[i+1]).
struct WalkCorpus {
  std::vector<NodeIndex> tokens;
  std::vector<std::size_t> offsets{0};

  std::size_t num_walks() const { return offsets.size() - 1; }
  std::span<const NodeIndex> walk(std::size_t i) const {
    return {tokens.data() + offsets[i], tokens.data() + offsets[i + 1]};
  }
  void append(std::span<const NodeIndex> walk);
};

// Unnormalized second-order transition weights out of `current`, aligned
// with graph.neighbors(current): 1/p back to `previous`, 1 to neighbors of
// `previous`, 1/q elsewhere. Without `previous` every weight is 1.
std::vector<double> transition_weights(const NodeGraph& graph,
                                       std::optional<NodeIndex> previous,
                                       NodeIndex current, double p, double q);

// walks_per_node biased walks from every node. Rounds visit the nodes in a
// seeded shuffled order. Each walk draws from its own generator keyed by
// (seed, round, start node), so the corpus does not depend on `workers`.
// A node without neighbors yields the one-token walk [node].
WalkCorpus generate_walks(const NodeGraph& graph, const WalkConfig& config);

}  // namespace trollrole
