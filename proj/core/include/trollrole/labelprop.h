#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trollrole/features.h"
#include "trollrole/graph.h"
#include "trollrole/ingest.h"
#include "trollrole/logreg.h"

namespace trollrole {

// Undirected graph over users and media with optional seed labels.
struct SimilarityGraph {
  NodeGraph graph;
  std::vector<std::optional<Role>> seeds;  // indexed by node

  // Returns false when `id` is not a node.
  bool set_seed(const NodeId& id, Role role);
  std::size_t num_seeds() const;
};

// LP1: user-user edge iff the two users share a hashtag in `u2h` or a
// neighbor in `u2m`; user-media edge iff the user cites the medium. Nodes:
// every handle in `users`, plus the media cited by at least one of them.
SimilarityGraph build_lp1_graph(const NodeGraph& u2h, const NodeGraph& u2m,
                                const MediaCitationIndex& index,
                                std::span<const std::string> users);

// LP2: edge iff cosine similarity > tau over all pairs of user and media
// rows. A zero vector has similarity 0 with everything.
SimilarityGraph build_lp2_graph(const FeatureMatrix& users,
                                const FeatureMatrix& media, double tau = 0.55);

// Fraction of possible edges present.
double edge_density(const NodeGraph& graph);

struct PropagationOptions {
  std::size_t max_rounds = 100;
  // Preference among tied modes when a node's current label is not one of
  // them.
  std::array<Role, kNumRoles> tie_order = kAllRoles;
};

struct LabelAssignment {
  std::vector<std::optional<Role>> labels;  // indexed by node
  std::size_t rounds = 0;
  bool converged = false;
  // A period-2 cycle of synchronous updates was detected; the remaining
  // rounds ran as in-place sweeps in node order.
  bool oscillation = false;
};

// Majority-vote propagation with clamped seeds. Each round every non-seed
// node looks at its labelled neighbors (unlabelled ones are ignored) and
// takes their most frequent label; it keeps its current label when that is
// one of the modes, otherwise the first mode in tie_order. Rounds are
// synchronous. Stops when nothing changes or after max_rounds.
LabelAssignment propagate(const SimilarityGraph& graph,
                          const PropagationOptions& options = {});

// Normalized label counts over the labelled neighbors of `node`, or nullopt
// when none is labelled.
std::optional<RolePosterior> neighbor_label_frequencies(
    const SimilarityGraph& graph, const LabelAssignment& assignment,
    NodeIndex node);

// For each id: the mean of its classifier posterior and its neighbor label
// frequencies, or the posterior unchanged when it has no labelled neighbor
// or is not in the graph.
std::vector<RolePosterior> combine_with_classifier(
    const SimilarityGraph& graph, const LabelAssignment& assignment,
    std::span<const NodeId> ids, std::span<const RolePosterior> posteriors);

}  // namespace trollrole
