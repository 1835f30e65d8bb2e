#include "trollrole/labelprop.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "trollrole/errors.h"

namespace trollrole {
namespace {

// Next label of `v` given the current labels.
std::optional<Role> vote(const SimilarityGraph& g,
                         const std::vector<std::optional<Role>>& labels,
                         NodeIndex v, const PropagationOptions& options) {
  std::array<std::size_t, kNumRoles> counts{};
  bool any = false;
  for (NodeIndex u : g.graph.neighbors(v)) {
    if (labels[u]) {
      ++counts[role_index(*labels[u])];
      any = true;
    }
  }
  if (!any) return labels[v];
  const std::size_t top = *std::max_element(counts.begin(), counts.end());
  if (labels[v] && counts[role_index(*labels[v])] == top) return labels[v];
  for (Role r : options.tie_order) {
    if (counts[role_index(r)] == top) return r;
  }
  return labels[v];
}

}  // namespace

bool SimilarityGraph::set_seed(const NodeId& id, Role role) {
  const auto idx = graph.index_of(id);
  if (!idx) return false;
  seeds[*idx] = role;
  return true;
}

std::size_t SimilarityGraph::num_seeds() const {
  return static_cast<std::size_t>(
      std::count_if(seeds.begin(), seeds.end(), [](const auto& s) { return s.has_value(); }));
}

SimilarityGraph build_lp1_graph(const NodeGraph& u2h, const NodeGraph& u2m,
                                const MediaCitationIndex& index,
                                std::span<const std::string> users) {
  const std::unordered_set<std::string> user_set(users.begin(), users.end());
  NodeGraph::Builder b;
  for (const auto& u : users) b.add_node(NodeId::user(u));

  // Users adjacent to a common node are two hops apart through it.
  auto add_closure = [&](const NodeGraph& g) {
    std::vector<const NodeId*> members;
    for (NodeIndex w = 0; w < g.num_nodes(); ++w) {
      members.clear();
      for (NodeIndex v : g.neighbors(w)) {
        const NodeId& id = g.node(v);
        if (id.kind == NodeKind::kUser && user_set.count(id.name)) {
          members.push_back(&id);
        }
      }
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          b.add_edge(*members[i], *members[j]);
        }
      }
    }
  };
  add_closure(u2h);
  add_closure(u2m);

  for (const auto& [domain, citing] : index.by_media()) {
    for (const auto& u : citing) {
      if (user_set.count(u)) b.add_edge(NodeId::user(u), NodeId::media(domain));
    }
  }
  SimilarityGraph out{std::move(b).build(), {}};
  out.seeds.assign(out.graph.num_nodes(), std::nullopt);
  return out;
}

SimilarityGraph build_lp2_graph(const FeatureMatrix& users,
                                const FeatureMatrix& media, double tau) {
  if (users.rows() > 0 && media.rows() > 0 && users.cols() != media.cols()) {
    throw ConfigError("user and media features differ in width");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(users.rows() + media.rows());
  const Eigen::Index d =
      static_cast<Eigen::Index>(users.rows() > 0 ? users.cols() : media.cols());
  Eigen::MatrixXd unit(n, d);
  std::vector<NodeId> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (const FeatureMatrix* m : {&users, &media}) {
    for (std::size_t i = 0; i < m->rows(); ++i) {
      const Eigen::Index r = static_cast<Eigen::Index>(ids.size());
      const auto row = m->values.row(static_cast<Eigen::Index>(i));
      const double norm = row.norm();
      unit.row(r) = norm > 0.0 ? Eigen::RowVectorXd(row / norm)
                               : Eigen::RowVectorXd::Zero(d);
      ids.push_back(m->ids[i]);
    }
  }

  NodeGraph::Builder b;
  for (const auto& id : ids) b.add_node(id);
  constexpr Eigen::Index kBlock = 512;
  for (Eigen::Index start = 0; start < n; start += kBlock) {
    const Eigen::Index rows = std::min(kBlock, n - start);
    const Eigen::MatrixXd sim = unit.middleRows(start, rows) * unit.transpose();
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Eigen::Index x = start + i;
      for (Eigen::Index y = x + 1; y < n; ++y) {
        if (sim(i, y) > tau) {
          b.add_edge(ids[static_cast<std::size_t>(x)], ids[static_cast<std::size_t>(y)]);
        }
      }
    }
  }
  SimilarityGraph out{std::move(b).build(), {}};
  out.seeds.assign(out.graph.num_nodes(), std::nullopt);
  return out;
}

double edge_density(const NodeGraph& graph) {
  const double n = static_cast<double>(graph.num_nodes());
  if (n < 2) return 0.0;
  return 2.0 * static_cast<double>(graph.num_edges()) / (n * (n - 1.0));
}

LabelAssignment propagate(const SimilarityGraph& g,
                          const PropagationOptions& options) {
  const std::size_t n = g.graph.num_nodes();
  if (g.seeds.size() != n) throw ConfigError("seed vector does not match graph");
  LabelAssignment out;
  out.labels = g.seeds;
  std::vector<std::optional<Role>> previous;  // state one round back
  std::vector<std::optional<Role>> next;
  bool sweeping = false;
  while (out.rounds < options.max_rounds) {
    ++out.rounds;
    bool changed = false;
    if (sweeping) {
      for (NodeIndex v = 0; v < n; ++v) {
        if (g.seeds[v]) continue;
        const auto label = vote(g, out.labels, v, options);
        if (label != out.labels[v]) {
          out.labels[v] = label;
          changed = true;
        }
      }
      if (!changed) {
        out.converged = true;
        break;
      }
      continue;
    }
    next = out.labels;
    for (NodeIndex v = 0; v < n; ++v) {
      if (g.seeds[v]) continue;
      next[v] = vote(g, out.labels, v, options);
      changed = changed || next[v] != out.labels[v];
    }
    if (!changed) {
      out.converged = true;
      break;
    }
    if (next == previous) {
      out.oscillation = true;
      sweeping = true;
    }
    previous = std::move(out.labels);
    out.labels = std::move(next);
  }
  return out;
}

std::optional<RolePosterior> neighbor_label_frequencies(
    const SimilarityGraph& g, const LabelAssignment& assignment,
    NodeIndex node) {
  RolePosterior f{{0.0, 0.0, 0.0}};
  double total = 0.0;
  for (NodeIndex u : g.graph.neighbors(node)) {
    if (const auto& l = assignment.labels[u]) {
      f.p[role_index(*l)] += 1.0;
      total += 1.0;
    }
  }
  if (total == 0.0) return std::nullopt;
  for (double& v : f.p) v /= total;
  return f;
}

std::vector<RolePosterior> combine_with_classifier(
    const SimilarityGraph& graph, const LabelAssignment& assignment,
    std::span<const NodeId> ids, std::span<const RolePosterior> posteriors) {
  if (ids.size() != posteriors.size()) {
    throw ConfigError("ids and posteriors differ in length");
  }
  std::vector<RolePosterior> out(posteriors.begin(), posteriors.end());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto node = graph.graph.index_of(ids[i]);
    if (!node) continue;
    if (const auto freq = neighbor_label_frequencies(graph, assignment, *node)) {
      const std::array<RolePosterior, 2> pair{posteriors[i], *freq};
      out[i] = ensemble(pair);
    }
  }
  return out;
}

}  // namespace trollrole
