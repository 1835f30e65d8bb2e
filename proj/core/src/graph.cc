#include "trollrole/graph.h"

#include <algorithm>

namespace trollrole {
namespace {

std::string_view kind_prefix(NodeKind k) {
  switch (k) {
    case NodeKind::kUser:
      return "user";
    case NodeKind::kTag:
      return "tag";
    case NodeKind::kMedia:
      return "media";
  }
  return "user";
}

}  // namespace

NodeId NodeId::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view prefix = text.substr(0, colon);
    const std::string name(text.substr(colon + 1));
    if (prefix == "user") return user(name);
    if (prefix == "tag") return tag(name);
    if (prefix == "media") return media(name);
  }
  return user(std::string(text));
}

std::string NodeId::str() const {
  std::string out(kind_prefix(kind));
  out.push_back(':');
  out += name;
  return out;
}

std::ostream& operator<<(std::ostream& out, const NodeId& id) {
  return out << kind_prefix(id.kind) << ':' << id.name;
}

void NodeGraph::Builder::add_node(const NodeId& id) { nodes_.push_back(id); }

void NodeGraph::Builder::add_edge(const NodeId& a, const NodeId& b) {
  if (a == b) return;
  nodes_.push_back(a);
  nodes_.push_back(b);
  edges_.emplace_back(a, b);
}

NodeGraph NodeGraph::Builder::build() && {
  NodeGraph g;
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  g.nodes_ = std::move(nodes_);
  g.index_.reserve(g.nodes_.size());
  for (NodeIndex i = 0; i < g.nodes_.size(); ++i) g.index_.emplace(g.nodes_[i], i);

  std::vector<std::pair<NodeIndex, NodeIndex>> arcs;
  arcs.reserve(edges_.size() * 2);
  for (const auto& [a, b] : edges_) {
    const NodeIndex ia = g.index_.at(a);
    const NodeIndex ib = g.index_.at(b);
    arcs.emplace_back(ia, ib);
    arcs.emplace_back(ib, ia);
  }
  edges_.clear();
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  g.offsets_.assign(g.nodes_.size() + 1, 0);
  for (const auto& [from, to] : arcs) ++g.offsets_[from + 1];
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) {
    g.offsets_[i] += g.offsets_[i - 1];
  }
  g.adjacency_.reserve(arcs.size());
  for (const auto& [from, to] : arcs) g.adjacency_.push_back(to);
  g.num_edges_ = arcs.size() / 2;
  return g;
}

std::optional<NodeIndex> NodeGraph::index_of(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool NodeGraph::has_edge(NodeIndex a, NodeIndex b) const {
  if (degree(a) > degree(b)) std::swap(a, b);
  const auto adj = neighbors(a);
  return std::binary_search(adj.begin(), adj.end(), b);
}

bool NodeGraph::is_bipartite_by_kind() const {
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    for (NodeIndex j : neighbors(i)) {
      if (nodes_[i].kind == nodes_[j].kind) return false;
    }
  }
  return true;
}

void NodeGraph::write_edge_list(std::ostream& out) const {
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    for (NodeIndex j : neighbors(i)) {
      if (i < j) out << nodes_[i] << ' ' << nodes_[j] << '\n';
    }
  }
}

NodeGraph build_u2h(const std::vector<TweetRecord>& tweets) {
  NodeGraph::Builder b;
  for (const auto& t : tweets) {
    for (const auto& h : t.hashtags) {
      b.add_edge(NodeId::user(t.author), NodeId::tag(h));
    }
  }
  return std::move(b).build();
}

NodeGraph build_u2m(const std::vector<TweetRecord>& tweets) {
  NodeGraph::Builder b;
  for (const auto& t : tweets) {
    for (const auto& m : t.mentions) {
      b.add_edge(NodeId::user(t.author), NodeId::user(m));
    }
  }
  return std::move(b).build();
}

}  // namespace trollrole
