#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trollrole/ingest.h"

namespace trollrole {

enum class NodeKind : std::uint8_t { kUser = 0, kTag = 1, kMedia = 2 };

// Namespaced node identifier; printed as "user:name", "tag:name",
// "media:name".
struct NodeId {
  NodeKind kind = NodeKind::kUser;
  std::string name;

  static NodeId user(std::string n) { return {NodeKind::kUser, std::move(n)}; }
  static NodeId tag(std::string n) { return {NodeKind::kTag, std::move(n)}; }
  static NodeId media(std::string n) {
    return {NodeKind::kMedia, std::move(n)};
  }

  // Parses "kind:name". Without a known prefix the id is taken as a user.
  static NodeId parse(std::string_view text);
  std::string str() const;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
  friend bool operator==(const NodeId&, const NodeId&) = default;
};

std::ostream& operator<<(std::ostream& out, const NodeId& id);

struct NodeIdHash {
  std::size_t operator()(const NodeId& id) const noexcept {
    return std::hash<std::string>{}(id.name) * 31u +
           static_cast<std::size_t>(id.kind);
  }
};

using NodeIndex = std::uint32_t;

// Undirected simple graph. Nodes are stored sorted by NodeId, so node indices
// and adjacency lists are sorted the same way and are reproducible.
class NodeGraph {
 public:
  class Builder {
   public:
    void add_node(const NodeId& id);
    // Self-loops are ignored; repeated edges collapse.
    void add_edge(const NodeId& a, const NodeId& b);
    NodeGraph build() &&;

   private:
    std::vector<NodeId> nodes_;
    std::vector<std::pair<NodeId, NodeId>> edges_;
  };

  NodeGraph() = default;

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  bool empty() const { return nodes_.empty(); }

  const NodeId& node(NodeIndex i) const { return nodes_[i]; }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::optional<NodeIndex> index_of(const NodeId& id) const;

  std::span<const NodeIndex> neighbors(NodeIndex i) const {
    return {adjacency_.data() + offsets_[i],
            adjacency_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeIndex i) const {
    return offsets_[i + 1] - offsets_[i];
  }
  bool has_edge(NodeIndex a, NodeIndex b) const;

  // True when no edge joins two nodes of the same kind.
  bool is_bipartite_by_kind() const;

  // One "a b" line per edge (a < b), in index order.
  void write_edge_list(std::ostream& out) const;

 private:
  std::vector<NodeId> nodes_;
  std::unordered_map<NodeId, NodeIndex, NodeIdHash> index_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> adjacency_;
  std::size_t num_edges_ = 0;
};

// Bipartite user-hashtag graph: (user:u, tag:h) iff u used h.
NodeGraph build_u2h(const std::vector<TweetRecord>& tweets);

// User-mention graph: (user:u, user:v) iff u mentioned v (u != v). Accounts
// that are only mentioned are nodes too.
NodeGraph build_u2m(const std::vector<TweetRecord>& tweets);

}  // namespace trollrole
