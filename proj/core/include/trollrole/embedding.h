#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "trollrole/graph.h"

namespace trollrole {

// Node id -> d-dimensional vector (row-major float storage). Rows keep
// insertion order; every component is finite.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  // Throws ConfigError when dim == 0.
  explicit EmbeddingTable(std::size_t dim, std::string name = {});

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  // Label used in error messages ("u2h", file stem, ...).
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Throws ConfigError on dimension mismatch or a non-finite component,
  // and on a duplicate id.
  void add(const NodeId& id, std::span<const float> values);

  const std::vector<NodeId>& ids() const { return ids_; }
  bool contains(const NodeId& id) const { return index_.count(id) > 0; }
  std::optional<std::span<const float>> find(const NodeId& id) const;
  std::span<const float> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }

  friend bool operator==(const EmbeddingTable& a, const EmbeddingTable& b) {
    return a.dim_ == b.dim_ && a.ids_ == b.ids_ && a.values_ == b.values_;
  }

 private:
  std::size_t dim_ = 0;
  std::string name_;
  std::vector<NodeId> ids_;
  std::unordered_map<NodeId, std::size_t, NodeIdHash> index_;
  std::vector<float> values_;
};

// Vector text format: "<count> <d>" then "<namespaced-id> v1 ... vd" per
// line. Values use the shortest decimal form that reads back exactly.
void write_embedding_text(std::ostream& out, const EmbeddingTable& table);
void save_embedding_file(const std::filesystem::path& path,
                         const EmbeddingTable& table);

// Throws FormatError (with the 1-based line number) on a bad header, a
// row-count mismatch, a short or long row, a non-finite value or a duplicate
// id. Ids without a known namespace are read as users.
EmbeddingTable read_embedding_text(std::istream& in, std::string name = {});
EmbeddingTable load_embedding_file(const std::filesystem::path& path);

struct RestrictResult {
  EmbeddingTable table;
  std::vector<NodeId> missing;  // requested ids absent from the source
};

// Rows of `table` whose id is in `ids`, in the order of `ids`.
RestrictResult restrict_table(const EmbeddingTable& table,
                              std::span<const NodeId> ids);

}  // namespace trollrole
