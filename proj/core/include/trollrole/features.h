#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trollrole/embedding.h"

namespace trollrole {

// Example ids with one feature row each (row i belongs to ids[i]).
struct FeatureMatrix {
  std::vector<NodeId> ids;
  Eigen::MatrixXd values;

  std::size_t rows() const { return ids.size(); }
  std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
};

enum class MissingRows {
  kError,     // throw naming the id and the table
  kZeroFill,  // substitute a zero block for that table
};

// Row for each id = the tables' vectors concatenated in table order.
// `zero_filled`, when given, receives the number of (id, table) blocks that
// were zero-filled.
FeatureMatrix concat_features(std::span<const EmbeddingTable* const> tables,
                              std::span<const NodeId> ids,
                              MissingRows missing = MissingRows::kError,
                              std::size_t* zero_filled = nullptr);

// Column-wise concatenation of two matrices over identical ids.
FeatureMatrix hconcat(const FeatureMatrix& left, const FeatureMatrix& right);

// Rows of `m` at the given positions.
FeatureMatrix select_rows(const FeatureMatrix& m,
                          std::span<const std::size_t> rows);

// Per-column affine map to mean 0 and unit variance on the fitted data.
// Constant columns keep scale 1.
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static Standardizer fit(const Eigen::MatrixXd& x);
  static Standardizer identity(std::size_t dim);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
  Eigen::VectorXd apply_row(const Eigen::VectorXd& x) const;
};

}  // namespace trollrole
