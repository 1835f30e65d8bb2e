#include "trollrole/features.h"

#include <cmath>

#include "trollrole/errors.h"

namespace trollrole {

FeatureMatrix concat_features(std::span<const EmbeddingTable* const> tables,
                              std::span<const NodeId> ids, MissingRows missing,
                              std::size_t* zero_filled) {
  std::size_t width = 0;
  for (const auto* t : tables) width += t->dim();
  FeatureMatrix out;
  out.ids.assign(ids.begin(), ids.end());
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ids.size()),
                                     static_cast<Eigen::Index>(width));
  std::size_t filled = 0;
  for (std::size_t r = 0; r < ids.size(); ++r) {
    Eigen::Index col = 0;
    for (std::size_t k = 0; k < tables.size(); ++k) {
      const EmbeddingTable& t = *tables[k];
      if (auto row = t.find(ids[r])) {
        for (std::size_t c = 0; c < t.dim(); ++c) {
          out.values(static_cast<Eigen::Index>(r), col + static_cast<Eigen::Index>(c)) =
              (*row)[c];
        }
      } else if (missing == MissingRows::kZeroFill) {
        ++filled;
      } else {
        const std::string table_name =
            t.name().empty() ? "#" + std::to_string(k) : t.name();
        throw ConfigError("id " + ids[r].str() + " missing from table " +
                          table_name);
      }
      col += static_cast<Eigen::Index>(t.dim());
    }
  }
  if (zero_filled) *zero_filled = filled;
  return out;
}

FeatureMatrix hconcat(const FeatureMatrix& left, const FeatureMatrix& right) {
  if (left.ids != right.ids) {
    throw ConfigError("hconcat requires identical row ids");
  }
  FeatureMatrix out;
  out.ids = left.ids;
  out.values.resize(left.values.rows(), left.values.cols() + right.values.cols());
  out.values << left.values, right.values;
  return out;
}

FeatureMatrix select_rows(const FeatureMatrix& m,
                          std::span<const std::size_t> rows) {
  FeatureMatrix out;
  out.values.resize(static_cast<Eigen::Index>(rows.size()), m.values.cols());
  out.ids.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.ids.push_back(m.ids[rows[i]]);
    out.values.row(static_cast<Eigen::Index>(i)) =
        m.values.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& x) {
  Standardizer s;
  const Eigen::Index n = x.rows();
  if (n == 0) return identity(static_cast<std::size_t>(x.cols()));
  s.mean = x.colwise().mean();
  s.scale.resize(x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double var =
        (x.col(c).array() - s.mean(c)).square().sum() / static_cast<double>(n);
    const double sd = std::sqrt(var);
    s.scale(c) = sd > 1e-12 ? sd : 1.0;
  }
  return s;
}

Standardizer Standardizer::identity(std::size_t dim) {
  Standardizer s;
  s.mean = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(dim));
  s.scale = Eigen::RowVectorXd::Ones(static_cast<Eigen::Index>(dim));
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& x) const {
  if (x.cols() != mean.size()) {
    throw ConfigError("standardizer dimension mismatch");
  }
  return (x.rowwise() - mean).array().rowwise() / scale.array();
}

Eigen::VectorXd Standardizer::apply_row(const Eigen::VectorXd& x) const {
  if (x.size() != mean.size()) {
    throw ConfigError("standardizer dimension mismatch");
  }
  return ((x.transpose() - mean).array() / scale.array()).transpose();
}

}  // namespace trollrole
