#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "trollrole/features.h"
#include "trollrole/role.h"

namespace trollrole {

// Probability vector over roles in canonical order.
struct RolePosterior {
  std::array<double, kNumRoles> p{};

  static RolePosterior uniform() { return {{1.0 / 3, 1.0 / 3, 1.0 / 3}}; }
  double operator[](Role r) const { return p[role_index(r)]; }
  double sum() const { return p[0] + p[1] + p[2]; }

  friend bool operator==(const RolePosterior&, const RolePosterior&) = default;
};

// Component-wise mean. Throws ConfigError on an empty list.
RolePosterior ensemble(std::span<const RolePosterior> posteriors);

// Argmax; ties go to the earliest role in canonical order.
Role decide(const RolePosterior& posterior);

// Multinomial logistic regression: softmax(W x + b), W is 3 x d.
struct LogRegModel {
  Eigen::Matrix<double, 3, Eigen::Dynamic> weights;
  Eigen::Vector3d bias = Eigen::Vector3d::Zero();
  double l2 = 0.0;

  static LogRegModel zeros(std::size_t dim, double l2 = 0.0);
  std::size_t dim() const { return static_cast<std::size_t>(weights.cols()); }
};

// Throws ConfigError when x has the wrong length.
RolePosterior predict_proba(const LogRegModel& model, const Eigen::VectorXd& x);

// Mean cross-entropy + (l2/2)|W|^2; the bias is not penalized.
double logreg_objective(const LogRegModel& model, const Eigen::MatrixXd& x,
                        std::span<const Role> y);

struct LogRegGradient {
  Eigen::Matrix<double, 3, Eigen::Dynamic> d_weights;
  Eigen::Vector3d d_bias;
  double norm() const;
};

LogRegGradient logreg_gradient(const LogRegModel& model,
                               const Eigen::MatrixXd& x,
                               std::span<const Role> y);

struct LogRegOptions {
  double l2 = 1.0;
  double gradient_tolerance = 1e-6;
  std::size_t max_iterations = 5000;
};

struct LogRegFit {
  LogRegModel model;
  std::vector<double> loss_history;  // initial objective, then one per step
  std::size_t iterations = 0;
  bool converged = false;
};

// Full-batch gradient descent from zero with Armijo backtracking, stopped at
// gradient norm <= tolerance or the iteration cap. The objective never
// increases. Throws TrainingError on empty or non-finite input.
LogRegFit train_logreg(const Eigen::MatrixXd& x, std::span<const Role> y,
                       const LogRegOptions& options = {});

// Standardizer fitted on the training rows followed by logistic regression.
struct Classifier {
  Standardizer scaler;
  LogRegModel model;

  RolePosterior predict(const Eigen::VectorXd& raw) const;
  std::vector<RolePosterior> predict_rows(const Eigen::MatrixXd& raw) const;
};

Classifier fit_classifier(const Eigen::MatrixXd& x, std::span<const Role> y,
                          const LogRegOptions& options = {},
                          bool standardize = true);

// Text model file: header, dim, l2, class order, the three weight rows, the
// bias row, then the standardizer mean and scale rows.
void save_classifier(std::ostream& out, const Classifier& classifier);
Classifier load_classifier(std::istream& in);

}  // namespace trollrole
