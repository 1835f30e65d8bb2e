#include "trollrole/logreg.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include "trollrole/errors.h"

namespace trollrole {
namespace {

Eigen::Vector3d softmax(const Eigen::Vector3d& logits) {
  const double m = logits.maxCoeff();
  Eigen::Vector3d e = (logits.array() - m).exp();
  return e / e.sum();
}

void check_training_input(const Eigen::MatrixXd& x, std::span<const Role> y) {
  if (x.rows() == 0) throw TrainingError("no training examples");
  if (static_cast<std::size_t>(x.rows()) != y.size()) {
    throw TrainingError("feature rows and labels differ in length");
  }
  if (!x.allFinite()) throw TrainingError("non-finite feature value");
}

// Row-wise class probabilities, n x 3.
Eigen::MatrixXd probabilities(const LogRegModel& model,
                              const Eigen::MatrixXd& x) {
  Eigen::MatrixXd logits = x * model.weights.transpose();
  logits.rowwise() += model.bias.transpose();
  Eigen::VectorXd m = logits.rowwise().maxCoeff();
  Eigen::MatrixXd e = (logits.colwise() - m).array().exp();
  Eigen::VectorXd s = e.rowwise().sum();
  return e.array().colwise() / s.array();
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

template <typename Row>
void write_row(std::ostream& out, const char* tag, const Row& row) {
  out << tag;
  for (Eigen::Index i = 0; i < row.size(); ++i) out << ' ' << format_double(row(i));
  out << '\n';
}

std::vector<double> read_row(std::istream& in, const std::string& tag,
                             std::size_t n) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("model file truncated before " + tag);
  std::istringstream ss(line);
  std::string got;
  ss >> got;
  if (got != tag) throw FormatError("model file: expected '" + tag + "', got '" + got + "'");
  std::vector<double> values;
  std::string tok;
  while (ss >> tok) {
    double v;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || !std::isfinite(v)) {
      throw FormatError("model file: bad number '" + tok + "' in " + tag);
    }
    values.push_back(v);
  }
  if (values.size() != n) {
    throw FormatError("model file: " + tag + " has " + std::to_string(values.size()) +
                      " values, expected " + std::to_string(n));
  }
  return values;
}

}  // namespace

RolePosterior ensemble(std::span<const RolePosterior> posteriors) {
  if (posteriors.empty()) throw ConfigError("ensemble of zero posteriors");
  RolePosterior out{{0.0, 0.0, 0.0}};
  for (const auto& p : posteriors) {
    for (std::size_t k = 0; k < kNumRoles; ++k) out.p[k] += p.p[k];
  }
  for (double& v : out.p) v /= static_cast<double>(posteriors.size());
  return out;
}

Role decide(const RolePosterior& posterior) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < kNumRoles; ++k) {
    if (posterior.p[k] > posterior.p[best]) best = k;
  }
  return role_from_index(best);
}

LogRegModel LogRegModel::zeros(std::size_t dim, double l2) {
  LogRegModel m;
  m.weights = Eigen::Matrix<double, 3, Eigen::Dynamic>::Zero(
      3, static_cast<Eigen::Index>(dim));
  m.bias = Eigen::Vector3d::Zero();
  m.l2 = l2;
  return m;
}

RolePosterior predict_proba(const LogRegModel& model, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != model.dim()) {
    throw ConfigError("feature vector has " + std::to_string(x.size()) +
                      " components, model expects " + std::to_string(model.dim()));
  }
  const Eigen::Vector3d prob = softmax(model.weights * x + model.bias);
  return {{prob(0), prob(1), prob(2)}};
}

double logreg_objective(const LogRegModel& model, const Eigen::MatrixXd& x,
                        std::span<const Role> y) {
  Eigen::MatrixXd logits = x * model.weights.transpose();
  logits.rowwise() += model.bias.transpose();
  double loss = 0.0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double m = logits.row(i).maxCoeff();
    const double lse = m + std::log((logits.row(i).array() - m).exp().sum());
    loss += lse - logits(i, static_cast<Eigen::Index>(role_index(y[i])));
  }
  loss /= static_cast<double>(std::max<Eigen::Index>(x.rows(), 1));
  return loss + 0.5 * model.l2 * model.weights.squaredNorm();
}

double LogRegGradient::norm() const {
  return std::sqrt(d_weights.squaredNorm() + d_bias.squaredNorm());
}

LogRegGradient logreg_gradient(const LogRegModel& model,
                               const Eigen::MatrixXd& x,
                               std::span<const Role> y) {
  Eigen::MatrixXd residual = probabilities(model, x);  // n x 3
  for (Eigen::Index i = 0; i < residual.rows(); ++i) {
    residual(i, static_cast<Eigen::Index>(role_index(y[i]))) -= 1.0;
  }
  const double inv_n = 1.0 / static_cast<double>(std::max<Eigen::Index>(x.rows(), 1));
  LogRegGradient g;
  g.d_weights = inv_n * residual.transpose() * x + model.l2 * model.weights;
  g.d_bias = inv_n * residual.colwise().sum().transpose();
  return g;
}

LogRegFit train_logreg(const Eigen::MatrixXd& x, std::span<const Role> y,
                       const LogRegOptions& options) {
  check_training_input(x, y);
  if (!(options.l2 >= 0.0) || !std::isfinite(options.l2)) {
    throw ConfigError("l2 strength must be >= 0");
  }
  LogRegFit fit;
  fit.model = LogRegModel::zeros(static_cast<std::size_t>(x.cols()), options.l2);
  double loss = logreg_objective(fit.model, x, y);
  fit.loss_history.push_back(loss);
  double step = 1.0;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const LogRegGradient g = logreg_gradient(fit.model, x, y);
    const double gnorm2 = g.d_weights.squaredNorm() + g.d_bias.squaredNorm();
    if (std::sqrt(gnorm2) <= options.gradient_tolerance) {
      fit.converged = true;
      break;
    }
    // Armijo backtracking; start from twice the last accepted step.
    step = std::min(step * 2.0, 1e6);
    bool accepted = false;
    LogRegModel trial = fit.model;
    while (step > 1e-16) {
      trial.weights = fit.model.weights - step * g.d_weights;
      trial.bias = fit.model.bias - step * g.d_bias;
      const double trial_loss = logreg_objective(trial, x, y);
      if (std::isfinite(trial_loss) && trial_loss <= loss - 0.5 * step * gnorm2) {
        accepted = true;
        loss = trial_loss;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no further decrease representable
    fit.model = std::move(trial);
    fit.loss_history.push_back(loss);
    fit.iterations = it + 1;
  }
  if (!fit.model.weights.allFinite() || !fit.model.bias.allFinite()) {
    throw TrainingError("logistic regression diverged");
  }
  return fit;
}

RolePosterior Classifier::predict(const Eigen::VectorXd& raw) const {
  return predict_proba(model, scaler.apply_row(raw));
}

std::vector<RolePosterior> Classifier::predict_rows(const Eigen::MatrixXd& raw) const {
  const Eigen::MatrixXd z = scaler.apply(raw);
  const Eigen::MatrixXd prob = probabilities(model, z);
  std::vector<RolePosterior> out(static_cast<std::size_t>(prob.rows()));
  for (Eigen::Index i = 0; i < prob.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = {{prob(i, 0), prob(i, 1), prob(i, 2)}};
  }
  return out;
}

Classifier fit_classifier(const Eigen::MatrixXd& x, std::span<const Role> y,
                          const LogRegOptions& options, bool standardize) {
  check_training_input(x, y);
  Classifier c;
  c.scaler = standardize ? Standardizer::fit(x)
                         : Standardizer::identity(static_cast<std::size_t>(x.cols()));
  c.model = train_logreg(c.scaler.apply(x), y, options).model;
  return c;
}

void save_classifier(std::ostream& out, const Classifier& c) {
  out << "trollrole-logreg 1\n";
  out << "dim " << c.model.dim() << '\n';
  out << "l2 " << format_double(c.model.l2) << '\n';
  out << "classes";
  for (Role r : kAllRoles) out << ' ' << role_name(r);
  out << '\n';
  for (Eigen::Index k = 0; k < 3; ++k) write_row(out, "weights", c.model.weights.row(k));
  write_row(out, "bias", c.model.bias.transpose());
  write_row(out, "mean", c.scaler.mean);
  write_row(out, "scale", c.scaler.scale);
}

Classifier load_classifier(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "trollrole-logreg 1") {
    throw FormatError("not a trollrole model file");
  }
  std::string tag;
  std::size_t dim = 0;
  if (!std::getline(in, line) || !(std::istringstream(line) >> tag >> dim) ||
      tag != "dim" || dim == 0) {
    throw FormatError("model file: bad dim line");
  }
  const double l2 = read_row(in, "l2", 1)[0];
  if (!std::getline(in, line) || line != "classes left news_feed right") {
    throw FormatError("model file: unexpected class order");
  }
  Classifier c;
  c.model = LogRegModel::zeros(dim, l2);
  for (Eigen::Index k = 0; k < 3; ++k) {
    const auto row = read_row(in, "weights", dim);
    for (std::size_t j = 0; j < dim; ++j) c.model.weights(k, static_cast<Eigen::Index>(j)) = row[j];
  }
  const auto b = read_row(in, "bias", 3);
  c.model.bias = Eigen::Vector3d(b[0], b[1], b[2]);
  const auto mean = read_row(in, "mean", dim);
  const auto scale = read_row(in, "scale", dim);
  c.scaler.mean = Eigen::Map<const Eigen::RowVectorXd>(mean.data(), static_cast<Eigen::Index>(dim));
  c.scaler.scale = Eigen::Map<const Eigen::RowVectorXd>(scale.data(), static_cast<Eigen::Index>(dim));
  return c;
}

}  // namespace trollrole
