#include "trollrole/metrics.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "rng.h"
#include "trollrole/errors.h"

namespace trollrole {

ConfusionMatrix confusion_matrix(std::span<const Role> gold,
                                 std::span<const Role> predicted) {
  if (gold.size() != predicted.size()) {
    throw ConfigError("gold and predicted label lists differ in length");
  }
  if (gold.empty()) throw ConfigError("no labels to score");
  ConfusionMatrix c{};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++c[role_index(gold[i])][role_index(predicted[i])];
  }
  return c;
}

MetricsReport report_from_confusion(std::string method, const ConfusionMatrix& c) {
  MetricsReport r;
  r.method = std::move(method);
  r.confusion = c;
  std::size_t correct = 0;
  for (std::size_t g = 0; g < kNumRoles; ++g) {
    correct += c[g][g];
    for (std::size_t p = 0; p < kNumRoles; ++p) r.n += c[g][p];
  }
  r.accuracy = r.n ? 100.0 * static_cast<double>(correct) / static_cast<double>(r.n) : 0.0;
  double f1_sum = 0.0;
  for (std::size_t k = 0; k < kNumRoles; ++k) {
    std::size_t predicted = 0, actual = 0;
    for (std::size_t j = 0; j < kNumRoles; ++j) {
      predicted += c[j][k];
      actual += c[k][j];
    }
    const double tp = static_cast<double>(c[k][k]);
    r.precision[k] = predicted ? tp / static_cast<double>(predicted) : 0.0;
    r.recall[k] = actual ? tp / static_cast<double>(actual) : 0.0;
    const double denom = r.precision[k] + r.recall[k];
    r.f1[k] = denom > 0.0 ? 2.0 * r.precision[k] * r.recall[k] / denom : 0.0;
    f1_sum += r.f1[k];
  }
  r.macro_f1 = 100.0 * f1_sum / static_cast<double>(kNumRoles);
  return r;
}

MetricsReport evaluate(std::string method, std::span<const Role> gold,
                       std::span<const Role> predicted) {
  return report_from_confusion(std::move(method), confusion_matrix(gold, predicted));
}

double accuracy(std::span<const Role> gold, std::span<const Role> predicted) {
  return evaluate("", gold, predicted).accuracy;
}

double macro_f1(std::span<const Role> gold, std::span<const Role> predicted) {
  return evaluate("", gold, predicted).macro_f1;
}

MetricsReport majority_baseline(const std::array<std::size_t, kNumRoles>& counts,
                                std::string method) {
  const std::size_t majority = static_cast<std::size_t>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());
  ConfusionMatrix c{};
  for (std::size_t g = 0; g < kNumRoles; ++g) c[g][majority] = counts[g];
  return report_from_confusion(std::move(method), c);
}

std::vector<std::size_t> FoldPlan::training_positions(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (f != i) out.insert(out.end(), folds[f].begin(), folds[f].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

FoldPlan stratified_folds(std::span<const Role> labels, std::size_t k,
                          std::uint64_t seed) {
  if (k == 0) throw ConfigError("number of folds must be >= 1");
  std::array<std::vector<std::size_t>, kNumRoles> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[role_index(labels[i])].push_back(i);
  }
  for (Role r : kAllRoles) {
    const auto& members = by_class[role_index(r)];
    if (!members.empty() && members.size() < k) {
      throw ConfigError("class " + std::string(role_name(r)) + " has " +
                        std::to_string(members.size()) + " examples, fewer than " +
                        std::to_string(k) + " folds");
    }
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.folds.resize(k);
  std::size_t next = 0;
  for (std::size_t c = 0; c < kNumRoles; ++c) {
    auto members = by_class[c];
    auto rng = internal::keyed_rng({seed, 0x464F, c});
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t pos : members) {
      plan.folds[next].push_back(pos);
      next = (next + 1) % k;
    }
  }
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

}  // namespace trollrole
