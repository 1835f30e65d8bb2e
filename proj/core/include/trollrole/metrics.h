#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "trollrole/role.h"

namespace trollrole {

// confusion[gold][predicted].
using ConfusionMatrix = std::array<std::array<std::size_t, kNumRoles>, kNumRoles>;

struct MetricsReport {
  std::string method;
  bool evaluated = true;  // false when gold labels were unavailable
  std::size_t n = 0;
  double accuracy = 0.0;  // percent
  double macro_f1 = 0.0;  // percent
  std::array<double, kNumRoles> precision{};
  std::array<double, kNumRoles> recall{};
  std::array<double, kNumRoles> f1{};
  ConfusionMatrix confusion{};
};

// Throws ConfigError on length mismatch or empty input.
ConfusionMatrix confusion_matrix(std::span<const Role> gold,
                                 std::span<const Role> predicted);

// 100 * matches / n.
double accuracy(std::span<const Role> gold, std::span<const Role> predicted);

// Unweighted mean of per-class F1 over the three roles, times 100. A
// precision or recall with a zero denominator counts as 0.
double macro_f1(std::span<const Role> gold, std::span<const Role> predicted);

MetricsReport evaluate(std::string method, std::span<const Role> gold,
                       std::span<const Role> predicted);
MetricsReport report_from_confusion(std::string method, const ConfusionMatrix& c);

// Scores predicting the most frequent class for everyone, from class counts
// alone (ties go to the earliest class).
MetricsReport majority_baseline(const std::array<std::size_t, kNumRoles>& counts,
                                std::string method = "Baseline (majority class)");

// Stratified partition of positions 0..n-1 into k folds.
struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> folds;

  // Positions not in fold i, ascending.
  std::vector<std::size_t> training_positions(std::size_t i) const;
};

// Each class is shuffled with the seed and dealt round-robin over the
// folds, continuing the deal where the previous class stopped. Throws
// ConfigError when k == 0 or a present class has fewer than k members.
FoldPlan stratified_folds(std::span<const Role> labels, std::size_t k,
                          std::uint64_t seed);

}  // namespace trollrole
