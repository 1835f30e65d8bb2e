#pragma once

#include <span>
#include <string>
#include <vector>

#include "trollrole/embedding.h"
#include "trollrole/features.h"
#include "trollrole/ingest.h"
#include "trollrole/logreg.h"

namespace trollrole {

struct MediaRepresentation {
  // One row per represented medium, ids "media:<domain>".
  EmbeddingTable table;
  // Media without any citing user in the user table.
  std::vector<std::string> skipped;
};

// R(m) = mean of the vectors of the users in C_m that `users` contains.
MediaRepresentation media_representation(const MediaCitationIndex& index,
                                         const EmbeddingTable& users);

// Media features for a concatenation of user tables: per-table means,
// concatenated. A medium is kept only when every table represents it; the
// others are appended to `skipped`.
FeatureMatrix media_features(const MediaCitationIndex& index,
                             std::span<const EmbeddingTable* const> user_tables,
                             std::vector<std::string>* skipped = nullptr);

// Proxy model: logistic regression on (R(m), role(bias(m))), applied to the
// user rows. Returns one posterior per user row. Throws TrainingError naming
// the role when no represented medium maps to it.
std::vector<RolePosterior> train_proxy_predict_users(
    const FeatureMatrix& media, const MediaList& media_labels,
    const FeatureMatrix& users, const LogRegOptions& options = {});

// Convenience form over raw tables: users missing from a table are
// zero-filled for prediction only.
std::vector<RolePosterior> train_proxy_predict_users(
    const MediaCitationIndex& index,
    std::span<const EmbeddingTable* const> user_tables,
    std::span<const NodeId> users, const MediaList& media_labels,
    const LogRegOptions& options = {});

struct MediaPrediction {
  std::string domain;
  Bias predicted = Bias::kCenter;
  RolePosterior posterior;
};

// Reverse direction: logistic regression on labelled users, applied to the
// media rows; the predicted role maps back to a bias.
std::vector<MediaPrediction> reverse_classify(const FeatureMatrix& users,
                                              std::span<const Role> user_labels,
                                              const FeatureMatrix& media,
                                              const LogRegOptions& options = {});

// CSV id,predicted,posterior_left,posterior_news,posterior_right.
void write_predictions_csv(std::ostream& out, std::span<const NodeId> ids,
                           std::span<const RolePosterior> posteriors);
void write_media_predictions_csv(std::ostream& out,
                                 std::span<const MediaPrediction> predictions);

}  // namespace trollrole
