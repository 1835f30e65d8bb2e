#include "trollrole/distant.h"

#include <array>
#include <charconv>
#include <map>

#include "trollrole/csv.h"
#include "trollrole/errors.h"

namespace trollrole {
namespace {

std::string format_prob(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::fixed, 6);
  return std::string(buf, end);
}

}  // namespace

MediaRepresentation media_representation(const MediaCitationIndex& index,
                                         const EmbeddingTable& users) {
  MediaRepresentation out{EmbeddingTable(users.dim(), users.name()), {}};
  std::vector<double> sum(users.dim());
  std::vector<float> mean(users.dim());
  for (const auto& [domain, citing] : index.by_media()) {
    std::fill(sum.begin(), sum.end(), 0.0);
    std::size_t n = 0;
    for (const auto& handle : citing) {
      const auto row = users.find(NodeId::user(handle));
      if (!row) continue;
      for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += (*row)[c];
      ++n;
    }
    if (n == 0) {
      out.skipped.push_back(domain);
      continue;
    }
    for (std::size_t c = 0; c < sum.size(); ++c) {
      mean[c] = static_cast<float>(sum[c] / static_cast<double>(n));
    }
    out.table.add(NodeId::media(domain), mean);
  }
  return out;
}

FeatureMatrix media_features(const MediaCitationIndex& index,
                             std::span<const EmbeddingTable* const> user_tables,
                             std::vector<std::string>* skipped) {
  std::vector<MediaRepresentation> reps;
  reps.reserve(user_tables.size());
  for (const auto* t : user_tables) reps.push_back(media_representation(index, *t));
  std::vector<NodeId> ids;
  for (const auto& [domain, citing] : index.by_media()) {
    const NodeId id = NodeId::media(domain);
    bool everywhere = !reps.empty();
    for (const auto& r : reps) everywhere = everywhere && r.table.contains(id);
    if (everywhere) {
      ids.push_back(id);
    } else if (skipped) {
      skipped->push_back(domain);
    }
  }
  std::vector<const EmbeddingTable*> tables;
  for (const auto& r : reps) tables.push_back(&r.table);
  return concat_features(tables, ids);
}

std::vector<RolePosterior> train_proxy_predict_users(
    const FeatureMatrix& media, const MediaList& media_labels,
    const FeatureMatrix& users, const LogRegOptions& options) {
  std::vector<std::size_t> rows;
  std::vector<Role> labels;
  std::array<std::size_t, kNumRoles> per_class{};
  for (std::size_t i = 0; i < media.rows(); ++i) {
    const auto bias = media_labels.bias_of(media.ids[i].name);
    if (!bias) continue;
    rows.push_back(i);
    labels.push_back(map_bias_to_role(*bias));
    ++per_class[role_index(labels.back())];
  }
  for (Role r : kAllRoles) {
    if (per_class[role_index(r)] == 0) {
      throw TrainingError("no represented medium for class " +
                          std::string(role_name(r)));
    }
  }
  if (users.cols() != media.cols()) {
    throw ConfigError("user and media features differ in width");
  }
  const FeatureMatrix train = select_rows(media, rows);
  const Classifier clf = fit_classifier(train.values, labels, options);
  return clf.predict_rows(users.values);
}

std::vector<RolePosterior> train_proxy_predict_users(
    const MediaCitationIndex& index,
    std::span<const EmbeddingTable* const> user_tables,
    std::span<const NodeId> users, const MediaList& media_labels,
    const LogRegOptions& options) {
  const FeatureMatrix media = media_features(index, user_tables);
  const FeatureMatrix user_rows =
      concat_features(user_tables, users, MissingRows::kZeroFill);
  return train_proxy_predict_users(media, media_labels, user_rows, options);
}

std::vector<MediaPrediction> reverse_classify(const FeatureMatrix& users,
                                              std::span<const Role> user_labels,
                                              const FeatureMatrix& media,
                                              const LogRegOptions& options) {
  if (users.cols() != media.cols()) {
    throw ConfigError("user and media features differ in width");
  }
  const Classifier clf = fit_classifier(users.values, user_labels, options);
  const auto posteriors = clf.predict_rows(media.values);
  std::vector<MediaPrediction> out;
  out.reserve(media.rows());
  for (std::size_t i = 0; i < media.rows(); ++i) {
    out.push_back({media.ids[i].name, map_role_to_bias(decide(posteriors[i])),
                   posteriors[i]});
  }
  return out;
}

void write_predictions_csv(std::ostream& out, std::span<const NodeId> ids,
                           std::span<const RolePosterior> posteriors) {
  write_csv_row(out, {"id", "predicted", "posterior_left", "posterior_news",
                      "posterior_right"});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& p = posteriors[i];
    write_csv_row(out, {ids[i].str(), std::string(role_name(decide(p))),
                        format_prob(p.p[0]), format_prob(p.p[1]),
                        format_prob(p.p[2])});
  }
}

void write_media_predictions_csv(std::ostream& out,
                                 std::span<const MediaPrediction> predictions) {
  write_csv_row(out, {"id", "predicted", "posterior_left", "posterior_news",
                      "posterior_right"});
  for (const auto& m : predictions) {
    write_csv_row(out, {NodeId::media(m.domain).str(),
                        std::string(bias_name(m.predicted)),
                        format_prob(m.posterior.p[0]),
                        format_prob(m.posterior.p[1]),
                        format_prob(m.posterior.p[2])});
  }
}

}  // namespace trollrole
