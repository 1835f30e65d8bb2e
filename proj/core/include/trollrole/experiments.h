#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trollrole/distant.h"
#include "trollrole/embedding.h"
#include "trollrole/graph.h"
#include "trollrole/ingest.h"
#include "trollrole/labelprop.h"
#include "trollrole/logreg.h"
#include "trollrole/metrics.h"
#include "trollrole/sgns.h"
#include "trollrole/walks.h"

namespace trollrole {

enum class LpMode { kNone, kLp1, kLp2 };

// A feature combination: an ensemble (averaged posteriors) of members, each
// member a concatenation of named tables, optionally followed by label
// propagation. Text form: "u2h||u2m" concatenates, "u2h(+)u2m" ensembles,
// a trailing "+lp1" / "+lp2" adds propagation, e.g. "u2h||u2m||text+lp2".
struct FeatureCombination {
  std::vector<std::vector<std::string>> members;
  LpMode lp = LpMode::kNone;

  // Throws ConfigError on an empty member or unknown suffix.
  static FeatureCombination parse(std::string_view text);
  // "U2H || U2M + LP2".
  std::string display_name() const;
  // Every table name used, in first-use order.
  std::vector<std::string> table_names() const;
};

// Everything the experiment runners read. Pointers are borrowed.
struct ExperimentInputs {
  std::map<std::string, const EmbeddingTable*> tables;  // "u2h", "u2m", "text"
  std::vector<std::string> users;                        // target handles
  // Gold roles; required for T1 and reverse, used only for scoring in T2.
  const std::map<std::string, Role>* labels = nullptr;
  const MediaCitationIndex* index = nullptr;
  const MediaList* media = nullptr;
  const NodeGraph* u2h = nullptr;  // LP1 only
  const NodeGraph* u2m = nullptr;  // LP1 only
};

struct ExperimentOptions {
  LogRegOptions logreg;
  double tau = 0.55;
  std::size_t folds = 5;
  std::uint64_t seed = 1;
  PropagationOptions propagation;
};

struct ExperimentResult {
  std::vector<MetricsReport> reports;
  // Per method: ids and posteriors (users for T1/T2, media for reverse).
  struct Predictions {
    std::string method;
    std::vector<NodeId> ids;
    std::vector<RolePosterior> posteriors;
  };
  std::vector<Predictions> predictions;
  std::vector<std::string> notes;  // skipped media, zero-filled rows, LP stats
};

// Fully supervised: stratified k-fold CV, test-fold predictions pooled and
// scored once. LP seeds are the training-fold gold labels.
ExperimentResult run_t1(const ExperimentInputs& inputs,
                        std::span<const FeatureCombination> combinations,
                        const ExperimentOptions& options);

// Distant supervision: proxy model trained on media representations and
// applied to the users; LP seeds are the media. Gold labels only score the
// output; without them every report has evaluated = false.
ExperimentResult run_t2(const ExperimentInputs& inputs,
                        std::span<const FeatureCombination> combinations,
                        const ExperimentOptions& options);

// Media bias predicted by models trained on labelled users.
ExperimentResult run_reverse(const ExperimentInputs& inputs,
                             std::span<const FeatureCombination> combinations,
                             const ExperimentOptions& options);

// Aligned text table.
void print_reports(std::ostream& out, std::span<const MetricsReport> reports);
// CSV method,evaluated,n,accuracy,macro_f1,f1_left,f1_news,f1_right.
void write_reports_csv(std::ostream& out, std::span<const MetricsReport> reports);

// Graph construction and node2vec training for a parsed corpus.
struct EmbedSettings {
  WalkConfig walks;
  SgnsConfig sgns;
  // Export hashtag and mentioned-only nodes too.
  bool keep_tokens = false;
  // Build the graphs from target-role tweets only.
  bool target_roles_only = false;
};

struct CorpusEmbeddings {
  NodeGraph u2h;
  NodeGraph u2m;
  EmbeddingTable u2h_vectors;
  EmbeddingTable u2m_vectors;
};

CorpusEmbeddings embed_corpus(const std::vector<TweetRecord>& tweets,
                              const EmbedSettings& settings);

}  // namespace trollrole
