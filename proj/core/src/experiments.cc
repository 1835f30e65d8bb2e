#include "trollrole/experiments.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <iomanip>
#include <set>
#include <sstream>

#include "trollrole/csv.h"
#include "trollrole/errors.h"
#include "trollrole/features.h"

namespace trollrole {
namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + sep.size();
  }
  return out;
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::vector<const EmbeddingTable*> lookup_tables(const ExperimentInputs& in,
                                                 const std::vector<std::string>& names) {
  std::vector<const EmbeddingTable*> out;
  for (const auto& name : names) {
    auto it = in.tables.find(name);
    if (it == in.tables.end() || it->second == nullptr) {
      throw ConfigError("missing embedding input '" + name + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<NodeId> user_ids(std::span<const std::string> users) {
  std::vector<NodeId> ids;
  ids.reserve(users.size());
  for (const auto& u : users) ids.push_back(NodeId::user(u));
  return ids;
}

struct LabelledUsers {
  std::vector<std::string> handles;
  std::vector<Role> roles;
};

LabelledUsers labelled_users(const ExperimentInputs& in) {
  if (in.labels == nullptr) throw ConfigError("user labels are required");
  LabelledUsers out;
  for (const auto& u : in.users) {
    auto it = in.labels->find(u);
    if (it == in.labels->end()) continue;
    out.handles.push_back(u);
    out.roles.push_back(it->second);
  }
  if (out.handles.empty()) throw ConfigError("no labelled users");
  return out;
}

std::array<std::size_t, kNumRoles> class_counts(std::span<const Role> roles) {
  std::array<std::size_t, kNumRoles> c{};
  for (Role r : roles) ++c[role_index(r)];
  return c;
}

void require_index(const ExperimentInputs& in) {
  if (in.index == nullptr || in.media == nullptr) {
    throw ConfigError("media list and citation index are required");
  }
}

// Similarity graph for a combination; LP2 uses the concatenation of every
// table in the combination.
SimilarityGraph build_lp_graph(const ExperimentInputs& in,
                               const FeatureCombination& combo,
                               std::span<const std::string> users,
                               const ExperimentOptions& options,
                               std::vector<std::string>& notes) {
  require_index(in);
  SimilarityGraph g;
  if (combo.lp == LpMode::kLp1) {
    if (in.u2h == nullptr || in.u2m == nullptr) {
      throw ConfigError("LP1 needs the U2H and U2M graphs");
    }
    g = build_lp1_graph(*in.u2h, *in.u2m, *in.index, users);
  } else {
    const auto tables = lookup_tables(in, combo.table_names());
    const auto ids = user_ids(users);
    const FeatureMatrix u = concat_features(tables, ids, MissingRows::kZeroFill);
    const FeatureMatrix m = media_features(*in.index, tables);
    g = build_lp2_graph(u, m, options.tau);
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s: similarity graph %zu nodes, %zu edges, density %.4f",
                combo.display_name().c_str(), g.graph.num_nodes(), g.graph.num_edges(),
                edge_density(g.graph));
  notes.emplace_back(buf);
  return g;
}

void note_propagation(const FeatureCombination& combo, const LabelAssignment& a,
                      std::vector<std::string>& notes) {
  if (!a.converged || a.oscillation) {
    notes.push_back(combo.display_name() + ": label propagation " +
                    (a.oscillation ? "oscillated" : "hit the round cap") + " after " +
                    std::to_string(a.rounds) + " rounds");
  }
}

std::vector<Role> decide_all(std::span<const RolePosterior> posteriors) {
  std::vector<Role> out;
  out.reserve(posteriors.size());
  for (const auto& p : posteriors) out.push_back(decide(p));
  return out;
}

std::string format_fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

}  // namespace

// ---------------------------------------------------------------------------

FeatureCombination FeatureCombination::parse(std::string_view text) {
  FeatureCombination c;
  std::string body = trim(text);
  std::string lowered = body;
  for (char& ch : lowered) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (const auto& [suffix, mode] :
       {std::pair{std::string("+lp1"), LpMode::kLp1}, std::pair{std::string("+lp2"), LpMode::kLp2}}) {
    if (lowered.size() > suffix.size() &&
        lowered.compare(lowered.size() - suffix.size(), suffix.size(), suffix) == 0) {
      c.lp = mode;
      lowered.resize(lowered.size() - suffix.size());
      break;
    }
  }
  for (const auto& member : split(lowered, "(+)")) {
    std::vector<std::string> names = split(member, "||");
    for (const auto& n : names) {
      if (n.empty() || n.find_first_of("+|() ") != std::string::npos) {
        throw ConfigError("bad feature combination '" + std::string(text) + "'");
      }
    }
    c.members.push_back(std::move(names));
  }
  return c;
}

std::string FeatureCombination::display_name() const {
  std::string out;
  for (std::size_t m = 0; m < members.size(); ++m) {
    if (m > 0) out += " (+) ";
    for (std::size_t k = 0; k < members[m].size(); ++k) {
      if (k > 0) out += " || ";
      out += upper(members[m][k]);
    }
  }
  if (lp == LpMode::kLp1) out += " + LP1";
  if (lp == LpMode::kLp2) out += " + LP2";
  return out;
}

std::vector<std::string> FeatureCombination::table_names() const {
  std::vector<std::string> out;
  for (const auto& m : members) {
    for (const auto& n : m) {
      if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ExperimentResult run_t1(const ExperimentInputs& in,
                        std::span<const FeatureCombination> combinations,
                        const ExperimentOptions& options) {
  const LabelledUsers lu = labelled_users(in);
  const auto ids = user_ids(lu.handles);
  const std::size_t n = ids.size();
  ExperimentResult result;
  result.reports.push_back(majority_baseline(class_counts(lu.roles)));
  const FoldPlan plan = stratified_folds(lu.roles, options.folds, options.seed);

  for (const auto& combo : combinations) {
    std::vector<FeatureMatrix> members;
    for (const auto& names : combo.members) {
      std::size_t filled = 0;
      members.push_back(concat_features(lookup_tables(in, names), ids,
                                        MissingRows::kZeroFill, &filled));
      if (filled > 0) {
        result.notes.push_back(combo.display_name() + ": " + std::to_string(filled) +
                               " user vectors zero-filled");
      }
    }
    std::optional<SimilarityGraph> lp;
    if (combo.lp != LpMode::kNone) {
      lp = build_lp_graph(in, combo, lu.handles, options, result.notes);
    }

    std::vector<RolePosterior> pooled(n);
    for (std::size_t f = 0; f < plan.k; ++f) {
      const auto train = plan.training_positions(f);
      const auto& test = plan.folds[f];
      if (test.empty()) continue;
      std::vector<Role> y_train;
      for (std::size_t i : train) y_train.push_back(lu.roles[i]);

      std::vector<std::vector<RolePosterior>> per_member;
      for (const auto& m : members) {
        const FeatureMatrix xtr = select_rows(m, train);
        const FeatureMatrix xte = select_rows(m, test);
        const Classifier clf = fit_classifier(xtr.values, y_train, options.logreg);
        per_member.push_back(clf.predict_rows(xte.values));
      }
      std::vector<NodeId> test_ids;
      std::vector<RolePosterior> test_post;
      for (std::size_t t = 0; t < test.size(); ++t) {
        std::vector<RolePosterior> votes;
        for (const auto& pm : per_member) votes.push_back(pm[t]);
        test_post.push_back(ensemble(votes));
        test_ids.push_back(ids[test[t]]);
      }
      if (lp) {
        std::fill(lp->seeds.begin(), lp->seeds.end(), std::nullopt);
        for (std::size_t i : train) lp->set_seed(ids[i], lu.roles[i]);
        const LabelAssignment a = propagate(*lp, options.propagation);
        note_propagation(combo, a, result.notes);
        test_post = combine_with_classifier(*lp, a, test_ids, test_post);
      }
      for (std::size_t t = 0; t < test.size(); ++t) pooled[test[t]] = test_post[t];
    }
    result.reports.push_back(evaluate(combo.display_name(), lu.roles, decide_all(pooled)));
    result.predictions.push_back({combo.display_name(), ids, std::move(pooled)});
  }
  return result;
}

ExperimentResult run_t2(const ExperimentInputs& in,
                        std::span<const FeatureCombination> combinations,
                        const ExperimentOptions& options) {
  require_index(in);
  const auto ids = user_ids(in.users);
  ExperimentResult result;

  // Scoring subset: users with a gold label.
  std::vector<std::size_t> scored;
  std::vector<Role> gold;
  if (in.labels) {
    for (std::size_t i = 0; i < in.users.size(); ++i) {
      auto it = in.labels->find(in.users[i]);
      if (it == in.labels->end()) continue;
      scored.push_back(i);
      gold.push_back(it->second);
    }
  }
  auto score = [&](const std::string& method, std::span<const RolePosterior> post) {
    if (scored.empty()) {
      MetricsReport r;
      r.method = method;
      r.evaluated = false;
      return r;
    }
    std::vector<Role> pred;
    for (std::size_t i : scored) pred.push_back(decide(post[i]));
    return evaluate(method, gold, pred);
  };
  if (!scored.empty()) {
    result.reports.push_back(majority_baseline(class_counts(gold)));
  } else {
    MetricsReport r;
    r.method = "Baseline (majority class)";
    r.evaluated = false;
    result.reports.push_back(r);
  }

  for (const auto& combo : combinations) {
    std::vector<std::vector<RolePosterior>> per_member;
    for (const auto& names : combo.members) {
      const auto tables = lookup_tables(in, names);
      std::vector<std::string> skipped;
      const FeatureMatrix media = media_features(*in.index, tables, &skipped);
      std::size_t filled = 0;
      const FeatureMatrix users =
          concat_features(tables, ids, MissingRows::kZeroFill, &filled);
      if (filled > 0) {
        result.notes.push_back(combo.display_name() + ": " + std::to_string(filled) +
                               " user vectors zero-filled");
      }
      if (!skipped.empty()) {
        result.notes.push_back(combo.display_name() + ": " +
                               std::to_string(skipped.size()) +
                               " media without citing users skipped");
      }
      per_member.push_back(
          train_proxy_predict_users(media, *in.media, users, options.logreg));
    }
    std::vector<RolePosterior> post(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::vector<RolePosterior> votes;
      for (const auto& pm : per_member) votes.push_back(pm[i]);
      post[i] = ensemble(votes);
    }
    if (combo.lp != LpMode::kNone) {
      SimilarityGraph g = build_lp_graph(in, combo, in.users, options, result.notes);
      for (const auto& rec : in.media->records()) {
        g.set_seed(NodeId::media(rec.domain), map_bias_to_role(rec.bias));
      }
      const LabelAssignment a = propagate(g, options.propagation);
      note_propagation(combo, a, result.notes);
      post = combine_with_classifier(g, a, ids, post);
    }
    result.reports.push_back(score(combo.display_name(), post));
    result.predictions.push_back({combo.display_name(), ids, std::move(post)});
  }
  return result;
}

ExperimentResult run_reverse(const ExperimentInputs& in,
                             std::span<const FeatureCombination> combinations,
                             const ExperimentOptions& options) {
  require_index(in);
  const LabelledUsers lu = labelled_users(in);
  const auto ids = user_ids(lu.handles);
  ExperimentResult result;

  // Media represented by every table any combination uses, so that all rows
  // are scored on the same media.
  std::vector<std::string> all_names;
  for (const auto& c : combinations) {
    if (c.lp != LpMode::kNone) {
      throw ConfigError("label propagation is not defined for reverse classification");
    }
    for (const auto& n : c.table_names()) {
      if (std::find(all_names.begin(), all_names.end(), n) == all_names.end()) {
        all_names.push_back(n);
      }
    }
  }
  std::vector<std::string> skipped;
  const FeatureMatrix common =
      media_features(*in.index, lookup_tables(in, all_names), &skipped);
  std::vector<NodeId> media_ids;
  std::vector<Role> gold;
  for (const auto& id : common.ids) {
    if (auto b = in.media->bias_of(id.name)) {
      media_ids.push_back(id);
      gold.push_back(map_bias_to_role(*b));
    }
  }
  if (!skipped.empty()) {
    result.notes.push_back(std::to_string(skipped.size()) +
                           " media without citing users skipped");
  }
  if (media_ids.empty()) throw ConfigError("no represented media to classify");
  result.reports.push_back(majority_baseline(class_counts(gold), "Baseline (majority)"));

  for (const auto& combo : combinations) {
    std::vector<std::vector<RolePosterior>> per_member;
    for (const auto& names : combo.members) {
      const auto tables = lookup_tables(in, names);
      const FeatureMatrix users = concat_features(tables, ids, MissingRows::kZeroFill);
      std::vector<const EmbeddingTable*> media_tables;
      std::vector<MediaRepresentation> reps;
      for (const auto* t : tables) reps.push_back(media_representation(*in.index, *t));
      for (const auto& r : reps) media_tables.push_back(&r.table);
      const FeatureMatrix media = concat_features(media_tables, media_ids);
      const auto preds = reverse_classify(users, lu.roles, media, options.logreg);
      std::vector<RolePosterior> post;
      for (const auto& p : preds) post.push_back(p.posterior);
      per_member.push_back(std::move(post));
    }
    std::vector<RolePosterior> post(media_ids.size());
    for (std::size_t i = 0; i < media_ids.size(); ++i) {
      std::vector<RolePosterior> votes;
      for (const auto& pm : per_member) votes.push_back(pm[i]);
      post[i] = ensemble(votes);
    }
    result.reports.push_back(evaluate(combo.display_name(), gold, decide_all(post)));
    result.predictions.push_back({combo.display_name(), media_ids, std::move(post)});
  }
  return result;
}

// ---------------------------------------------------------------------------

void print_reports(std::ostream& out, std::span<const MetricsReport> reports) {
  std::size_t width = std::string_view("Method").size();
  for (const auto& r : reports) width = std::max(width, r.method.size());
  out << std::left << std::setw(static_cast<int>(width)) << "Method" << "  "
      << std::right << std::setw(8) << "Accuracy" << "  " << std::setw(8) << "Macro F1"
      << "  " << std::setw(6) << "n" << '\n';
  out << std::string(width + 28, '-') << '\n';
  for (const auto& r : reports) {
    out << std::left << std::setw(static_cast<int>(width)) << r.method << "  ";
    if (!r.evaluated) {
      out << "evaluation skipped\n";
      continue;
    }
    out << std::right << std::setw(8) << format_fixed(r.accuracy, 1) << "  "
        << std::setw(8) << format_fixed(r.macro_f1, 1) << "  " << std::setw(6) << r.n
        << '\n';
  }
}

void write_reports_csv(std::ostream& out, std::span<const MetricsReport> reports) {
  write_csv_row(out, {"method", "evaluated", "n", "accuracy", "macro_f1", "f1_left",
                      "f1_news", "f1_right"});
  for (const auto& r : reports) {
    if (!r.evaluated) {
      write_csv_row(out, {r.method, "false", "0", "", "", "", "", ""});
      continue;
    }
    write_csv_row(out, {r.method, "true", std::to_string(r.n), format_fixed(r.accuracy, 4),
                        format_fixed(r.macro_f1, 4), format_fixed(100.0 * r.f1[0], 4),
                        format_fixed(100.0 * r.f1[1], 4), format_fixed(100.0 * r.f1[2], 4)});
  }
}

// ---------------------------------------------------------------------------

CorpusEmbeddings embed_corpus(const std::vector<TweetRecord>& tweets,
                              const EmbedSettings& settings) {
  settings.walks.validate();
  settings.sgns.validate();
  std::vector<TweetRecord> selected;
  const std::vector<TweetRecord>* source = &tweets;
  if (settings.target_roles_only) {
    for (const auto& t : tweets) {
      if (t.role) selected.push_back(t);
    }
    source = &selected;
  }
  std::set<std::string> authors;
  for (const auto& t : *source) authors.insert(t.author);

  CorpusEmbeddings out;
  out.u2h = build_u2h(*source);
  out.u2m = build_u2m(*source);
  auto train = [&](const NodeGraph& g, const char* name) {
    EmbeddingTable full = g.empty() ? EmbeddingTable(settings.sgns.dim)
                                    : node2vec(g, settings.walks, settings.sgns);
    EmbeddingTable kept(settings.sgns.dim, name);
    for (std::size_t i = 0; i < full.size(); ++i) {
      const NodeId& id = full.ids()[i];
      if (settings.keep_tokens ||
          (id.kind == NodeKind::kUser && authors.count(id.name))) {
        kept.add(id, full.row(i));
      }
    }
    return kept;
  };
  out.u2h_vectors = train(out.u2h, "u2h");
  out.u2m_vectors = train(out.u2m, "u2m");
  return out;
}

}  // namespace trollrole
