#include "cli/run_config.h"

#include <charconv>
#include <map>

#include "trollrole/errors.h"

namespace trollrole::cli {
namespace {

std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

std::filesystem::path RunConfig::labels_path() const {
  return labels.empty() ? out_path() / "labels.csv" : std::filesystem::path(labels);
}

void RunConfig::validate() const {
  embed_settings().walks.validate();
  embed_settings().sgns.validate();
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  if (!(tau >= -1.0 && tau <= 1.0)) throw ConfigError("tau must be in [-1, 1]");
  if (folds < 1) throw ConfigError("folds must be >= 1");
  if (max_rounds < 1) throw ConfigError("max_rounds must be >= 1");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (out_dir.empty()) throw ConfigError("out_dir must not be empty");
}

EmbedSettings RunConfig::embed_settings() const {
  EmbedSettings s;
  s.walks.p = p;
  s.walks.q = q;
  s.walks.walk_length = walk_length;
  s.walks.walks_per_node = walks_per_node;
  s.walks.seed = seed;
  s.walks.workers = effective_workers();
  s.sgns.dim = dims;
  s.sgns.window = window;
  s.sgns.negatives = negatives;
  s.sgns.epochs = epochs;
  s.sgns.learning_rate = learning_rate;
  s.sgns.seed = seed;
  s.sgns.workers = effective_workers();
  s.keep_tokens = keep_tokens;
  s.target_roles_only = target_only;
  return s;
}

ExperimentOptions RunConfig::experiment_options() const {
  ExperimentOptions o;
  o.logreg.l2 = lambda;
  o.logreg.max_iterations = max_iterations;
  o.tau = tau;
  o.folds = folds;
  o.seed = seed;
  o.propagation.max_rounds = max_rounds;
  return o;
}

std::vector<std::string> RunConfig::provenance() const {
  std::map<std::string, std::string> kv = {
      {"command", command},
      {"tweets", tweets},
      {"media", media},
      {"expansion", expansion},
      {"text_embeddings", text_embeddings},
      {"labels", no_labels ? "(withheld)" : labels_path().string()},
      {"out_dir", out_dir},
      {"seed", std::to_string(seed)},
      {"workers", std::to_string(effective_workers())},
      {"deterministic", deterministic ? "true" : "false"},
      {"dims", std::to_string(dims)},
      {"walk_length", std::to_string(walk_length)},
      {"walks_per_node", std::to_string(walks_per_node)},
      {"p", num(p)},
      {"q", num(q)},
      {"window", std::to_string(window)},
      {"negatives", std::to_string(negatives)},
      {"epochs", std::to_string(epochs)},
      {"learning_rate", num(learning_rate)},
      {"keep_tokens", keep_tokens ? "true" : "false"},
      {"target_only", target_only ? "true" : "false"},
      {"lambda", num(lambda)},
      {"max_iterations", std::to_string(max_iterations)},
      {"tau", num(tau)},
      {"folds", std::to_string(folds)},
      {"max_rounds", std::to_string(max_rounds)},
  };
  std::string feats;
  for (const auto& f : features) feats += (feats.empty() ? "" : ",") + f;
  kv["features"] = feats;
  std::vector<std::string> out;
  out.push_back("# trollrole 0.1.0");
  for (const auto& [k, v] : kv) out.push_back("# " + k + "=" + v);
  return out;
}

}  // namespace trollrole::cli
