#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "trollrole/experiments.h"

namespace trollrole::cli {

// Every setting the subcommands read. Filled from the key=value config file
// and then from command-line flags of the same name.
struct RunConfig {
  std::string command;

  // Inputs.
  std::string tweets;
  std::string media;
  std::string expansion;
  std::string text_embeddings;
  std::string labels;  // defaults to <out_dir>/labels.csv
  bool no_labels = false;

  std::string out_dir = "out";
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  bool deterministic = false;

  // Embedding.
  std::size_t dims = 128;
  std::size_t walk_length = 80;
  std::size_t walks_per_node = 10;
  double p = 1.0;
  double q = 1.0;
  std::size_t window = 10;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double learning_rate = 0.025;
  bool keep_tokens = false;
  bool target_only = false;

  // Experiments.
  std::vector<std::string> features;
  double lambda = 1.0;
  std::size_t max_iterations = 5000;
  double tau = 0.55;
  std::size_t folds = 5;
  std::size_t max_rounds = 100;

  // dump-graph.
  std::string graph = "u2h";
  std::string output;

  std::size_t effective_workers() const { return deterministic ? 1 : workers; }
  std::filesystem::path out_path() const { return out_dir; }
  std::filesystem::path labels_path() const;

  // Throws ConfigError on out-of-range values.
  void validate() const;

  EmbedSettings embed_settings() const;
  ExperimentOptions experiment_options() const;

  // "# key=value" lines for every setting, sorted by key.
  std::vector<std::string> provenance() const;
};

}  // namespace trollrole::cli
