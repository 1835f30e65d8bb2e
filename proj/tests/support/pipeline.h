#pragma once

// In-process pipeline over a synthetic corpus, shared by the experiment
// tests and the acceptance binary.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "trollrole/experiments.h"
#include "trollrole/synthetic.h"

namespace fixture {

struct Pipeline {
  trollrole::SyntheticCorpus corpus;
  std::vector<trollrole::TweetRecord> tweets;
  trollrole::MediaList media;
  trollrole::ExpansionMap expansion;
  trollrole::MediaCitationIndex index;
  trollrole::CorpusEmbeddings embeddings;
  std::map<std::string, trollrole::Role> labels;

  // Tables "u2h", "u2m", "text"; users are the labelled authors.
  trollrole::ExperimentInputs inputs(bool with_labels = true) const;
};

// Parses the corpus through the CSV readers, builds the index and trains
// node2vec with `embed`.
std::unique_ptr<Pipeline> build(const trollrole::SyntheticConfig& config,
                                const trollrole::EmbedSettings& embed);

// Walk and skip-gram settings small enough for unit-test budgets.
trollrole::EmbedSettings quick_settings(std::size_t dim, std::uint64_t seed);

}  // namespace fixture
