#pragma once

// Reference implementations used as test oracles. They favour obviousness
// over speed and share no code with the library.

#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trollrole/ingest.h"
#include "trollrole/role.h"

namespace oracle {

// ASCII-only tokenizer: `sigil` + [A-Za-z0-9_]+ not preceded by a word
// character, lowercased, first occurrence kept.
std::vector<std::string> sigil_tokens(std::string_view text, char sigil);

struct Scores {
  double accuracy = 0.0;  // percent
  double macro_f1 = 0.0;  // percent
};
Scores score(const std::vector<trollrole::Role>& gold,
             const std::vector<trollrole::Role>& pred);

// Undirected edges as sorted pairs of "kind:name" strings.
using EdgeSet = std::set<std::pair<std::string, std::string>>;

// LP1 by pairwise comparison of each user's hashtag and U2M-neighbour sets,
// plus user-media citation edges.
EdgeSet lp1_edges(const std::vector<trollrole::TweetRecord>& tweets,
                  const trollrole::MediaCitationIndex& index,
                  const std::vector<std::string>& users);

std::vector<trollrole::Role> random_roles(std::size_t n, std::mt19937_64& rng);

// Fresh empty directory under the system temp directory.
std::filesystem::path temp_dir(const std::string& name);

}  // namespace oracle
