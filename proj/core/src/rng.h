#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace trollrole::internal {

// Generator keyed by a tuple of 64-bit values. std::seed_seq keeps only 32
// bits per entry, so each key is split into halves.
inline std::mt19937_64 keyed_rng(std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  words.reserve(keys.size() * 2);
  for (std::uint64_t k : keys) {
    words.push_back(static_cast<std::uint32_t>(k));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace trollrole::internal
