#pragma once

#include <random>

#include "powerfree/word.hpp"

namespace powerfree::testing {

// Prefix of the Thue-Morse sequence: t(0)=0, t(2n)=t(n), t(2n+1)=1-t(n).
inline Word thue_morse_prefix(std::size_t len) {
  Word w;
  for (std::size_t i = 0; i < len; ++i)
    w.push_back(__builtin_popcountll(i) & 1);
  return w;
}

inline Word random_word(std::mt19937_64& rng, int d, std::size_t len) {
  Word w;
  std::uniform_int_distribution<int> dist(0, d - 1);
  for (std::size_t i = 0; i < len; ++i) w.push_back(dist(rng));
  return w;
}

}  // namespace powerfree::testing
