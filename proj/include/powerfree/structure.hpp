#pragma once

#include <stdexcept>
#include <vector>

#include "powerfree/errors.hpp"
#include "powerfree/language.hpp"
#include "powerfree/language_spec.hpp"
#include "powerfree/word.hpp"

namespace powerfree {

namespace detail {

// Power concatenations are built from blocks v^power; the block power is a
// parameter internally but every public surface runs it at 4.
constexpr int kBlockPower = 4;

inline bool prefix_is_power(const std::uint8_t* w, std::size_t n, std::size_t ell,
                            int power) {
  std::size_t need = ell * static_cast<std::size_t>(power);
  if (need > n) return false;
  for (std::size_t j = ell; j < need; ++j)
    if (w[j] != w[j - ell]) return false;
  return true;
}

inline bool suffix_is_power(const std::uint8_t* w, std::size_t n, std::size_t ell,
                            int power) {
  std::size_t need = ell * static_cast<std::size_t>(power);
  if (need > n) return false;
  for (std::size_t j = n - need; j + ell < n; ++j)
    if (w[j] != w[j + ell]) return false;
  return true;
}

}  // namespace detail

// No prefix and no suffix of w is a power-th power.  This is the
// combinatorial half of goodness; bases of such powers are subwords of w, so
// no separate admissibility test on them is ever needed.
inline bool affix_power_free(const Word& w, int power = detail::kBlockPower) {
  const auto& b = w.data();
  std::size_t n = b.size();
  for (std::size_t ell = 1; ell * static_cast<std::size_t>(power) <= n; ++ell) {
    if (detail::prefix_is_power(b.data(), n, ell, power)) return false;
    if (detail::suffix_is_power(b.data(), n, ell, power)) return false;
  }
  return true;
}

// Good words: admissible, with no four-power prefix or suffix.
inline bool is_good(const Word& w, const LanguageSpec& spec) {
  if (!is_admissible(w, spec))
    fail(Errc::not_in_language, "word '" + w.str() + "' is inadmissible");
  return affix_power_free(w);
}

inline std::vector<Word> enumerate_good(const LanguageSpec& spec, int n) {
  std::vector<Word> out;
  for_each_word(spec, n, [&](const Word& w) {
    if (affix_power_free(w)) out.push_back(w);
  });
  return out;
}

namespace detail {

// flags[j] = prefix of length j splits into power-blocks.  Bases are
// subwords of w, hence admissible whenever w is; the split needs only the
// length and period tests per segment.
inline std::vector<char> block_prefix_flags(const Word& w, int power = kBlockPower) {
  const auto& b = w.data();
  std::size_t n = b.size();
  std::vector<char> flags(n + 1, 0);
  flags[0] = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (!flags[i]) continue;
      std::size_t len = j - i;
      if (len % static_cast<std::size_t>(power) != 0) continue;
      std::size_t p = len / static_cast<std::size_t>(power);
      bool periodic = true;
      for (std::size_t t = i; t + p < j; ++t)
        if (b[t] != b[t + p]) { periodic = false; break; }
      if (periodic) { flags[j] = 1; break; }
    }
  }
  return flags;
}

}  // namespace detail

// Whether w splits into four-power blocks of admissible bases.
inline bool is_power_concat(const Word& w, const LanguageSpec& spec) {
  if (!is_admissible(w, spec))
    fail(Errc::not_in_language, "word '" + w.str() + "' is inadmissible");
  return detail::block_prefix_flags(w).back() != 0;
}

struct Decomposition {
  Word prefix;  // longest block-concatenation prefix
  Word core;    // good remainder
  Word suffix;  // longest block-concatenation suffix fitting after the prefix
};

// Greedy two-sided split: the longest block prefix, then the longest block
// suffix of what remains.  Maximality of both forces the core to carry no
// four-power affix.
inline Decomposition decompose(const Word& w, const LanguageSpec& spec) {
  if (!is_admissible(w, spec))
    fail(Errc::not_in_language, "word '" + w.str() + "' is inadmissible");
  auto flags = detail::block_prefix_flags(w);
  std::size_t prefix_len = w.size();
  while (flags[prefix_len] == 0) --prefix_len;
  Word remainder = w.subword(prefix_len, w.size() - prefix_len);
  auto rflags = detail::block_prefix_flags(remainder.reversed());
  std::size_t suffix_len = remainder.size();
  while (rflags[suffix_len] == 0) --suffix_len;
  Decomposition out{w.subword(0, prefix_len),
                    remainder.subword(0, remainder.size() - suffix_len),
                    remainder.subword(remainder.size() - suffix_len, suffix_len)};
  if (!affix_power_free(out.core))
    throw std::logic_error("decomposition core kept a four-power affix");
  return out;
}

}  // namespace powerfree
