#pragma once

#include <optional>
#include <vector>

#include "powerfree/errors.hpp"
#include "powerfree/language_spec.hpp"
#include "powerfree/rational.hpp"
#include "powerfree/word.hpp"

namespace powerfree {

// All periods of w in increasing order; |w| is always one of them.
inline std::vector<int> periods(const Word& w) {
  if (w.empty()) fail(Errc::empty_word, "periods of empty word");
  int n = static_cast<int>(w.size());
  std::vector<int> out;
  for (int p = 1; p <= n; ++p) {
    bool ok = true;
    for (int i = 0; i + p < n; ++i)
      if (w[i] != w[i + p]) { ok = false; break; }
    if (ok) out.push_back(p);
  }
  return out;
}

inline int least_period(const Word& w) {
  if (w.empty()) fail(Errc::empty_word, "least period of empty word");
  int n = static_cast<int>(w.size());
  for (int p = 1; p < n; ++p) {
    bool ok = true;
    for (int i = 0; i + p < n; ++i)
      if (w[i] != w[i + p]) { ok = false; break; }
    if (ok) return p;
  }
  return n;
}

struct ExponentWitness {
  Word subword;        // the repetition itself
  std::size_t start;   // 0-based position in the ambient word
  int period;
  Rational exponent;   // |subword| / period

  // Rendering such as "(01)^5/2": base is the first `period` symbols.
  std::string render() const {
    return "(" + subword.subword(0, period).str() + ")^" + to_string(exponent);
  }
};

// The subword maximizing |s|/per(s), scanning every start/period pair and
// growing the longest run for each.  O(n^3); the reference for everything.
inline ExponentWitness max_exponent_witness(const Word& w) {
  if (w.empty()) fail(Errc::empty_word, "critical exponent of empty word");
  int n = static_cast<int>(w.size());
  int best_i = 0, best_p = 1, best_len = 1;
  for (int i = 0; i < n; ++i) {
    for (int p = 1; i + p < n; ++p) {
      int e = 0;
      while (i + p + e < n && w[i + e] == w[i + p + e]) ++e;
      int len = p + e;
      // len/p > best_len/best_p by cross multiplication
      if (static_cast<long long>(len) * best_p > static_cast<long long>(best_len) * p) {
        best_i = i; best_p = p; best_len = len;
      }
    }
  }
  return ExponentWitness{w.subword(best_i, best_len), static_cast<std::size_t>(best_i),
                         best_p, make_rational(best_len, best_p)};
}

inline Rational critical_exponent(const Word& w) { return max_exponent_witness(w).exponent; }

// Largest k with w[0,k) a prefix of (w[0,ell))^infinity, as the fraction k/ell.
inline Rational pre_count(const Word& w, int ell) {
  int n = static_cast<int>(w.size());
  if (ell < 1 || ell > n) fail(Errc::bad_index, "repetition prefix length out of range");
  int k = ell;
  while (k < n && w[k] == w[k - ell]) ++k;
  return make_rational(k, ell);
}

inline Rational suf_count(const Word& w, int ell) { return pre_count(w.reversed(), ell); }

// First alpha*|v| symbols of v^infinity; alpha >= 1 with integral alpha*|v|.
inline Word power(const Word& v, const Rational& alpha) {
  if (v.empty()) fail(Errc::empty_word, "power of empty word");
  if (alpha < 1) fail(Errc::bad_input, "power exponent below 1");
  BigInt num = boost::multiprecision::numerator(alpha);
  BigInt den = boost::multiprecision::denominator(alpha);
  BigInt nn(static_cast<unsigned>(v.size()));
  if (nn * num % den != 0)
    fail(Errc::non_integral_power, "exponent " + to_string(alpha) + " times length " +
                                       std::to_string(v.size()) + " is not an integer");
  auto len = static_cast<std::size_t>((nn * num / den).convert_to<unsigned long long>());
  std::vector<std::uint8_t> out(len);
  for (std::size_t j = 0; j < len; ++j) out[j] = static_cast<std::uint8_t>(v[j % v.size()]);
  return Word(std::move(out));
}

// Drops i symbols from the front and k from the back.
inline Word truncate(const Word& w, std::size_t i, std::size_t k) {
  if (i + k > w.size()) fail(Errc::bad_index, "truncation exceeds word length");
  return w.subword(i, w.size() - i - k);
}

// Direct cubic scan over all start/period pairs.  The slow trusted oracle;
// the incremental checker in language.hpp must agree with it everywhere.
inline bool is_admissible_oracle(const Word& w, const LanguageSpec& spec) {
  spec.require_symbols(w);
  int n = static_cast<int>(w.size());
  for (int i = 0; i < n; ++i) {
    for (int p = 1; i + p < n; ++p) {
      int e = 0;
      while (i + p + e < n && w[i + e] == w[i + p + e]) ++e;
      if (spec.forbids_exponent(p + e, p)) return false;
    }
  }
  return true;
}

// Maximum-exponent witness if w is inadmissible, nullopt otherwise.
inline std::optional<ExponentWitness> forbidden_witness(const Word& w,
                                                        const LanguageSpec& spec) {
  spec.require_symbols(w);
  if (w.empty()) return std::nullopt;
  ExponentWitness ew = max_exponent_witness(w);
  if (spec.forbids(ew.exponent)) return ew;
  return std::nullopt;
}

}  // namespace powerfree
