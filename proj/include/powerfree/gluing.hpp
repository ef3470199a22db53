#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "powerfree/errors.hpp"
#include "powerfree/language.hpp"
#include "powerfree/structure.hpp"
#include "powerfree/words_core.hpp"

namespace powerfree {

// Symbol the periodic structure of v wants next: appending anything else
// preserves every repetition prefix count up to ceil(|v|/2).  With no period
// that short, any symbol works and the smallest is returned.
inline int block_symbol(const Word& v) {
  if (v.empty()) fail(Errc::empty_word, "block symbol of empty word");
  int n = static_cast<int>(v.size());
  int half = (n + 1) / 2;
  for (int p = 1; p <= half; ++p) {
    bool ok = true;
    for (int i = 0; i + p < n; ++i)
      if (v[i] != v[i + p]) { ok = false; break; }
    if (ok) return v[n % p];  // continuation of (v[0,p))^infinity at index n
  }
  return 0;
}

// (a1, a2): a connector whose first symbol avoids a1 and last symbol avoids
// a2 leaves the prefix structure of v and the suffix structure of w alone.
inline std::pair<int, int> boundary_symbols(const Word& v, const Word& w) {
  if (v.empty() || w.empty()) fail(Errc::empty_word, "boundary symbols of empty word");
  return {block_symbol(v), block_symbol(w.reversed())};
}

// Connector length for same-length gluing: 1 needs a third symbol to dodge
// both boundary constraints, 2 threads them through separate positions.
inline int same_length_tau(const LanguageSpec& spec) {
  if (spec.d() >= 3 && spec.threshold_at_least(8)) return 1;
  if (spec.d() == 2 && spec.threshold_above(8)) return 2;
  fail(Errc::unsupported_regime,
       "same-length gluing needs d >= 3 with threshold >= 8, or d = 2 above 8");
}

// Connector length for four-word gluing.
inline int four_word_T(const LanguageSpec& spec) {
  if (spec.threshold_at_least(16)) return 0;
  if (spec.d() >= 3 && spec.threshold_at_least(12)) return 1;
  if (spec.d() == 2 && spec.threshold_above(12)) return 2;
  fail(Errc::unsupported_regime,
       "four-word gluing needs threshold >= 16, or d >= 3 with >= 12, or d = 2 above 12");
}

enum class GlueClaim { in_language, in_good };
enum class GlueLemma { gbg, gug, gggg, gpgqgrg, chain };

inline const char* to_cstring(GlueClaim c) {
  return c == GlueClaim::in_language ? "IN_LANGUAGE" : "IN_GOOD";
}

inline const char* to_cstring(GlueLemma l) {
  switch (l) {
    case GlueLemma::gbg:      return "GbG";
    case GlueLemma::gug:      return "GuG";
    case GlueLemma::gggg:     return "GGGG";
    case GlueLemma::gpgqgrg:  return "GpGqGrG";
    case GlueLemma::chain:    return "chain";
  }
  return "?";
}

struct GlueCertificate {
  std::vector<Word> inputs;
  std::vector<Word> connectors;  // one between each adjacent input pair
  Word result;
  GlueClaim claim;
  GlueLemma lemma;

  nlohmann::json to_json() const {
    nlohmann::json in = nlohmann::json::array(), conn = nlohmann::json::array();
    for (const auto& w : inputs) in.push_back(w.str());
    for (const auto& w : connectors) conn.push_back(w.str());
    return nlohmann::json{{"inputs", in},
                          {"connectors", conn},
                          {"result", result.str()},
                          {"claim", to_cstring(claim)},
                          {"lemma", to_cstring(lemma)},
                          {"connector_choice", "lex-min"}};
  }
};

namespace detail {

inline void require_good(const Word& w, const LanguageSpec& spec) {
  spec.require_symbols(w);
  if (!is_admissible(w, spec) || !affix_power_free(w))
    fail(Errc::bad_input, "input '" + w.str() + "' is not a good word");
}

inline int boundary_or_none(const Word& v) { return v.empty() ? -1 : block_symbol(v); }

inline int smallest_avoiding(int d, int a, int b) {
  for (int s = 0; s < d; ++s)
    if (s != a && s != b) return s;
  fail(Errc::unsupported_regime, "no symbol avoids both boundary constraints");
}

// Lexicographically smallest connector of the given length whose first
// symbol avoids the left constraint and last symbol the right one.
inline Word connector_between(const Word& left, const Word& right, int len,
                              const LanguageSpec& spec) {
  int a1 = boundary_or_none(left);
  int a2 = boundary_or_none(right.reversed());
  Word u;
  if (len == 0) return u;
  if (len == 1) {
    u.push_back(smallest_avoiding(spec.d(), a1, a2));
    return u;
  }
  u.push_back(smallest_avoiding(spec.d(), a1, -1));
  for (int i = 2; i < len; ++i) u.push_back(0);
  u.push_back(smallest_avoiding(spec.d(), a2, -1));
  return u;
}

}  // namespace detail

// Joins two equal-length good words into a good word with the regime's
// connector.  The choice follows the boundary symbols; the result is checked
// before the certificate is issued.
inline GlueCertificate glue_same_length(const Word& v, const Word& w,
                                        const LanguageSpec& spec) {
  int tau = same_length_tau(spec);
  detail::require_good(v, spec);
  detail::require_good(w, spec);
  if (v.size() != w.size())
    fail(Errc::bad_input, "same-length gluing requires equal lengths");
  Word u = detail::connector_between(v, w, tau, spec);
  Word result = v + u + w;
  if (!is_admissible(result, spec) || !affix_power_free(result))
    throw std::logic_error("glued word failed its goodness check");
  return GlueCertificate{{v, w},
                         {u},
                         std::move(result),
                         GlueClaim::in_good,
                         spec.d() >= 3 ? GlueLemma::gbg : GlueLemma::gug};
}

// Joins four good words (any lengths) into an admissible word with T-symbol
// connectors between neighbours.
inline GlueCertificate glue_four(const Word& u, const Word& v, const Word& w,
                                 const Word& x, const LanguageSpec& spec) {
  int T = four_word_T(spec);
  for (const Word* p : {&u, &v, &w, &x}) detail::require_good(*p, spec);
  Word p = detail::connector_between(u, v, T, spec);
  Word q = detail::connector_between(v, w, T, spec);
  Word r = detail::connector_between(w, x, T, spec);
  Word result = u + p + v + q + w + r + x;
  if (!is_admissible(result, spec))
    throw std::logic_error("four-word gluing produced an inadmissible word");
  return GlueCertificate{{u, v, w, x},
                         {p, q, r},
                         std::move(result),
                         GlueClaim::in_language,
                         T == 0 ? GlueLemma::gggg : GlueLemma::gpgqgrg};
}

namespace detail {

struct ChainPart {
  Word word;                    // glued word for this block, still good
  std::vector<Word> connectors; // in left-to-right order
};

inline ChainPart glue_pow2(const std::vector<Word>& words, std::size_t lo,
                           std::size_t hi, const LanguageSpec& spec) {
  if (hi - lo == 1) return {words[lo], {}};
  std::size_t mid = lo + (hi - lo) / 2;
  ChainPart left = glue_pow2(words, lo, mid, spec);
  ChainPart right = glue_pow2(words, mid, hi, spec);
  GlueCertificate cert = glue_same_length(left.word, right.word, spec);
  std::vector<Word> conns = std::move(left.connectors);
  conns.push_back(cert.connectors[0]);
  for (auto& c : right.connectors) conns.push_back(std::move(c));
  return {std::move(cert.result), std::move(conns)};
}

}  // namespace detail

// Joins any number of equal-length good words left to right.  Doubling glues
// pairs into good words of matching lengths; lists that are not a power of
// two are padded with copies of the last word and the result truncated back,
// which stays admissible because the language is closed under subwords.
inline GlueCertificate glue_chain(const std::vector<Word>& words,
                                  const LanguageSpec& spec) {
  if (words.empty()) fail(Errc::bad_input, "nothing to glue");
  for (const auto& w : words) detail::require_good(w, spec);
  for (const auto& w : words)
    if (w.size() != words[0].size())
      fail(Errc::length_mismatch, "chain gluing requires equal lengths");
  std::size_t k = words.size();
  if (k == 1)
    return GlueCertificate{{words[0]}, {}, words[0], GlueClaim::in_good,
                           GlueLemma::chain};
  if (k == 2) return glue_same_length(words[0], words[1], spec);

  int tau = same_length_tau(spec);
  std::size_t cap = 1;
  while (cap < k) cap <<= 1;
  std::vector<Word> padded = words;
  padded.resize(cap, words.back());
  detail::ChainPart glued = detail::glue_pow2(padded, 0, cap, spec);

  std::size_t n = words[0].size();
  std::size_t keep = k * n + (k - 1) * static_cast<std::size_t>(tau);
  Word result = truncate(glued.word, 0, glued.word.size() - keep);
  glued.connectors.resize(k - 1);
  bool untruncated = (cap == k);
  if (!is_admissible(result, spec) ||
      (untruncated && !affix_power_free(result)))
    throw std::logic_error("chained word failed its verification");
  return GlueCertificate{words, std::move(glued.connectors), std::move(result),
                         untruncated ? GlueClaim::in_good : GlueClaim::in_language,
                         GlueLemma::chain};
}

}  // namespace powerfree
