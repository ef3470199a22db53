#pragma once

#include <json.hpp>

#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "powerfree/errors.hpp"
#include "powerfree/gluing.hpp"
#include "powerfree/language.hpp"
#include "powerfree/rational.hpp"
#include "powerfree/structure.hpp"

namespace powerfree {

// An exact growth-rate bound of the form (1/a) log b.  All comparisons go
// through unbounded-integer powers so no verdict depends on rounding.
struct LogBound {
  long long a = 1;
  BigInt b = 1;

  double value() const { return std::log(to_double(Rational(b))) / static_cast<double>(a); }

  nlohmann::json to_json() const {
    return nlohmann::json{{"a", a}, {"b", b.str()}, {"value", value()}};
  }
};

// Sign of (1/a1)log b1 - (1/a2)log b2.
inline int compare(const LogBound& x, const LogBound& y) {
  BigInt lhs = ipow(x.b, y.a), rhs = ipow(y.b, x.a);
  return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

inline const LogBound& max_bound(const LogBound& x, const LogBound& y) {
  return compare(x, y) < 0 ? y : x;
}

inline const LogBound& min_bound(const LogBound& x, const LogBound& y) {
  return compare(y, x) < 0 ? y : x;
}

// Each finite n certifies (1/n) log of the length-n count from above because
// the counts are submultiplicative.
inline LogBound upper_entropy_bound(const CountTable& table, int n) {
  const BigInt& count = table.at(n, 0);
  if (count == 0)
    fail(Errc::empty_language, "no words of length " + std::to_string(n));
  return LogBound{n, count};
}

// Exact minimum over every length the table knows.
inline LogBound best_upper_bound(const CountTable& table) {
  bool have = false;
  LogBound best;
  for (const auto& [key, count] : table.entries()) {
    if (key.second != 0 || key.first < 1) continue;
    LogBound cand{key.first, count};
    if (count == 0)
      fail(Errc::empty_language,
           "no words of length " + std::to_string(key.first));
    if (!have || compare(cand, best) < 0) best = cand, have = true;
  }
  if (!have) fail(Errc::missing_data, "no counts available for an upper bound");
  return best;
}

// Closed-form floor on the growth rate in the gluing regime.
inline LogBound closed_form_lower_bound(const LanguageSpec& spec) {
  same_length_tau(spec);  // regime gate
  if (spec.d() >= 3) {
    BigInt d = spec.d();
    return LogBound{4, d * d * d - 1};
  }
  return LogBound{8, 47};
}

// Best of the closed form and log(count)/(n + tau) over the supplied counts
// of words with power-free affixes.  Chains of k such words stay in the
// language, which pushes the growth rate above each quotient.
inline LogBound lower_entropy_bound(const LanguageSpec& spec,
                                    const std::map<int, BigInt>& good_counts) {
  int tau = same_length_tau(spec);
  LogBound best = closed_form_lower_bound(spec);
  for (const auto& [n, count] : good_counts) {
    if (n < 1 || count <= 1) continue;
    best = max_bound(best, LogBound{n + tau, count});
  }
  return best;
}

struct Enclosure {
  LanguageSpec spec;
  LogBound h_lo;
  LogBound h_hi;
  std::string provenance;

  nlohmann::json to_json() const {
    return nlohmann::json{{"spec", spec.id()},
                          {"h_lo", h_lo.to_json()},
                          {"h_hi", h_hi.to_json()},
                          {"provenance", provenance}};
  }
};

inline Enclosure make_enclosure(const LanguageSpec& spec, const CountTable& table,
                                const std::map<int, BigInt>& good_counts) {
  LogBound lo = lower_entropy_bound(spec, good_counts);
  LogBound hi = best_upper_bound(table);
  if (compare(lo, hi) > 0)
    throw std::logic_error("lower entropy bound exceeds upper entropy bound");
  std::string prov = "lower: best of closed form and " +
                     std::to_string(good_counts.size()) +
                     " power-free-affix counts; upper: count quotient at n = " +
                     std::to_string(hi.a);
  return Enclosure{spec, lo, hi, std::move(prov)};
}

// How the words built from 4-power blocks are counted.
enum class AstarRoute { compose, enumerate_filter };

struct AstarReport {
  struct Row {
    int k;
    BigInt count;   // admissible length-4k words splitting into 4-power blocks
    BigInt cap;     // (2d)^k / 2
    BigInt margin;  // cap - count
  };
  std::vector<Row> rows;
  std::vector<int> zero_lengths;  // lengths not divisible by 4, verified empty

  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const Row& r : rows)
      out.push_back({{"k", r.k},
                     {"count", r.count.str()},
                     {"cap", r.cap.str()},
                     {"margin", r.margin.str()}});
    return nlohmann::json{{"rows", out}, {"zero_lengths", zero_lengths}};
  }
};

namespace detail {

// Builds every concatenation of blocks z^4 (z admissible) of total length 4k
// and keeps the admissible distinct results.  The tuple count is at most
// (2d)^k / 2, so this stays small even where the plain language is huge.
inline void compose_block_words(const LanguageSpec& spec, int k_left,
                                const Word& acc,
                                const std::vector<std::vector<Word>>& bases,
                                std::set<std::string>& out) {
  if (k_left == 0) {
    if (is_admissible(acc, spec)) out.insert(acc.str());
    return;
  }
  for (int j = 1; j <= k_left; ++j)
    for (const Word& z : bases[static_cast<std::size_t>(j)])
      compose_block_words(spec, k_left - j, acc + power(z, make_rational(4)),
                          bases, out);
}

}  // namespace detail

// Counts, for each k <= k_max, the admissible words of length 4k that split
// into 4-power blocks, and checks them against the (2d)^k / 2 cap.  Also
// verifies no word of length not divisible by 4 splits this way.
inline AstarReport astar_growth_check(const LanguageSpec& spec, int k_max,
                                      AstarRoute route = AstarRoute::compose,
                                      int threads = 1) {
  if (k_max < 1) fail(Errc::bad_input, "need k_max >= 1");
  AstarReport report;
  std::vector<std::vector<Word>> bases(static_cast<std::size_t>(k_max) + 1);
  if (route == AstarRoute::compose)
    for (int j = 1; j <= k_max; ++j)
      bases[static_cast<std::size_t>(j)] = enumerate_words(spec, j, threads);
  for (int k = 1; k <= k_max; ++k) {
    BigInt count = 0;
    if (route == AstarRoute::compose) {
      std::set<std::string> words;
      detail::compose_block_words(spec, k, Word{}, bases, words);
      count = words.size();
    } else {
      for (const Word& w : enumerate_words(spec, 4 * k, threads))
        if (is_power_concat(w, spec)) ++count;
    }
    BigInt cap = ipow(BigInt(2 * spec.d()), k) / 2;
    if (count > cap)
      throw std::logic_error("block-word count exceeded its cap at k = " +
                             std::to_string(k));
    report.rows.push_back({k, count, cap, cap - count});
  }
  for (int n = 1; n < 4 * k_max && n <= 10; ++n) {
    if (n % 4 == 0) continue;
    for (const Word& w : enumerate_words(spec, n, threads))
      if (is_power_concat(w, spec))
        throw std::logic_error("length " + std::to_string(n) +
                               " word split into 4-power blocks");
    report.zero_lengths.push_back(n);
  }
  return report;
}

struct GapReport {
  LogBound block_growth;  // (1/4) log(2d), growth cap for block words
  LogBound language_growth;  // closed-form lower bound on the language
  BigInt lhs_witness;
  BigInt rhs_witness;  // gap holds iff lhs_witness < rhs_witness
  bool holds;

  nlohmann::json to_json() const {
    return nlohmann::json{{"block_growth", block_growth.to_json()},
                          {"language_growth", language_growth.to_json()},
                          {"lhs_witness", lhs_witness.str()},
                          {"rhs_witness", rhs_witness.str()},
                          {"holds", holds}};
  }
};

// The words built from 4-power blocks grow strictly slower than the whole
// language: (1/4) log(2d) < h_lo, decided by integer powers after putting
// both sides over a common denominator.
inline GapReport entropy_gap_verdict(const LanguageSpec& spec) {
  LogBound lhs{4, BigInt(2 * spec.d())};
  LogBound rhs = closed_form_lower_bound(spec);
  long long g = std::lcm(lhs.a, rhs.a);
  GapReport report;
  report.block_growth = lhs;
  report.language_growth = rhs;
  report.lhs_witness = ipow(lhs.b, g / lhs.a);
  report.rhs_witness = ipow(rhs.b, g / rhs.a);
  report.holds = report.lhs_witness < report.rhs_witness;
  return report;
}

// Exact rational upper bound on the correction factor Q: the squared
// geometric-series sum controlling how much block decorations can inflate
// the good-word count.
inline Rational q_constant_bound(const LanguageSpec& spec) {
  same_length_tau(spec);  // regime gate
  if (spec.d() >= 3) {
    BigInt d = spec.d();
    Rational q = 1 + Rational(d, d * d * d - 2 * d - 1);
    return q * q;
  }
  // 2/(sqrt(47) - 4) = 2 (sqrt(47) + 4)/31; an over-approximation of the
  // root from above keeps the bound an upper bound.
  Rational root = sqrt_upper_rational(47);
  Rational q = 1 + 2 * (root + 4) / 31;
  return q * q;
}

struct CardReport {
  struct Row {
    int n;
    int m;           // deepest extendability level the table holds for n
    BigInt count;    // words of length n extendable m more symbols both ways
    BigInt required; // ceil(b_lo^{n/a_lo})
    bool ok;         // count >= required
    double ratio;    // count / (C e^{(n+t) h_hi}), diagnostic only
  };
  std::vector<Row> rows;
  double c_constant;
  int t;

  bool all_ok() const {
    for (const Row& r : rows)
      if (!r.ok) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const Row& r : rows)
      out.push_back({{"n", r.n},
                     {"m", r.m},
                     {"count", r.count.str()},
                     {"required", r.required.str()},
                     {"ok", r.ok},
                     {"ratio", r.ratio}});
    return nlohmann::json{{"rows", out}, {"C", c_constant}, {"t", t}};
  }
};

// Checks the counting consequences of the enclosure: every extendability
// approximation of the length-n core count must reach ceil(e^{n h_lo}).  The
// upper side C e^{(n+t) h_hi} is reported as a ratio only, since the counts
// approximate the core language from above.
inline CardReport verify_card_bounds(const LanguageSpec& spec,
                                     const CountTable& table,
                                     const Enclosure& enclosure) {
  CardReport report;
  report.t = spec.d() >= 3 ? 1 : 2;
  report.c_constant = to_double(q_constant_bound(spec));
  std::map<int, int> deepest;
  for (const auto& entry : table.entries()) {
    auto it = deepest.find(entry.first.first);
    if (it == deepest.end() || it->second < entry.first.second)
      deepest[entry.first.first] = entry.first.second;
  }
  if (deepest.empty()) fail(Errc::missing_data, "count table is empty");
  for (const auto& [n, m] : deepest) {
    if (n < 1) continue;
    const BigInt& count = table.at(n, m);
    BigInt required = iroot_ceil(ipow(enclosure.h_lo.b, n), enclosure.h_lo.a);
    double cap = report.c_constant *
                 std::exp(static_cast<double>(n + report.t) *
                          enclosure.h_hi.value());
    report.rows.push_back({n, m, count, required, count >= required,
                           to_double(Rational(count)) / cap});
  }
  return report;
}

}  // namespace powerfree
