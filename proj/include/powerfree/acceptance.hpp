#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "powerfree/entropy.hpp"
#include "powerfree/errors.hpp"
#include "powerfree/gibbs.hpp"
#include "powerfree/gluing.hpp"
#include "powerfree/language.hpp"
#include "powerfree/structure.hpp"
#include "powerfree/words_core.hpp"

namespace powerfree::acceptance {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

// Workloads for the final checks.  full() is the release gate; quick() keeps
// the same shape at a scale suited to an interactive run.
struct Scale {
  int oracle_n2 = 14, oracle_n3 = 9;
  std::uint64_t pair_samples = 100000;
  std::uint64_t quad_samples = 10000;
  std::uint64_t chain_samples = 200;
  int decomp_n = 10;
  int card_n3 = 12, card_m3 = 2;
  int card_n2 = 16, card_m2 = 3;
  int window_n = 12;
  std::uint64_t period_samples = 100000;
  int threads = 4;

  static Scale full() { return Scale{}; }
  static Scale quick() {
    Scale s;
    s.oracle_n2 = 10;
    s.oracle_n3 = 6;
    s.pair_samples = 2000;
    s.quad_samples = 1000;
    s.chain_samples = 50;
    s.decomp_n = 8;
    s.card_n3 = 8;
    s.card_m3 = 1;
    s.card_n2 = 10;
    s.card_m2 = 2;
    s.window_n = 8;
    s.period_samples = 10000;
    s.threads = 2;
    return s;
  }
};

namespace detail {

inline bool good_word(const Word& w, const LanguageSpec& spec) {
  return is_admissible(w, spec) && affix_power_free(w);
}

inline Word random_from(std::mt19937_64& rng, const std::vector<Word>& pool) {
  return pool[rng() % pool.size()];
}

inline Word nth_word(std::uint64_t index, int d, int n) {
  Word w;
  for (int i = 0; i < n; ++i) {
    w.push_back(static_cast<int>(index % static_cast<unsigned>(d)));
    index /= static_cast<unsigned>(d);
  }
  return w;
}

inline std::string plural(std::uint64_t k, const char* noun) {
  return std::to_string(k) + " " + noun + (k == 1 ? "" : "s");
}

inline Rational rational_pow(const Rational& r, long long a) {
  return Rational(ipow(numerator(r), static_cast<unsigned>(a)),
                  ipow(denominator(r), static_cast<unsigned>(a)));
}

}  // namespace detail

inline CriterionResult squarefree_binary_words() {
  LanguageSpec spec(2, make_rational(2), Mode::free);
  std::vector<std::string> found;
  for (int n = 1; n <= 6; ++n)
    for (const Word& w : enumerate_words(spec, n)) found.push_back(w.str());
  std::vector<std::string> expected{"0", "1", "01", "10", "010", "101"};
  bool ok = found == expected;
  std::string detail = "nonempty words:";
  for (const auto& s : found) detail += " " + s;
  return {1, "square-free binary words are exactly six", ok, detail};
}

inline CriterionResult checker_matches_direct_scan(const Scale& scale) {
  std::vector<LanguageSpec> specs;
  for (int d : {2, 3}) {
    specs.emplace_back(d, make_rational(2), Mode::free);
    specs.emplace_back(d, make_rational(7, 3), Mode::plus);
    specs.emplace_back(d, make_rational(3), Mode::free);
    specs.emplace_back(d, make_rational(4), Mode::free);
    specs.emplace_back(d, make_rational(8), Mode::free);
    specs.emplace_back(d, make_rational(12), Mode::free);
    specs.emplace_back(d, make_rational(12), Mode::plus);
    specs.emplace_back(d, make_rational(16), Mode::free);
  }
  std::uint64_t checked = 0;
  for (const LanguageSpec& spec : specs) {
    int n_max = spec.d() == 2 ? scale.oracle_n2 : scale.oracle_n3;
    for (int n = 0; n <= n_max; ++n) {
      std::uint64_t total = 1;
      for (int i = 0; i < n; ++i) total *= static_cast<unsigned>(spec.d());
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        Word w = detail::nth_word(idx, spec.d(), n);
        if (is_admissible(w, spec) != is_admissible_oracle(w, spec))
          return {2, "incremental checker matches the direct scan", false,
                  "disagreement on '" + w.str() + "' under " + spec.id()};
        ++checked;
      }
    }
  }
  return {2, "incremental checker matches the direct scan", true,
          detail::plural(checked, "word-spec pair") + " agreed"};
}

inline CriterionResult overlap_boundary_on_thue_morse() {
  Word tm;
  for (unsigned long long i = 0; i < 64; ++i)
    tm.push_back(__builtin_popcountll(i) & 1);
  LanguageSpec plus(2, make_rational(2), Mode::plus);
  LanguageSpec free_(2, make_rational(2), Mode::free);
  bool ok = is_admissible(tm, plus) && !is_admissible(tm, free_);
  auto witness = admissibility_witness(tm, free_);
  std::string detail = witness ? "square witness " + witness->render()
                               : "missing square witness";
  ok = ok && witness.has_value();
  return {3, "the 64-symbol Thue-Morse prefix splits the overlap boundary", ok,
          detail};
}

inline CriterionResult short_good_counts() {
  struct Row {
    int d;
    Mode mode;
    std::size_t expect;
  };
  bool ok = true;
  std::string detail;
  for (const Row& row : {Row{2, Mode::free, 14}, Row{2, Mode::plus, 14},
                         Row{3, Mode::free, 78}, Row{4, Mode::free, 252}}) {
    LanguageSpec spec(row.d, make_rational(12), row.mode);
    std::size_t got = enumerate_good(spec, 4).size();
    ok = ok && got == row.expect;
    detail += "#G4(" + spec.id() + ")=" + std::to_string(got) + " ";
  }
  std::size_t g8 = enumerate_good(LanguageSpec(2, make_rational(12), Mode::plus), 8).size();
  ok = ok && g8 == 194 && g8 >= 188;
  detail += "#G8(d2 plus)=" + std::to_string(g8);
  return {4, "short power-free-affix counts match their closed forms", ok, detail};
}

inline CriterionResult block_word_growth() {
  bool ok = true;
  std::string detail;
  for (int d : {2, 3})
    for (Mode mode : {Mode::free, Mode::plus}) {
      LanguageSpec spec(d, make_rational(12), mode);
      try {
        AstarReport rep = astar_growth_check(spec, 4, AstarRoute::compose);
        for (const auto& row : rep.rows) ok = ok && row.margin >= 0;
        ok = ok && !rep.zero_lengths.empty();
        detail += spec.id() + ": counts";
        for (const auto& row : rep.rows) detail += " " + row.count.str();
        detail += "; ";
      } catch (const std::exception& e) {
        return {5, "block-word growth stays under its cap", false, e.what()};
      }
    }
  return {5, "block-word growth stays under its cap", ok, detail};
}

inline CriterionResult growth_gap_witnesses() {
  struct Expect {
    int d;
    Mode mode;
    int lhs, rhs;
  };
  bool ok = true;
  std::string detail;
  for (const Expect& e : {Expect{3, Mode::free, 6, 26}, Expect{2, Mode::plus, 16, 47},
                          Expect{4, Mode::free, 8, 63}}) {
    GapReport rep = entropy_gap_verdict(LanguageSpec(e.d, make_rational(12), e.mode));
    ok = ok && rep.holds && rep.lhs_witness == e.lhs && rep.rhs_witness == e.rhs;
    detail += rep.lhs_witness.str() + "<" + rep.rhs_witness.str() + " ";
  }
  return {6, "the language outgrows its block words by integer witnesses", ok, detail};
}

inline CriterionResult enclosure_consistency(const Scale& scale) {
  bool ok = true;
  std::string detail;
  {
    LanguageSpec spec(3, make_rational(12), Mode::free);
    CountTable table = count_table(spec, scale.card_n3, 0, TableOptions{});
    LogBound hi = best_upper_bound(table);
    LogBound lo{4, 26};
    ok = ok && compare(lo, hi) < 0;
    detail += "d3: 26^" + std::to_string(hi.a) + "<" + hi.b.str() + "^4; ";
  }
  {
    LanguageSpec spec(2, make_rational(12), Mode::plus);
    CountTable table = count_table(spec, scale.card_n2, 0, TableOptions{});
    LogBound hi = best_upper_bound(table);
    LogBound lo{8, 47};
    ok = ok && compare(lo, hi) < 0;
    detail += "d2 plus: 47^" + std::to_string(hi.a) + "<" + hi.b.str() + "^8";
  }
  return {7, "the growth bounds nest at the largest enumerated length", ok, detail};
}

inline CriterionResult same_length_gluing_exhaustive(const Scale& scale) {
  std::uint64_t glued = 0, failures = 0;
  std::string first_failure;
  auto run_pair = [&](const Word& v, const Word& w, const LanguageSpec& spec, int tau) {
    try {
      GlueCertificate cert = glue_same_length(v, w, spec);
      bool fine = detail::good_word(cert.result, spec) &&
                  cert.result.size() == v.size() + w.size() + static_cast<std::size_t>(tau) &&
                  cert.claim == GlueClaim::in_good;
      if (!fine) throw std::runtime_error("certificate invariants broken");
      ++glued;
    } catch (const std::exception& e) {
      ++failures;
      if (first_failure.empty())
        first_failure = v.str() + "+" + w.str() + ": " + e.what();
    }
  };
  for (int d : {3, 2}) {
    LanguageSpec spec(d, make_rational(12), d == 2 ? Mode::plus : Mode::free);
    int tau = same_length_tau(spec);
    std::vector<Word> pool4 = enumerate_good(spec, 4);
    for (const Word& v : pool4)
      for (const Word& w : pool4) run_pair(v, w, spec, tau);
    std::mt19937_64 rng(0xC8 + static_cast<unsigned>(d));
    for (int n = 5; n <= 8; ++n) {
      std::vector<Word> pool = enumerate_good(spec, n);
      for (std::uint64_t i = 0; i < scale.pair_samples; ++i)
        run_pair(detail::random_from(rng, pool), detail::random_from(rng, pool), spec,
                 tau);
    }
  }
  return {8, "same-length gluing never fails", failures == 0,
          failures == 0 ? detail::plural(glued, "pair") + " glued"
                        : first_failure};
}

inline CriterionResult four_word_gluing(const Scale& scale) {
  struct Regime {
    LanguageSpec spec;
    std::vector<int> lengths;
  };
  std::vector<Regime> regimes{
      {LanguageSpec(2, make_rational(16), Mode::free), {4, 6}},
      {LanguageSpec(3, make_rational(12), Mode::free), {4, 5, 6}},
      {LanguageSpec(2, make_rational(12), Mode::plus), {4, 5, 6}}};
  std::uint64_t verified = 0;
  for (const Regime& rg : regimes) {
    int T = four_word_T(rg.spec);
    std::vector<Word> pool;
    for (int n : rg.lengths)
      for (const Word& w : enumerate_good(rg.spec, n)) pool.push_back(w);
    std::mt19937_64 rng(0xC9 + static_cast<unsigned>(rg.spec.d()) + static_cast<unsigned>(T));
    for (std::uint64_t i = 0; i < scale.quad_samples; ++i) {
      Word u = detail::random_from(rng, pool), v = detail::random_from(rng, pool);
      Word w = detail::random_from(rng, pool), x = detail::random_from(rng, pool);
      try {
        GlueCertificate cert = glue_four(u, v, w, x, rg.spec);
        Word rebuilt = cert.inputs[0];
        for (std::size_t k = 1; k < 4; ++k)
          rebuilt = rebuilt + cert.connectors[k - 1] + cert.inputs[k];
        bool fine = cert.result == rebuilt &&
                    cert.connectors[0].size() == static_cast<std::size_t>(T) &&
                    is_admissible_oracle(cert.result, rg.spec);
        if (!fine) throw std::runtime_error("certificate invariants broken");
        ++verified;
      } catch (const std::exception& e) {
        return {9, "four-word gluing lands in the language", false,
                rg.spec.id() + " " + u.str() + "," + v.str() + "," + w.str() + "," +
                    x.str() + ": " + e.what()};
      }
    }
  }
  return {9, "four-word gluing lands in the language", true,
          detail::plural(verified, "quadruple") + " oracle-verified"};
}

inline CriterionResult chain_gluing(const Scale& scale) {
  bool ok = true;
  std::string detail_text;
  std::uint64_t chains = 0;
  for (int d : {3, 2}) {
    LanguageSpec spec(d, make_rational(12), d == 2 ? Mode::plus : Mode::free);
    std::size_t tau = static_cast<std::size_t>(same_length_tau(spec));
    std::mt19937_64 rng(0xC10 + static_cast<unsigned>(d));
    for (std::size_t k : {3u, 4u, 5u, 8u}) {
      for (std::uint64_t i = 0; i < scale.chain_samples; ++i) {
        std::size_t n = 4 + rng() % 2;
        std::vector<Word> pool = enumerate_good(spec, static_cast<int>(n));
        std::vector<Word> words;
        for (std::size_t t = 0; t < k; ++t)
          words.push_back(detail::random_from(rng, pool));
        GlueCertificate cert = glue_chain(words, spec);
        bool pow2 = (k & (k - 1)) == 0;
        bool fine = cert.result.size() == k * n + (k - 1) * tau &&
                    is_admissible(cert.result, spec) &&
                    cert.claim == (pow2 ? GlueClaim::in_good : GlueClaim::in_language) &&
                    (!pow2 || detail::good_word(cert.result, spec));
        if (!fine) {
          ok = false;
          detail_text = "chain of " + std::to_string(k) + " under " + spec.id();
        }
        ++chains;
      }
    }
    std::vector<Word> pool4 = enumerate_good(spec, 4);
    std::set<std::string> outputs;
    for (const Word& v : pool4)
      for (const Word& w : pool4)
        outputs.insert(glue_chain({v, w}, spec).result.str());
    if (outputs.size() != pool4.size() * pool4.size()) {
      ok = false;
      detail_text = "pair gluing collided under " + spec.id();
    }
  }
  if (ok)
    detail_text = detail::plural(chains, "chain") + " verified, pair map injective";
  return {10, "chain gluing keeps its length law and stays injective", ok, detail_text};
}

inline CriterionResult decomposition_totality(const Scale& scale) {
  std::uint64_t decomposed = 0;
  for (int d : {2, 3})
    for (Mode mode : {Mode::free, Mode::plus}) {
      LanguageSpec spec(d, make_rational(12), mode);
      for (int n = 0; n <= scale.decomp_n; ++n) {
        for (const Word& w : enumerate_words(spec, n)) {
          Decomposition dec = decompose(w, spec);
          Word rebuilt = dec.prefix + dec.core + dec.suffix;
          bool fine = rebuilt == w && detail::good_word(dec.core, spec) &&
                      is_power_concat(dec.prefix, spec) &&
                      is_power_concat(dec.suffix, spec) &&
                      is_admissible(dec.prefix, spec) &&
                      is_admissible(dec.suffix, spec);
          for (std::size_t len = dec.prefix.size() + 1; fine && len <= w.size(); ++len)
            if (is_power_concat(w.subword(0, len), spec)) fine = false;
          Word rest = w.subword(dec.prefix.size(), w.size() - dec.prefix.size());
          for (std::size_t len = dec.suffix.size() + 1; fine && len <= rest.size();
               ++len)
            if (is_power_concat(rest.subword(rest.size() - len, len), spec))
              fine = false;
          if (!fine)
            return {11, "every admissible word splits into blocks and a good core",
                    false, "failed on '" + w.str() + "' under " + spec.id()};
          ++decomposed;
        }
      }
    }
  return {11, "every admissible word splits into blocks and a good core", true,
          detail::plural(decomposed, "word") + " decomposed"};
}

inline CriterionResult extendable_counts_floor(const Scale& scale) {
  bool ok = true;
  std::string detail;
  {
    LanguageSpec spec(3, make_rational(12), Mode::free);
    CountTable table = count_table(spec, scale.card_n3, scale.card_m3, TableOptions{});
    Enclosure enc{spec, LogBound{4, 26}, best_upper_bound(table), "closed form"};
    CardReport rep = verify_card_bounds(spec, table, enc);
    ok = ok && rep.all_ok() && rep.rows.size() == static_cast<std::size_t>(scale.card_n3);
    for (const auto& row : rep.rows)
      if (row.n == 6 && scale.card_n3 >= 6) ok = ok && row.required == 133;
    detail += "d3: " + std::to_string(rep.rows.size()) + " rows clear; ";
  }
  {
    LanguageSpec spec(2, make_rational(12), Mode::plus);
    CountTable table = count_table(spec, scale.card_n2, scale.card_m2, TableOptions{});
    Enclosure enc{spec, LogBound{8, 47}, best_upper_bound(table), "closed form"};
    CardReport rep = verify_card_bounds(spec, table, enc);
    ok = ok && rep.all_ok();
    for (const auto& row : rep.rows)
      if (row.n == 8) {
        ok = ok && row.required == 47 && row.count == 256;
        detail += "d2 plus n=8: " + row.count.str() + ">=47";
      }
  }
  return {12, "extendable counts clear the growth floor", ok, detail};
}

inline CriterionResult empirical_mass_positivity(const Scale& scale) {
  LanguageSpec spec(3, make_rational(12), Mode::free);
  MeasureBase base = measure_base(spec, scale.window_n, 0);
  LogBound h_lo{4, 26};
  Rational prev_min;
  bool have_prev = false;
  bool ok = true;
  std::string detail;
  for (int j = 1; j <= 4; ++j) {
    auto counts = cylinder_counts(base, j, scale.threads);
    BigInt denom = BigInt(base.n - j + 1) * BigInt(base.words.size());
    BigInt total = 0;
    for (const auto& [word, c] : counts) total += c;
    ok = ok && total == denom;  // exact normalization of the masses
    Rational min_mass;
    bool first = true;
    for (const Word& v : enumerate_good(spec, j)) {
      auto it = counts.find(v.str());
      Rational mass = it == counts.end() ? Rational(0)
                                         : Rational(BigInt(it->second), denom);
      if (mass <= 0) {
        ok = false;
        detail = "zero mass on '" + v.str() + "' at j=" + std::to_string(j);
      }
      if (first || mass < min_mass) min_mass = mass, first = false;
    }
    // min mass * e^{j h_lo} nonincreasing in j, compared exactly through
    // mass^a * b^j since e^{a h_lo} = b.
    if (have_prev) {
      Rational lhs = detail::rational_pow(prev_min, h_lo.a) * ipow(h_lo.b, j - 1);
      Rational rhs = detail::rational_pow(min_mass, h_lo.a) * ipow(h_lo.b, j);
      if (lhs < rhs) {
        ok = false;
        detail = "scaled minimum increased at j=" + std::to_string(j);
      }
    }
    prev_min = min_mass;
    have_prev = true;
  }
  if (ok)
    detail = "window of " + detail::plural(base.words.size(), "word") +
             ", all short good cylinders covered";
  return {13, "empirical masses cover every short good word", ok, detail};
}

inline CriterionResult period_pairs_collapse(const Scale& scale) {
  std::mt19937_64 rng(0xC14);
  std::uint64_t tested = 0;
  for (std::uint64_t i = 0; i < scale.period_samples; ++i) {
    int d = 2 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 30);
    Word w;
    for (int t = 0; t < n; ++t) w.push_back(static_cast<int>(rng() % static_cast<unsigned>(d)));
    std::vector<int> ps = periods(w);
    std::set<int> pset(ps.begin(), ps.end());
    for (std::size_t a = 0; a < ps.size(); ++a)
      for (std::size_t b = a + 1; b < ps.size(); ++b) {
        int g = std::gcd(ps[a], ps[b]);
        if (ps[a] + ps[b] - g <= n && !pset.count(g))
          return {14, "compatible period pairs collapse to their gcd", false,
                  "violation on '" + w.str() + "'"};
        ++tested;
      }
  }
  return {14, "compatible period pairs collapse to their gcd", true,
          detail::plural(tested, "pair") + " checked"};
}

inline std::vector<CriterionResult> run_all(const Scale& scale) {
  std::vector<CriterionResult> out;
  out.push_back(squarefree_binary_words());
  out.push_back(checker_matches_direct_scan(scale));
  out.push_back(overlap_boundary_on_thue_morse());
  out.push_back(short_good_counts());
  out.push_back(block_word_growth());
  out.push_back(growth_gap_witnesses());
  out.push_back(enclosure_consistency(scale));
  out.push_back(same_length_gluing_exhaustive(scale));
  out.push_back(four_word_gluing(scale));
  out.push_back(chain_gluing(scale));
  out.push_back(decomposition_totality(scale));
  out.push_back(extendable_counts_floor(scale));
  out.push_back(empirical_mass_positivity(scale));
  out.push_back(period_pairs_collapse(scale));
  return out;
}

inline int report(const std::vector<CriterionResult>& results, std::ostream& out) {
  int failures = 0;
  for (const CriterionResult& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << (r.id < 10 ? "0" : "")
        << r.id << " " << r.name << ": " << r.detail << "\n";
    if (!r.passed) ++failures;
  }
  out << (failures == 0 ? "all criteria passed"
                        : std::to_string(failures) + " criteria failed")
      << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace powerfree::acceptance
