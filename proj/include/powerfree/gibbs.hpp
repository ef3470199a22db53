#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "powerfree/entropy.hpp"
#include "powerfree/errors.hpp"
#include "powerfree/gluing.hpp"
#include "powerfree/language.hpp"
#include "powerfree/rational.hpp"
#include "powerfree/structure.hpp"

namespace powerfree {

// Float strictly below the exact value of (1/a) log b; scaling empirical
// masses by e^{j h} with this h keeps every reported ratio conservative.
inline double lower_float(const LogBound& bound) {
  double x = bound.value();
  double pad = std::fabs(x) * 1e-13 + 1e-300;
  return x - pad;
}

// The window the empirical measure averages over: every length-n word that
// stays admissible under some m-symbol extension on both sides.
struct MeasureBase {
  LanguageSpec spec;
  int n;
  int m;
  std::vector<Word> words;
};

inline MeasureBase measure_base(const LanguageSpec& spec, int n, int m) {
  std::vector<Word> words = ext_words(spec, n, m);
  if (words.empty())
    fail(Errc::empty_language, "no base words of length " + std::to_string(n));
  return MeasureBase{spec, n, m, std::move(words)};
}

// Occurrence counts of every length-j cylinder across all offsets of all
// base words.  Total count is (n - j + 1) * #base exactly.
inline std::map<std::string, std::uint64_t> cylinder_counts(const MeasureBase& base,
                                                            int j, int threads = 1) {
  if (j < 1 || j > base.n) fail(Errc::bad_input, "cylinder length outside window");
  std::size_t offsets = static_cast<std::size_t>(base.n - j + 1);
  std::size_t nthreads = threads < 1 ? 1 : static_cast<std::size_t>(threads);
  if (nthreads > base.words.size()) nthreads = base.words.size() ? base.words.size() : 1;
  std::vector<std::map<std::string, std::uint64_t>> partial(nthreads);
  auto run = [&](std::size_t t) {
    std::size_t lo = base.words.size() * t / nthreads;
    std::size_t hi = base.words.size() * (t + 1) / nthreads;
    for (std::size_t i = lo; i < hi; ++i) {
      std::string s = base.words[i].str();
      for (std::size_t k = 0; k < offsets; ++k)
        ++partial[t][s.substr(k, static_cast<std::size_t>(j))];
    }
  };
  if (nthreads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  std::map<std::string, std::uint64_t> counts = std::move(partial[0]);
  for (std::size_t t = 1; t < nthreads; ++t)
    for (const auto& [word, c] : partial[t]) counts[word] += c;
  return counts;
}

// Offset-averaged frequency of v across the base: the average over the
// n - |v| + 1 positions keeping v inside the window of the fraction of base
// words showing v there.
inline Rational empirical_measure(const MeasureBase& base, const Word& v) {
  int j = static_cast<int>(v.size());
  if (j > base.n) fail(Errc::bad_input, "cylinder longer than the window");
  if (j == 0) return 1;
  std::string needle = v.str();
  std::uint64_t hits = 0;
  std::size_t offsets = static_cast<std::size_t>(base.n - j + 1);
  for (const Word& w : base.words) {
    std::string s = w.str();
    for (std::size_t k = 0; k < offsets; ++k)
      if (s.compare(k, needle.size(), needle) == 0) ++hits;
  }
  return Rational(BigInt(hits), BigInt(offsets) * BigInt(base.words.size()));
}

struct GibbsRow {
  Word v;
  Rational mass;
  double ratio;  // mass * e^{j h_lo}, h_lo rounded down
};

struct GibbsReport {
  LanguageSpec spec;
  int n, m, j;
  LogBound h_lo;
  double h_lo_float;
  std::vector<GibbsRow> rows;  // one per length-j word with power-free affixes
  Rational min_mass;
  Word argmin;
  bool all_positive;

  nlohmann::json to_json() const {
    nlohmann::json dist = nlohmann::json::array();
    for (const GibbsRow& r : rows)
      dist.push_back({{"word", r.v.str()},
                      {"mass", to_string(r.mass)},
                      {"ratio", r.ratio}});
    return nlohmann::json{{"spec", spec.id()},
                          {"n", n},
                          {"m", m},
                          {"j", j},
                          {"h_lo", h_lo.to_json()},
                          {"h_lo_float", h_lo_float},
                          {"rows", dist},
                          {"min_mass", to_string(min_mass)},
                          {"argmin", argmin.str()},
                          {"all_positive", all_positive}};
  }

  std::string to_csv() const {
    std::ostringstream out;
    out << "word,mass,ratio\n";
    for (const GibbsRow& r : rows)
      out << r.v.str() << ',' << to_string(r.mass) << ',' << r.ratio << '\n';
    return out.str();
  }
};

// Minimum of mass(v) e^{j h_lo} over the length-j words with power-free
// affixes.  A positive minimum is empirical evidence that the measure gives
// every such word at least c e^{-j h}; positivity is decided on the exact
// masses, the scaling is a float convenience.
inline GibbsReport gibbs_ratio_report(const LanguageSpec& spec, int n, int m, int j,
                                      int threads = 1) {
  if (j < 1 || j > n) fail(Errc::bad_input, "need 1 <= j <= n");
  GibbsReport report{spec, n, m, j, closed_form_lower_bound(spec), 0.0, {}, 0, Word{}, true};
  report.h_lo_float = lower_float(report.h_lo);
  MeasureBase base = measure_base(spec, n, m);
  auto counts = cylinder_counts(base, j, threads);
  BigInt denom = BigInt(n - j + 1) * BigInt(base.words.size());
  double scale = std::exp(static_cast<double>(j) * report.h_lo_float);
  bool first = true;
  for (const Word& v : enumerate_good(spec, j)) {
    auto it = counts.find(v.str());
    Rational mass = it == counts.end()
                        ? Rational(0)
                        : Rational(BigInt(it->second), denom);
    report.rows.push_back({v, mass, to_double(mass) * scale});
    if (first || mass < report.min_mass) {
      report.min_mass = mass;
      report.argmin = v;
      first = false;
    }
  }
  if (first) fail(Errc::empty_language, "no words to report on");
  report.all_positive = report.min_mass > 0;
  return report;
}

struct TwoStepReport {
  LanguageSpec spec;
  int n, m, T;
  Word u, v;
  Rational mass;   // offset-averaged joint cylinder frequency, exact
  double scaled;   // mass * e^{(|u|+|v|) h_lo}, h_lo rounded down
  LogBound h_lo;

  nlohmann::json to_json() const {
    return nlohmann::json{{"spec", spec.id()}, {"n", n},
                          {"m", m},           {"T", T},
                          {"u", u.str()},     {"v", v.str()},
                          {"mass", to_string(mass)}, {"scaled", scaled},
                          {"h_lo", h_lo.to_json()}};
  }
};

// Joint cylinder: u at offset k and v at offset k + |u| + T, averaged over
// every k keeping both inside the window.  The gap T is the four-word
// connector length for the regime.
inline TwoStepReport two_step_gibbs_report(const LanguageSpec& spec, int n, int m,
                                           const Word& u, const Word& v) {
  int T = four_word_T(spec);
  detail::require_good(u, spec);
  detail::require_good(v, spec);
  int span = static_cast<int>(u.size()) + T + static_cast<int>(v.size());
  if (span > n) fail(Errc::bad_input, "joint cylinder exceeds the window");
  MeasureBase base = measure_base(spec, n, m);
  std::string su = u.str(), sv = v.str();
  std::size_t offsets = static_cast<std::size_t>(n - span + 1);
  std::uint64_t hits = 0;
  for (const Word& w : base.words) {
    std::string s = w.str();
    for (std::size_t k = 0; k < offsets; ++k)
      if (s.compare(k, su.size(), su) == 0 &&
          s.compare(k + su.size() + static_cast<std::size_t>(T), sv.size(), sv) == 0)
        ++hits;
  }
  Rational mass(BigInt(hits), BigInt(offsets) * BigInt(base.words.size()));
  LogBound h_lo = closed_form_lower_bound(spec);
  double scaled = to_double(mass) *
                  std::exp(static_cast<double>(u.size() + v.size()) * lower_float(h_lo));
  return TwoStepReport{spec, n, m, T, u, v, mass, scaled, h_lo};
}

struct EmpiricalEntropyReport {
  LanguageSpec spec;
  int n, m, j;
  double entropy;      // H_j = sum of -p log p over length-j cylinders
  double per_symbol;   // H_j / j
  BigInt support;      // cylinders with positive mass
  BigInt language_count;  // admissible words of length j
  bool uniform;        // all positive masses equal (exact)
  Rational min_mass, max_mass;

  nlohmann::json to_json() const {
    return nlohmann::json{{"spec", spec.id()},
                          {"n", n},
                          {"m", m},
                          {"j", j},
                          {"entropy", entropy},
                          {"per_symbol", per_symbol},
                          {"support", support.str()},
                          {"language_count", language_count.str()},
                          {"uniform", uniform},
                          {"min_mass", to_string(min_mass)},
                          {"max_mass", to_string(max_mass)}};
  }
};

// Entropy of the offset-averaged cylinder distribution at length j.  Masses
// stay exact; only the logarithms are floats.  Sanity: the entropy can never
// exceed the log of the number of admissible length-j words.
inline EmpiricalEntropyReport empirical_entropy(const LanguageSpec& spec, int n,
                                                int m, int j, int threads = 1) {
  if (j < 1 || j > n) fail(Errc::bad_input, "need 1 <= j <= n");
  MeasureBase base = measure_base(spec, n, m);
  auto counts = cylinder_counts(base, j, threads);
  BigInt denom = BigInt(n - j + 1) * BigInt(base.words.size());
  double H = 0;
  bool uniform = true;
  Rational min_mass, max_mass;
  bool first = true;
  for (const auto& [word, c] : counts) {
    Rational p(BigInt(c), denom);
    double pf = to_double(p);
    H -= pf * std::log(pf);
    if (first) {
      min_mass = max_mass = p;
      first = false;
    } else {
      if (p != min_mass) uniform = false;
      if (p < min_mass) min_mass = p;
      if (p > max_mass) max_mass = p;
    }
  }
  EmpiricalEntropyReport report{spec,
                                n,
                                m,
                                j,
                                H,
                                H / static_cast<double>(j),
                                BigInt(counts.size()),
                                count_words(spec, j),
                                uniform,
                                min_mass,
                                max_mass};
  if (report.support > report.language_count)
    throw std::logic_error("empirical support escaped the language");
  if (report.entropy > std::log(to_double(report.language_count)) + 1e-9)
    throw std::logic_error("empirical entropy exceeded log of its support bound");
  return report;
}

// L1 distance between the cylinder averages over offsets [0, K-1) and
// [1, K): how far the finite window is from shift invariance.  Shrinks as n
// grows; reported, never asserted.
inline Rational shift_discrepancy(const MeasureBase& base, int j) {
  if (j < 1 || j + 1 > base.n) fail(Errc::bad_input, "window too small to shift");
  std::size_t offsets = static_cast<std::size_t>(base.n - j + 1);
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> counts;
  for (const Word& w : base.words) {
    std::string s = w.str();
    for (std::size_t k = 0; k < offsets; ++k) {
      auto& slot = counts[s.substr(k, static_cast<std::size_t>(j))];
      if (k + 1 < offsets) ++slot.first;  // offsets 0..K-2
      if (k > 0) ++slot.second;           // offsets 1..K-1
    }
  }
  BigInt denom = BigInt(offsets - 1) * BigInt(base.words.size());
  Rational total = 0;
  for (const auto& [word, slot] : counts) {
    Rational a(BigInt(slot.first), denom), b(BigInt(slot.second), denom);
    total += a < b ? b - a : a - b;
  }
  return total;
}

}  // namespace powerfree
