#pragma once

#include <cstdint>
#include <string>

#include "powerfree/errors.hpp"
#include "powerfree/rational.hpp"
#include "powerfree/word.hpp"

namespace powerfree {

// FREE forbids exponents >= beta, PLUS forbids exponents > beta.
enum class Mode { free, plus };

inline const char* to_cstring(Mode m) { return m == Mode::free ? "free" : "plus"; }

class LanguageSpec {
 public:
  LanguageSpec(int d, Rational beta, Mode mode = Mode::free)
      : d_(d), beta_(std::move(beta)), mode_(mode) {
    if (d_ < 2 || d_ > kMaxAlphabet) fail(Errc::bad_input, "alphabet size out of range");
    if (beta_ <= 1) fail(Errc::bad_input, "power threshold must exceed 1");
    BigInt num = boost::multiprecision::numerator(beta_);
    BigInt den = boost::multiprecision::denominator(beta_);
    if (num > INT64_MAX / 4 || den > INT64_MAX / 4)
      fail(Errc::bad_input, "power threshold components too large");
    num_ = num.convert_to<std::int64_t>();
    den_ = den.convert_to<std::int64_t>();
  }

  int d() const noexcept { return d_; }
  const Rational& beta() const noexcept { return beta_; }
  Mode mode() const noexcept { return mode_; }
  std::int64_t beta_num() const noexcept { return num_; }
  std::int64_t beta_den() const noexcept { return den_; }

  // Whether a repetition of the given length over the given period is
  // forbidden, i.e. length/period >= beta (FREE) or > beta (PLUS).
  // Exact cross-multiplication; no floats.
  bool forbids_exponent(std::int64_t length, std::int64_t period) const noexcept {
    std::int64_t lhs = length * den_, rhs = num_ * period;
    return mode_ == Mode::free ? lhs >= rhs : lhs > rhs;
  }

  bool forbids(const Rational& exponent) const {
    return mode_ == Mode::free ? exponent >= beta_ : exponent > beta_;
  }

  // Ordered comparisons of the pair (beta, mode) against an integer
  // threshold: a PLUS spec sits strictly above the FREE spec at equal beta.
  bool threshold_at_least(std::int64_t t) const { return beta_ >= t; }
  bool threshold_above(std::int64_t t) const {
    return beta_ > t || (beta_ == t && mode_ == Mode::plus);
  }

  bool valid_symbol(int s) const noexcept { return s >= 0 && s < d_; }

  void require_symbols(const Word& w) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (!valid_symbol(w[i]))
        fail(Errc::bad_symbol, "symbol " + std::string(1, symbol_to_char(w[i])) +
                                   " outside alphabet of size " + std::to_string(d_));
  }

  // Stable identifier used in cache records and reports.
  std::string id() const {
    return "d" + std::to_string(d_) + "-b" + std::to_string(num_) + "_" +
           std::to_string(den_) + "-" + to_cstring(mode_);
  }

  bool operator==(const LanguageSpec& o) const noexcept {
    return d_ == o.d_ && num_ == o.num_ && den_ == o.den_ && mode_ == o.mode_;
  }

 private:
  int d_;
  Rational beta_;
  Mode mode_;
  std::int64_t num_, den_;
};

}  // namespace powerfree
