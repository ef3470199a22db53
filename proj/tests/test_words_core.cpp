#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "powerfree/words_core.hpp"

using namespace powerfree;

namespace {

// Independent route: a period iff the word equals its own shift on the overlap.
std::vector<int> periods_by_overlap(const Word& w) {
  std::vector<int> out;
  int n = static_cast<int>(w.size());
  for (int p = 1; p <= n; ++p)
    if (w.subword(0, n - p) == w.subword(p, n - p)) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("periods of sample words") {
  CHECK(periods(Word::parse("banana")) == std::vector<int>{6});
  CHECK(periods(Word::parse("anana")) == std::vector<int>{2, 4, 5});
  CHECK(periods(Word::parse("aaaa")) == std::vector<int>{1, 2, 3, 4});
  CHECK(periods(Word::parse("0")) == std::vector<int>{1});
  CHECK(least_period(Word::parse("banana")) == 6);
  CHECK(least_period(Word::parse("anana")) == 2);
  CHECK_THROWS_AS(periods(Word{}), Error);
}

TEST_CASE("periods agree with the overlap formulation on random words") {
  std::mt19937_64 rng(20260819);
  for (int trial = 0; trial < 2000; ++trial) {
    int d = 2 + static_cast<int>(rng() % 3);
    auto w = testing::random_word(rng, d, 1 + rng() % 24);
    CHECK(periods(w) == periods_by_overlap(w));
  }
}

TEST_CASE("Fine and Wilf on random words") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10000; ++trial) {
    int d = 2 + static_cast<int>(rng() % 3);
    auto w = testing::random_word(rng, d, 1 + rng() % 30);
    auto ps = periods(w);
    int n = static_cast<int>(w.size());
    for (int a : ps)
      for (int b : ps) {
        int g = std::gcd(a, b);
        if (a + b - g <= n) {
          bool found = std::find(ps.begin(), ps.end(), g) != ps.end();
          CHECK(found);
        }
      }
  }
}

TEST_CASE("short periods are multiples of the least one") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10000; ++trial) {
    auto w = testing::random_word(rng, 2 + rng() % 2, 1 + rng() % 28);
    auto ps = periods(w);
    int n = static_cast<int>(w.size());
    int half = (n + 1) / 2;
    int least = 0;
    for (int p : ps) {
      if (p > half) break;
      if (least == 0) least = p;
      CHECK(p % least == 0);
    }
  }
}

TEST_CASE("critical exponent of sample words") {
  CHECK(critical_exponent(Word::parse("banana")) == Rational(5, 2));
  CHECK(critical_exponent(Word::parse("alfalfa")) == Rational(7, 3));
  CHECK(critical_exponent(Word::parse("dodo")) == Rational(2));
  CHECK(critical_exponent(Word::parse("ab")) == Rational(1));
  CHECK(critical_exponent(Word::parse("0")) == Rational(1));

  auto ew = max_exponent_witness(Word::parse("banana"));
  CHECK(ew.subword == Word::parse("anana"));
  CHECK(ew.period == 2);
  CHECK(ew.start == 1);
  CHECK(ew.render() == "(an)^5/2");
  CHECK_THROWS_AS(critical_exponent(Word{}), Error);
}

TEST_CASE("critical exponent equals max over subwords of len over least period") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 400; ++trial) {
    auto w = testing::random_word(rng, 2 + rng() % 2, 1 + rng() % 16);
    Rational best(1);
    int n = static_cast<int>(w.size());
    for (int i = 0; i < n; ++i)
      for (int len = 1; i + len <= n; ++len) {
        auto s = w.subword(i, len);
        Rational e = make_rational(len, least_period(s));
        if (e > best) best = e;
      }
    CHECK(critical_exponent(w) == best);
  }
}

TEST_CASE("repetition prefix and suffix counts") {
  CHECK(pre_count(Word::parse("aaab"), 1) == Rational(3));
  CHECK(pre_count(Word::parse("anana"), 2) == Rational(5, 2));
  CHECK(pre_count(Word::parse("banana"), 6) == Rational(1));
  CHECK(suf_count(Word::parse("baaa"), 1) == Rational(3));
  CHECK(suf_count(Word::parse("anana"), 2) == Rational(5, 2));
  CHECK_THROWS_AS(pre_count(Word::parse("ab"), 0), Error);
  CHECK_THROWS_AS(pre_count(Word::parse("ab"), 3), Error);
}

TEST_CASE("prefix count reaches n over ell exactly on periods") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    auto w = testing::random_word(rng, 2 + rng() % 3, 1 + rng() % 20);
    int n = static_cast<int>(w.size());
    auto ps = periods(w);
    for (int ell = 1; ell <= n; ++ell) {
      bool is_period = std::find(ps.begin(), ps.end(), ell) != ps.end();
      if (is_period) CHECK(pre_count(w, ell) == make_rational(n, ell));
      else CHECK(pre_count(w, ell) < make_rational(n, ell));
    }
  }
}

TEST_CASE("prefix count at least 4 iff a prefix is a fourth power") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 3000; ++trial) {
    auto w = testing::random_word(rng, 2, 1 + rng() % 14);
    int n = static_cast<int>(w.size());
    bool via_count = false, via_prefix = false;
    for (int ell = 1; ell <= n; ++ell)
      if (pre_count(w, ell) >= 4) via_count = true;
    for (int ell = 1; 4 * ell <= n; ++ell)
      if (w.subword(0, 4 * ell) == power(w.subword(0, ell), Rational(4)))
        via_prefix = true;
    CHECK(via_count == via_prefix);
  }
}

TEST_CASE("fractional powers") {
  CHECK(power(Word::parse("an"), Rational(5, 2)) == Word::parse("anana"));
  CHECK(power(Word::parse("do"), Rational(2)) == Word::parse("dodo"));
  CHECK(power(Word::parse("alf"), Rational(7, 3)) == Word::parse("alfalfa"));
  CHECK(power(Word::parse("ba"), Rational(1)) == Word::parse("ba"));
  CHECK_THROWS_AS(power(Word::parse("ab"), Rational(4, 3)), Error);
  CHECK_THROWS_AS(power(Word{}, Rational(2)), Error);
  CHECK_THROWS_AS(power(Word::parse("ab"), Rational(1, 2)), Error);
}

TEST_CASE("power exponent is recovered by the critical exponent") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1500; ++trial) {
    int len = 1 + static_cast<int>(rng() % 5);
    auto v = testing::random_word(rng, 2 + rng() % 2, len);
    int num = len + 1 + static_cast<int>(rng() % (3 * len));  // alpha in (1, 4]
    Rational alpha = make_rational(num, len);
    auto w = power(v, alpha);
    CHECK(static_cast<int>(w.size()) == num);
    CHECK(critical_exponent(w) >= alpha);
    CHECK(pre_count(w, len) >= alpha);
  }
}

TEST_CASE("truncation drops symbols from both ends") {
  CHECK(truncate(Word::parse("abcde"), 1, 2) == Word::parse("bc"));
  CHECK(truncate(Word::parse("abcde"), 0, 0) == Word::parse("abcde"));
  CHECK(truncate(Word::parse("ab"), 1, 1) == Word{});
  CHECK_THROWS_AS(truncate(Word::parse("ab"), 2, 1), Error);
}

TEST_CASE("direct admissibility scan on classic words") {
  LanguageSpec sqf(2, Rational(2), Mode::free);
  LanguageSpec ovf(2, Rational(2), Mode::plus);
  CHECK(is_admissible_oracle(Word::parse("010"), sqf));
  CHECK_FALSE(is_admissible_oracle(Word::parse("0101"), sqf));
  CHECK_FALSE(is_admissible_oracle(Word::parse("00"), sqf));
  CHECK(is_admissible_oracle(Word{}, sqf));

  auto tm = testing::thue_morse_prefix(16);
  CHECK(tm.subword(0, 8) == Word::parse("01101001"));
  CHECK(is_admissible_oracle(tm, ovf));
  CHECK_FALSE(is_admissible_oracle(tm, sqf));

  LanguageSpec b4(2, Rational(4), Mode::free);
  LanguageSpec b4p(2, Rational(4), Mode::plus);
  CHECK_FALSE(is_admissible_oracle(Word::parse("0000"), b4));
  CHECK(is_admissible_oracle(Word::parse("0000"), b4p));
  CHECK_FALSE(is_admissible_oracle(Word::parse("00000"), b4p));

  CHECK_THROWS_AS(is_admissible_oracle(Word::parse("012"), sqf), Error);
}

TEST_CASE("witnesses accompany every rejection") {
  LanguageSpec sqf(2, Rational(2), Mode::free);
  auto ew = forbidden_witness(Word::parse("0101"), sqf);
  REQUIRE(ew.has_value());
  CHECK(ew->subword == Word::parse("0101"));
  CHECK(ew->period == 2);
  CHECK(ew->exponent == Rational(2));
  CHECK(ew->render() == "(01)^2");
  CHECK_FALSE(forbidden_witness(Word::parse("010"), sqf).has_value());
}
