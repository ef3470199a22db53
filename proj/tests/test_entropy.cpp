#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "powerfree/entropy.hpp"
#include "powerfree/language.hpp"
#include "powerfree/structure.hpp"

using namespace powerfree;

namespace {

const LanguageSpec d3b12(3, make_rational(12), Mode::free);
const LanguageSpec d2b12p(2, make_rational(12), Mode::plus);
const LanguageSpec d2b12(2, make_rational(12), Mode::free);

CountTable filled_table(const LanguageSpec& spec, int n_max, int m_max) {
  return count_table(spec, n_max, m_max, TableOptions{});
}

}  // namespace

TEST_CASE("log-form bounds compare by integer powers") {
  CHECK(compare(LogBound{4, 6}, LogBound{4, 26}) < 0);
  CHECK(compare(LogBound{4, 4}, LogBound{8, 16}) == 0);  // both are log(sqrt(2))
  CHECK(compare(LogBound{4, 4}, LogBound{8, 47}) < 0);
  CHECK(compare(LogBound{5, 78}, LogBound{4, 26}) > 0);  // 78^4 > 26^5
  CHECK(compare(LogBound{1, 2}, LogBound{13, 8190}) > 0);
  CHECK(max_bound(LogBound{5, 78}, LogBound{4, 26}).b == 78);
  CHECK(min_bound(LogBound{5, 78}, LogBound{4, 26}).b == 26);
  CHECK(LogBound{1, 2}.value() == doctest::Approx(0.6931471805599453));
  nlohmann::json j = LogBound{4, 26}.to_json();
  CHECK(j["a"] == 4);
  CHECK(j["b"] == "26");
  CHECK(j["value"].get<double>() == doctest::Approx(std::log(26.0) / 4));
}

TEST_CASE("count quotients bound the growth rate from above") {
  CountTable table = filled_table(d2b12p, 13, 0);
  LogBound at8 = upper_entropy_bound(table, 8);
  CHECK(at8.a == 8);
  CHECK(at8.b == 256);  // nothing of length 8 is forbidden here
  LogBound at13 = upper_entropy_bound(table, 13);
  CHECK(at13.b == 8190);  // only the two constant words die
  LogBound best = best_upper_bound(table);
  CHECK(best.a == 13);
  CHECK(compare(best, LogBound{1, 2}) < 0);
  CHECK_THROWS_AS(upper_entropy_bound(table, 14), Error);

  CountTable dead = filled_table(LanguageSpec(2, make_rational(2), Mode::free), 4, 0);
  CHECK_THROWS_AS(upper_entropy_bound(dead, 4), Error);
  try {
    upper_entropy_bound(dead, 4);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_language);
  }
}

TEST_CASE("power-free-affix counts push the lower bound up") {
  CHECK(compare(closed_form_lower_bound(d3b12), LogBound{4, 26}) == 0);
  CHECK(compare(closed_form_lower_bound(d2b12p), LogBound{8, 47}) == 0);
  CHECK(compare(closed_form_lower_bound(LanguageSpec(4, make_rational(12), Mode::free)),
                LogBound{4, 63}) == 0);

  std::map<int, BigInt> counts;
  counts[4] = enumerate_good(d3b12, 4).size();
  REQUIRE(counts[4] == 78);
  LogBound lo = lower_entropy_bound(d3b12, counts);
  CHECK(lo.a == 5);
  CHECK(lo.b == 78);

  LogBound closed = lower_entropy_bound(d3b12, {});
  CHECK(closed.a == 4);
  CHECK(closed.b == 26);

  std::map<int, BigInt> counts2;
  counts2[8] = enumerate_good(d2b12p, 8).size();
  REQUIRE(counts2[8] == 194);
  LogBound lo2 = lower_entropy_bound(d2b12p, counts2);
  CHECK(lo2.a == 10);
  CHECK(lo2.b == 194);

  CHECK_THROWS_AS(lower_entropy_bound(LanguageSpec(2, make_rational(8), Mode::free), {}),
                  Error);
}

TEST_CASE("enclosures are exactly consistent") {
  CountTable table = filled_table(d3b12, 12, 0);
  std::map<int, BigInt> counts;
  counts[4] = 78;
  Enclosure enc = make_enclosure(d3b12, table, counts);
  CHECK(enc.h_lo.a == 5);
  CHECK(enc.h_lo.b == 78);
  CHECK(enc.h_hi.a == 12);
  CHECK(enc.h_hi.b == 531438);  // only the three constant words die by 12
  CHECK(compare(enc.h_lo, enc.h_hi) < 0);
  CHECK_FALSE(enc.provenance.empty());
  nlohmann::json j = enc.to_json();
  CHECK(j["h_lo"]["b"] == "78");
  CHECK(j["h_hi"]["b"] == "531438");
}

TEST_CASE("block-word counts stay below their cap on both routes") {
  AstarReport fast = astar_growth_check(d2b12, 3, AstarRoute::compose);
  AstarReport slow = astar_growth_check(d2b12, 3, AstarRoute::enumerate_filter);
  REQUIRE(fast.rows.size() == 3);
  REQUIRE(slow.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(fast.rows[i].count == slow.rows[i].count);
    CHECK(fast.rows[i].cap == slow.rows[i].cap);
    CHECK(fast.rows[i].margin >= 0);
  }
  CHECK(fast.rows[0].count == 2);  // the two constant 4-blocks
  CHECK(fast.rows[1].count == 6);
  CHECK(fast.rows[1].cap == 8);
  CHECK_FALSE(fast.zero_lengths.empty());

  AstarReport d3 = astar_growth_check(d3b12, 2, AstarRoute::compose);
  AstarReport d3slow = astar_growth_check(d3b12, 2, AstarRoute::enumerate_filter);
  CHECK(d3.rows[0].count == 3);
  CHECK(d3.rows[0].count == d3slow.rows[0].count);
  CHECK(d3.rows[1].count == d3slow.rows[1].count);
  CHECK(d3.rows[1].margin >= 0);

  AstarReport plus = astar_growth_check(d2b12p, 4, AstarRoute::compose);
  for (const auto& row : plus.rows) CHECK(row.margin >= 0);
}

TEST_CASE("the language outgrows its block words") {
  GapReport g3 = entropy_gap_verdict(d3b12);
  CHECK(g3.holds);
  CHECK(g3.lhs_witness == 6);
  CHECK(g3.rhs_witness == 26);

  GapReport g2 = entropy_gap_verdict(d2b12p);
  CHECK(g2.holds);
  CHECK(g2.lhs_witness == 16);  // (1/4) log 4 = (1/8) log 16
  CHECK(g2.rhs_witness == 47);

  GapReport g4 = entropy_gap_verdict(LanguageSpec(4, make_rational(12), Mode::free));
  CHECK(g4.holds);
  CHECK(g4.lhs_witness == 8);
  CHECK(g4.rhs_witness == 63);

  CHECK_THROWS_AS(entropy_gap_verdict(LanguageSpec(2, make_rational(8), Mode::free)),
                  Error);
  nlohmann::json j = g3.to_json();
  CHECK(j["holds"] == true);
  CHECK(j["lhs_witness"] == "6");
}

TEST_CASE("the correction constant is exact where rational") {
  CHECK(q_constant_bound(d3b12) == Rational(529, 400));
  CHECK(q_constant_bound(LanguageSpec(10, make_rational(12), Mode::free)) ==
        Rational(989, 979) * Rational(989, 979));
  Rational q2 = q_constant_bound(d2b12p);
  CHECK(q2 <= Rational(2892, 1000));
  CHECK(q2 > Rational(289, 100));  // the over-approximation is tight
  CHECK_THROWS_AS(q_constant_bound(LanguageSpec(2, make_rational(8), Mode::free)),
                  Error);
}

TEST_CASE("extendable counts clear the lower-bound floor") {
  CountTable table = filled_table(d3b12, 6, 2);
  std::map<int, BigInt> counts;
  counts[4] = 78;
  Enclosure enc = make_enclosure(d3b12, table, counts);
  Enclosure closed{d3b12, closed_form_lower_bound(d3b12), enc.h_hi, "closed"};
  CardReport report = verify_card_bounds(d3b12, table, closed);
  CHECK(report.t == 1);
  CHECK(report.all_ok());
  bool saw6 = false;
  for (const auto& row : report.rows)
    if (row.n == 6) {
      saw6 = true;
      CHECK(row.m == 2);
      CHECK(row.required == 133);  // ceil(26^(3/2))
      CHECK(row.count >= 133);
    }
  CHECK(saw6);

  CountTable t2 = filled_table(d2b12p, 8, 1);
  Enclosure enc2{d2b12p, closed_form_lower_bound(d2b12p),
                 best_upper_bound(t2), "closed"};
  CardReport report2 = verify_card_bounds(d2b12p, t2, enc2);
  CHECK(report2.t == 2);
  CHECK(report2.all_ok());
  for (const auto& row : report2.rows)
    if (row.n == 8) {
      CHECK(row.required == 47);
      CHECK(row.count == 256);
    }

  CountTable empty(d3b12, 0, 0);
  CHECK_THROWS_AS(verify_card_bounds(d3b12, empty, closed), Error);
  nlohmann::json j = report.to_json();
  CHECK(j["t"] == 1);
  CHECK(j["rows"].size() == report.rows.size());
}

TEST_CASE("iroot examples behind the floor computation") {
  CHECK(iroot_ceil(ipow(BigInt(26), 6), 4) == 133);
  CHECK(iroot_ceil(ipow(BigInt(47), 8), 8) == 47);
  CHECK(iroot_ceil(ipow(BigInt(26), 1), 4) == 3);  // 26^(1/4) rounds up to 3
}
