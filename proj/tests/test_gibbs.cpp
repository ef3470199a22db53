#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>

#include "helpers.hpp"
#include "powerfree/gibbs.hpp"
#include "powerfree/language.hpp"
#include "powerfree/structure.hpp"

using namespace powerfree;

namespace {

const LanguageSpec d3b12(3, make_rational(12), Mode::free);
const LanguageSpec d2b12p(2, make_rational(12), Mode::plus);
const LanguageSpec d2b16(2, make_rational(16), Mode::free);

}  // namespace

TEST_CASE("the measure base is the extendable window set") {
  MeasureBase base = measure_base(d2b12p, 8, 0);
  CHECK(base.words.size() == 256);
  CHECK(base.n == 8);
  CHECK_THROWS_AS(measure_base(LanguageSpec(2, make_rational(2), Mode::free), 4, 0),
                  Error);
}

TEST_CASE("empirical masses average cylinder frequencies over offsets") {
  MeasureBase base = measure_base(d2b12p, 8, 0);
  CHECK(empirical_measure(base, Word{}) == Rational(1));
  CHECK(empirical_measure(base, Word::parse("0")) == Rational(1, 2));
  CHECK(empirical_measure(base, Word::parse("1")) == Rational(1, 2));

  Rational sum2 = 0;
  for (const std::string& s : {"00", "01", "10", "11"})
    sum2 += empirical_measure(base, Word::parse(s));
  CHECK(sum2 == Rational(1));

  CHECK_THROWS_AS(empirical_measure(base, Word::parse("010101010")), Error);
}

TEST_CASE("cylinder histograms are exact and thread-count independent") {
  MeasureBase base = measure_base(d3b12, 7, 1);
  for (int j : {1, 2, 3}) {
    auto seq = cylinder_counts(base, j, 1);
    auto par = cylinder_counts(base, j, 3);
    CHECK(seq == par);
    BigInt total = 0;
    for (const auto& [word, c] : seq) total += c;
    CHECK(total == BigInt(base.n - j + 1) * BigInt(base.words.size()));
    Rational mass_sum = 0;
    BigInt denom = BigInt(base.n - j + 1) * BigInt(base.words.size());
    for (const auto& [word, c] : seq) {
      mass_sum += Rational(BigInt(c), denom);
      CHECK(empirical_measure(base, Word::parse(word)) == Rational(BigInt(c), denom));
    }
    CHECK(mass_sum == Rational(1));
  }
  CHECK_THROWS_AS(cylinder_counts(base, 8), Error);
}

TEST_CASE("gibbs ratios are positive across the short good words") {
  GibbsReport report = gibbs_ratio_report(d3b12, 10, 0, 4);
  CHECK(report.rows.size() == 78);
  CHECK(report.all_positive);
  CHECK(report.min_mass > 0);
  CHECK(report.h_lo_float < report.h_lo.value());
  CHECK(report.h_lo_float == doctest::Approx(report.h_lo.value()));
  double scale = std::exp(4.0 * report.h_lo_float);
  bool saw_argmin = false;
  for (const GibbsRow& row : report.rows) {
    CHECK(row.ratio == doctest::Approx(to_double(row.mass) * scale));
    if (row.v == report.argmin) {
      saw_argmin = true;
      CHECK(row.mass == report.min_mass);
    }
  }
  CHECK(saw_argmin);

  nlohmann::json j = report.to_json();
  CHECK(j["rows"].size() == 78);
  CHECK(j["all_positive"] == true);
  std::string csv = report.to_csv();
  CHECK(csv.rfind("word,mass,ratio\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 79);
}

TEST_CASE("at the full window the ratio collapses to one offset") {
  GibbsReport report = gibbs_ratio_report(d2b12p, 8, 0, 8);
  CHECK(report.rows.size() == 194);
  for (const GibbsRow& row : report.rows)
    CHECK(row.mass == Rational(1, 256));  // each good word is one base word
  CHECK(report.all_positive);
}

TEST_CASE("two-step masses join two cylinders with the regime gap") {
  TwoStepReport trivial = two_step_gibbs_report(d3b12, 6, 0, Word{}, Word{});
  CHECK(trivial.T == 1);
  CHECK(trivial.mass == Rational(1));

  // With a zero gap, an empty right side collapses to the plain measure.
  MeasureBase base16 = measure_base(d2b16, 8, 0);
  Word u = Word::parse("01");
  TwoStepReport collapse = two_step_gibbs_report(d2b16, 8, 0, u, Word{});
  CHECK(collapse.T == 0);
  CHECK(collapse.mass == empirical_measure(base16, u));

  CHECK_THROWS_AS(
      two_step_gibbs_report(d3b12, 6, 0, Word::parse("021"), Word::parse("0210")),
      Error);  // the joint span exceeds the window
  CHECK_THROWS_AS(
      two_step_gibbs_report(d3b12, 12, 0, Word::parse("0000"), Word::parse("012")),
      Error);  // left word lacks power-free affixes
}

TEST_CASE("every good pair carries positive two-step mass at n = 12") {
  MeasureBase base = measure_base(d3b12, 12, 0);
  std::vector<Word> good3 = enumerate_good(d3b12, 3);
  REQUIRE(good3.size() == 27);
  // One scan counts all joint (u, v) cylinders at gap 1.
  std::map<std::string, std::uint64_t> joint;
  std::size_t offsets = static_cast<std::size_t>(12 - 7 + 1);
  for (const Word& w : base.words) {
    std::string s = w.str();
    for (std::size_t k = 0; k < offsets; ++k)
      ++joint[s.substr(k, 3) + "." + s.substr(k + 4, 3)];
  }
  BigInt denom = BigInt(offsets) * BigInt(base.words.size());
  for (const Word& u : good3)
    for (const Word& v : good3) {
      auto it = joint.find(u.str() + "." + v.str());
      CAPTURE(u.str());
      CAPTURE(v.str());
      REQUIRE(it != joint.end());
      CHECK(it->second > 0);
    }
  // The per-pair report agrees with the bulk scan on a sample.
  for (std::size_t i : {0u, 13u, 26u}) {
    TwoStepReport rep = two_step_gibbs_report(d3b12, 12, 0, good3[i], good3[26 - i]);
    CHECK(rep.mass ==
          Rational(BigInt(joint[good3[i].str() + "." + good3[26 - i].str()]), denom));
  }
}

TEST_CASE("empirical entropy is exact-mass based and bounded by support") {
  EmpiricalEntropyReport r1 = empirical_entropy(d2b12p, 8, 0, 1);
  CHECK(r1.uniform);
  CHECK(r1.support == 2);
  CHECK(r1.language_count == 2);
  CHECK(r1.min_mass == Rational(1, 2));
  CHECK(r1.entropy == doctest::Approx(std::log(2.0)));
  CHECK(r1.per_symbol <= std::log(2.0) + 1e-12);

  EmpiricalEntropyReport r8 = empirical_entropy(d2b12p, 8, 0, 8);
  CHECK(r8.uniform);
  CHECK(r8.support == 256);
  CHECK(r8.entropy == doctest::Approx(8 * std::log(2.0)));
  CHECK(r8.per_symbol == doctest::Approx(std::log(2.0)));

  EmpiricalEntropyReport r4 = empirical_entropy(d3b12, 12, 0, 4, 2);
  CHECK(r4.support == 81);
  CHECK(r4.language_count == 81);
  CHECK(r4.min_mass > 0);
  CHECK(r4.entropy > 0);
  CHECK(r4.per_symbol <= std::log(3.0) + 1e-12);
  nlohmann::json j = r4.to_json();
  CHECK(j["support"] == "81");
  CHECK(j["j"] == 4);

  CHECK_THROWS_AS(empirical_entropy(d3b12, 6, 0, 7), Error);
}

TEST_CASE("the shift discrepancy vanishes on saturated windows and stays small") {
  MeasureBase b6 = measure_base(d2b12p, 6, 0);
  CHECK(shift_discrepancy(b6, 2) == Rational(0));  // every word survives here

  MeasureBase b14 = measure_base(d2b12p, 14, 0);
  Rational d14 = shift_discrepancy(b14, 2);
  CHECK(d14 >= 0);
  CHECK(d14 < Rational(1, 100));

  CHECK_THROWS_AS(shift_discrepancy(b6, 6), Error);
}
