// Computes a two-sided entropy enclosure for the ternary 12-free language and
// checks the growth gap that separates block words from the full language.
#include <iostream>

#include "powerfree/entropy.hpp"

using namespace powerfree;

int main() {
  LanguageSpec spec(3, make_rational(12), Mode::free);

  CountTable table = count_table(spec, 10, 0, {});
  std::map<int, BigInt> good_counts;
  good_counts[4] = BigInt(enumerate_good(spec, 4).size());

  Enclosure enc = make_enclosure(spec, table, good_counts);
  std::cout << "h in [(1/" << enc.h_lo.a << ") log " << enc.h_lo.b.str()
            << ", (1/" << enc.h_hi.a << ") log " << enc.h_hi.b.str() << "]\n";
  std::cout << "     ~ [" << enc.h_lo.value() << ", " << enc.h_hi.value()
            << "]\n";

  GapReport gap = entropy_gap_verdict(spec);
  std::cout << "block words grow strictly slower: "
            << (gap.holds ? "yes" : "no") << " (" << gap.lhs_witness.str()
            << " < " << gap.rhs_witness.str() << ")\n";

  Rational q = q_constant_bound(spec);
  std::cout << "mixing constant Q <= " << to_string(q) << " ~ " << to_double(q)
            << '\n';
  return 0;
}
