// Prints how fast several power-free languages grow, side by side.
#include <iomanip>
#include <iostream>

#include "powerfree/language.hpp"

using namespace powerfree;

int main() {
  const LanguageSpec specs[] = {
      LanguageSpec(2, make_rational(3), Mode::free),
      LanguageSpec(2, make_rational(12), Mode::plus),
      LanguageSpec(3, make_rational(2), Mode::free),
      LanguageSpec(3, make_rational(12), Mode::free),
  };

  std::cout << std::setw(4) << "n";
  for (const auto& spec : specs) std::cout << std::setw(18) << spec.id();
  std::cout << '\n';

  for (int n = 0; n <= 14; ++n) {
    std::cout << std::setw(4) << n;
    for (const auto& spec : specs)
      std::cout << std::setw(18) << count_words(spec, n, 4).str();
    std::cout << '\n';
  }
  return 0;
}
