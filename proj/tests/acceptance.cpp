// Release gate: every final check at full scale, one line per criterion.
#include <iostream>

#include "powerfree/acceptance.hpp"

int main() {
  using namespace powerfree::acceptance;
  std::ios::sync_with_stdio(false);
  auto results = run_all(Scale::full());
  return report(results, std::cout);
}
