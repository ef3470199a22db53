// Glues a chain of equal-length good words into one long admissible word and
// prints the certificate trail.
#include <iostream>

#include "powerfree/gluing.hpp"
#include "powerfree/structure.hpp"

using namespace powerfree;

int main(int argc, char** argv) {
  LanguageSpec spec(3, make_rational(12), Mode::free);
  int n = argc > 1 ? std::atoi(argv[1]) : 5;
  int k = argc > 2 ? std::atoi(argv[2]) : 6;

  std::vector<Word> pool = enumerate_good(spec, n);
  if (pool.empty()) {
    std::cerr << "no good words of length " << n << '\n';
    return 1;
  }
  std::vector<Word> links;
  for (int i = 0; i < k; ++i) links.push_back(pool[(i * 37) % pool.size()]);

  GlueCertificate cert = glue_chain(links, spec);
  std::cout << "links:";
  for (const Word& w : cert.inputs) std::cout << ' ' << w.str();
  std::cout << "\nconnectors:";
  for (const Word& c : cert.connectors) std::cout << ' ' << c.str();
  std::cout << "\nresult: " << cert.result.str() << "\nclaim: "
            << to_cstring(cert.claim) << " via " << to_cstring(cert.lemma)
            << "\nlength: " << cert.result.size() << '\n';

  std::cout << (is_admissible(cert.result, spec) ? "verified admissible"
                                                 : "VERIFICATION FAILED")
            << '\n';
  return 0;
}
