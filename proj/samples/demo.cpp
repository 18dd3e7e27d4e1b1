// Generates a keystream, models it with two 90/150 automata, then recovers
// the seeds from a short prefix.

#include <iostream>

#include "shrinkca/shrinkca.hpp"

int main() {
  using namespace shrinkca;

  GeneratorSpec spec;
  spec.l1 = 4;
  spec.l2 = 5;
  spec.c1 = Gf2Poly::parse("0,3,4");
  spec.c2 = Gf2Poly::parse("0,1,3,4,5");
  spec.is1 = std::vector<std::uint8_t>{1, 0, 0, 1};
  spec.is2 = std::vector<std::uint8_t>{1, 0, 1, 0, 1};

  const BitSeq z = shrink_generate(spec, 24);
  std::cout << "keystream prefix  " << z.to_string() << "\n";

  const auto lin = linearize_generator(spec.l1, spec.c2, 0);
  std::cout << "P(x)              " << lin.p.to_pretty() << "\n";
  std::cout << "automaton 1       " << lin.first().to_hex() << "\n";
  std::cout << "automaton 2       " << lin.second().to_hex() << "\n";

  try {
    const auto res = full_attack(z, spec.public_part());
    std::cout << "recovered         " << format_candidate(res.seeds) << "\n";
    std::cout << "phase-1 bits      " << res.phase1.reconstructed.size() << "\n";
    std::cout << "IS_1 leaves tried " << res.phase2.nodes_expanded << "\n";
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
