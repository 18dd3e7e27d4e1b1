#pragma once

#include <cstddef>
#include <vector>

#include "shrinkca/bit_seq.hpp"
#include "shrinkca/gf2_poly.hpp"

namespace shrinkca {

struct LinearComplexity {
  std::size_t complexity = 0;
  /// Characteristic polynomial in the recurrence convention sum c_k s[t+k] = 0,
  /// i.e. x^L * Lambda(1/x) for the connection polynomial Lambda.
  Gf2Poly charpoly;
};

/// Berlekamp-Massey over GF(2). Returns the shortest recurrence generating s.
inline LinearComplexity berlekamp_massey_full(const BitSeq& s) {
  std::vector<std::uint8_t> c{1}, b{1};
  std::size_t L = 0;
  std::size_t m = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    std::uint8_t disc = s[n];
    for (std::size_t i = 1; i <= L && i < c.size(); ++i) disc ^= c[i] & s[n - i];
    if (!disc) {
      ++m;
      continue;
    }
    auto t = c;
    if (c.size() < b.size() + m) c.resize(b.size() + m, 0);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + m] ^= b[i];
    if (2 * L <= n) {
      L = n + 1 - L;
      b = std::move(t);
      m = 1;
    } else {
      ++m;
    }
  }
  LinearComplexity out;
  out.complexity = L;
  for (std::size_t i = 0; i <= L && i < c.size(); ++i)
    if (c[i]) out.charpoly.flip(L - i);
  if (L == 0) out.charpoly = Gf2Poly::one();
  return out;
}

inline Gf2Poly berlekamp_massey(const BitSeq& s) { return berlekamp_massey_full(s).charpoly; }

inline std::size_t linear_complexity(const BitSeq& s) { return berlekamp_massey_full(s).complexity; }

}  // namespace shrinkca
