#pragma once

// Brute-force reference implementations used to cross-check the library.
// None of them share code paths with the algorithms they check.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "shrinkca/gf2_poly.hpp"
#include "shrinkca/rule_vector.hpp"

namespace oracle {

using shrinkca::Gf2Poly;
using Bits = std::vector<std::uint8_t>;

/// Determinant of a matrix of GF(2)[x] entries by Laplace expansion along
/// rows, memoized on the set of used columns. Intended for n <= 16.
inline Gf2Poly det(const std::vector<std::vector<Gf2Poly>>& m) {
  const std::size_t n = m.size();
  std::map<std::uint32_t, Gf2Poly> memo;
  auto rec = [&](auto&& self, std::uint32_t used) -> Gf2Poly {
    const auto row = static_cast<std::size_t>(std::popcount(used));
    if (row == n) return Gf2Poly::one();
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    Gf2Poly acc;
    for (std::size_t c = 0; c < n; ++c) {
      if ((used >> c) & 1u) continue;
      if (m[row][c].is_zero()) continue;
      acc += m[row][c] * self(self, used | (1u << c));  // signs vanish mod 2
    }
    memo.emplace(used, acc);
    return acc;
  };
  return rec(rec, 0);
}

/// det(xI + M) for the tri-diagonal 90/150 transition matrix.
inline Gf2Poly transition_char_poly(const Bits& rules) {
  const std::size_t n = rules.size();
  std::vector<std::vector<Gf2Poly>> m(n, std::vector<Gf2Poly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = Gf2Poly::monomial(1);
    if (rules[i]) m[i][i] += Gf2Poly::one();
    if (i > 0) m[i][i - 1] = Gf2Poly::one();
    if (i + 1 < n) m[i][i + 1] = Gf2Poly::one();
  }
  return det(m);
}

using BitMatrix = std::vector<Bits>;

inline BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
  const std::size_t n = a.size();
  BitMatrix c(n, Bits(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j) c[i][j] ^= b[k][j];
  return c;
}

inline BitMatrix transition_matrix(const Bits& rules) {
  const std::size_t n = rules.size();
  BitMatrix m(n, Bits(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = rules[i];
    if (i > 0) m[i][i - 1] = 1;
    if (i + 1 < n) m[i][i + 1] = 1;
  }
  return m;
}

/// State after t steps computed as M^t x by square-and-multiply.
inline Bits ca_state_at(const Bits& rules, const Bits& seed, std::uint64_t t) {
  const std::size_t n = rules.size();
  BitMatrix result(n, Bits(n, 0));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = 1;
  BitMatrix base = transition_matrix(rules);
  for (; t; t >>= 1) {
    if (t & 1u) result = mat_mul(result, base);
    base = mat_mul(base, base);
  }
  Bits out(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] ^= result[i][j] & seed[j];
  return out;
}

/// Primitive iff p(0) = 1 and x has multiplicative order 2^m - 1 mod p.
inline bool is_primitive_by_order(std::uint64_t p) {
  const int m = 63 - std::countl_zero(p);
  if (m < 1 || !(p & 1u)) return false;
  if (m == 1) return p == 0b11;
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  std::uint64_t x = 1;
  for (std::uint64_t k = 1; k <= full; ++k) {
    x <<= 1;
    if ((x >> m) & 1u) x ^= p;
    if (x == 1) return k == full;
  }
  return false;
}

/// Stream from the recurrence a_{t+L} = sum_{k<L} c_k a_{t+k}.
inline Bits recurrence_stream(const Gf2Poly& c, const Bits& seed, std::size_t n) {
  const auto L = static_cast<std::size_t>(c.deg());
  Bits a(seed);
  while (a.size() < n) {
    std::uint8_t v = 0;
    for (std::size_t k = 0; k < L; ++k)
      if (c.coeff(k)) v ^= a[a.size() - L + k];
    a.push_back(v);
  }
  a.resize(n);
  return a;
}

/// Clock-controlled shrinking from precomputed register streams:
/// b'_t = b[sum_{s<t} X_s], kept when a_t = 1. No taps gives X_t = 1.
inline Bits double_decimation(const Gf2Poly& c1, const Bits& is1, const Gf2Poly& c2, const Bits& is2,
                              const std::vector<unsigned>& taps, std::size_t n) {
  const std::size_t steps = 4 * n + 64;
  const Bits a = recurrence_stream(c1, is1, steps + 64);
  const Bits b = recurrence_stream(c2, is2, steps << (taps.size() + 1));
  Bits z;
  std::size_t pos = 0;
  for (std::size_t t = 0; z.size() < n; ++t) {
    std::size_t x = 1;
    for (std::size_t k = 0; k < taps.size(); ++k) x += static_cast<std::size_t>(a[t + taps[k]]) << k;
    if (a[t]) z.push_back(b[pos]);
    pos += x;
  }
  return z;
}

/// All primitive polynomials of degree m, as masks in ascending order.
inline std::vector<Gf2Poly> primitive_polys(int m) {
  std::vector<Gf2Poly> out;
  for (std::uint64_t p = (std::uint64_t{1} << m) | 1u; p < (std::uint64_t{2} << m); p += 2)
    if (is_primitive_by_order(p)) out.push_back(Gf2Poly::from_mask(p));
  return out;
}

}  // namespace oracle
