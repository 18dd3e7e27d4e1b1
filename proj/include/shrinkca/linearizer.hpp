#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "shrinkca/error.hpp"
#include "shrinkca/field_table.hpp"
#include "shrinkca/gf2_poly.hpp"
#include "shrinkca/rule_vector.hpp"

namespace shrinkca {

/// E = 2^L1 - 1 for the shrinking generator (w = 0); for w decimation taps
/// D = (1 + 2^w) 2^(L1-1) - 1, the number of SR_2 clocks per SR_1 period.
inline std::uint64_t coset_exponent(unsigned l1, unsigned w) {
  if (l1 < 1 || l1 > 40 || w > 20) throw Error(ErrorCode::InvalidArgument, "coset_exponent: lengths out of range");
  const std::uint64_t half = std::uint64_t{1} << (l1 - 1);
  if (w == 0) return 2 * half - 1;
  return ((std::uint64_t{1} << w) + 1) * half - 1;
}

inline constexpr std::size_t kMaxSynthesisDegree = 24;

namespace detail {

inline int mask_degree(std::uint64_t a) noexcept { return 63 - std::countl_zero(a); }

/// Division of masks; quotient and remainder.
inline std::pair<std::uint64_t, std::uint64_t> mask_divmod(std::uint64_t a, std::uint64_t b) {
  const int db = mask_degree(b);
  std::uint64_t q = 0;
  while (a && mask_degree(a) >= db) {
    const int s = mask_degree(a) - db;
    q |= std::uint64_t{1} << s;
    a ^= b << s;
  }
  return {q, a};
}

/// Runs Euclid on (p, a) and reads off R_L..R_1 when every quotient has the
/// form x + R and each remainder drops the degree by exactly one.
inline bool rules_from_euclid(std::uint64_t p, std::uint64_t a, std::size_t deg, std::vector<std::uint8_t>& out) {
  out.assign(deg, 0);
  std::uint64_t hi = p, lo = a;
  for (std::size_t i = deg; i-- > 0;) {
    auto [q, r] = mask_divmod(hi, lo);
    if (q >> 2) return false;  // quotient degree must be exactly 1
    if (!(q & 2)) return false;
    out[i] = static_cast<std::uint8_t>(q & 1);
    if (i == 0) return r == 0;
    if (r == 0 || mask_degree(r) != static_cast<int>(i) - 1) return false;
    hi = lo;
    lo = r;
  }
  return false;
}

}  // namespace detail

/// Every 90/150 rule vector with characteristic polynomial p, sorted
/// lexicographically (cell 1 first).
inline std::vector<RuleVector> synthesize_all(const Gf2Poly& p) {
  const auto d = p.degree();
  if (!d || *d == 0) throw Error(ErrorCode::InvalidArgument, "synthesis needs degree >= 1");
  if (*d > kMaxSynthesisDegree) throw Error(ErrorCode::InvalidArgument, "synthesis degree exceeds 24");
  const std::size_t deg = *d;
  const std::uint64_t pm = p.to_mask();
  std::vector<RuleVector> found;
  std::vector<std::uint8_t> rules;
  // P_{L-1} is monic of degree L-1; its lower coefficients range freely.
  const std::uint64_t lead = std::uint64_t{1} << (deg - 1);
  for (std::uint64_t low = 0; low < lead; ++low) {
    if (detail::rules_from_euclid(pm, lead | low, deg, rules)) found.emplace_back(rules);
  }
  std::sort(found.begin(), found.end());
  return found;
}

/// Pair of reversal automata for p: the lexicographically smallest vector
/// and its mirror image. Each is verified against p.
inline std::pair<RuleVector, RuleVector> synthesize_ca_pair(const Gf2Poly& p) {
  auto all = synthesize_all(p);
  if (all.empty()) throw Error(ErrorCode::SynthesisFailed, "no 90/150 automaton has characteristic polynomial " + p.to_string());
  RuleVector first = all.front();
  RuleVector second = first.mirrored();
  if (char_poly_of_rules(first) != p || char_poly_of_rules(second) != p)
    throw Error(ErrorCode::SynthesisFailed, "synthesized automaton failed verification");
  return {std::move(first), std::move(second)};
}

/// Complements cell L, then appends the mirror image: S' = S * reverse(S).
inline RuleVector concatenate_once(const RuleVector& rv) {
  if (rv.empty()) throw Error(ErrorCode::InvalidArgument, "empty rule vector");
  auto bits = rv.bits();
  bits.back() ^= 1u;
  std::vector<std::uint8_t> out(bits);
  out.insert(out.end(), bits.rbegin(), bits.rend());
  return RuleVector(std::move(out));
}

struct Linearization {
  std::uint64_t exponent = 0;  // coset exponent reduced mod 2^L2 - 1
  Gf2Poly p;                   // minimal polynomial of lambda^exponent
  /// chains[k][s] is the k-th automaton after s concatenation steps.
  std::array<std::vector<RuleVector>, 2> chains;

  const RuleVector& first() const { return chains[0].back(); }
  const RuleVector& second() const { return chains[1].back(); }
};

/// Builds the two automata of length L2 2^(L1-1) whose characteristic
/// polynomial is P(x)^(2^(L1-1)). w = 0 models the shrinking generator.
inline Linearization linearize_generator(unsigned l1, const Gf2Poly& c2, unsigned w) {
  if (l1 < 2) throw Error(ErrorCode::InvalidArgument, "linearization needs l1 >= 2");
  FieldTable ft(c2);
  Linearization out;
  out.exponent = coset_exponent(l1, w) % ft.order();
  const auto coset = cyclotomic_coset(out.exponent, ft.order());
  if (out.exponent == 0 || coset.size() < ft.degree())
    throw Error(ErrorCode::DegenerateCoset, "coset of exponent " + std::to_string(out.exponent) + " has size " +
                                                std::to_string(out.exponent == 0 ? 1 : coset.size()) + " < " +
                                                std::to_string(ft.degree()));
  out.p = min_poly_of_power(ft, out.exponent);
  auto [a, b] = synthesize_ca_pair(out.p);
  out.chains[0].push_back(std::move(a));
  out.chains[1].push_back(std::move(b));
  for (auto& chain : out.chains)
    for (unsigned s = 1; s < l1; ++s) chain.push_back(concatenate_once(chain.back()));
  return out;
}

}  // namespace shrinkca
