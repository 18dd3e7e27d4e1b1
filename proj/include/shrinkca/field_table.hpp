#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shrinkca/error.hpp"
#include "shrinkca/gf2_poly.hpp"

namespace shrinkca {

/// Discrete logarithm of a field element with respect to the generator alpha.
/// std::nullopt stands for the additive identity; the integer 0 means alpha^0 = 1.
using FieldLog = std::optional<std::uint32_t>;

inline constexpr std::size_t kMaxFieldDegree = 24;

/// GF(2^m) built from a primitive modulus, with exponent/element tables and
/// Zech logarithms (1 + alpha^k = alpha^zech(k)). Elements are m-bit masks in the
/// polynomial basis {1, alpha, ..., alpha^(m-1)}. Immutable after construction.
class FieldTable {
 public:
  explicit FieldTable(const Gf2Poly& modulus) : modulus_(modulus) {
    auto d = modulus.degree();
    if (!d || *d == 0) throw Error(ErrorCode::NonPrimitiveModulus, "modulus must have degree >= 1");
    if (*d > kMaxFieldDegree)
      throw Error(ErrorCode::InvalidArgument,
                  "field degree " + std::to_string(*d) + " exceeds table limit 24");
    if (!poly_is_primitive(modulus))
      throw Error(ErrorCode::NonPrimitiveModulus, modulus.to_pretty() + " is not primitive");

    m_ = static_cast<unsigned>(*d);
    order_ = (std::uint32_t{1} << m_) - 1;
    const std::uint32_t reduce_mask = static_cast<std::uint32_t>(modulus.to_mask() & order_);

    antilog_.resize(order_);
    log_.assign(std::size_t{1} << m_, kNone);
    std::uint32_t x = 1;
    for (std::uint32_t k = 0; k < order_; ++k) {
      antilog_[k] = x;
      log_[x] = k;
      const bool carry = (x >> (m_ - 1)) & 1u;
      x = (x << 1) & order_;
      if (carry) x ^= reduce_mask;
    }

    zech_.assign(order_, kNone);
    for (std::uint32_t k = 0; k < order_; ++k) zech_[k] = log_[antilog_[k] ^ 1u];
  }

  const Gf2Poly& modulus() const noexcept { return modulus_; }
  unsigned degree() const noexcept { return m_; }
  /// Multiplicative group order 2^m - 1.
  std::uint32_t order() const noexcept { return order_; }

  std::uint32_t antilog(std::uint64_t k) const noexcept { return antilog_[k % order_]; }

  FieldLog log(std::uint32_t element) const {
    if (element >= log_.size()) throw Error(ErrorCode::InvalidArgument, "element out of range");
    return unwrap(log_[element]);
  }

  /// Zech logarithm of k: log(1 + alpha^k), nullopt exactly when k = 0 (mod order).
  FieldLog zech(std::uint64_t k) const noexcept { return unwrap(zech_[k % order_]); }

  std::uint32_t reduce_exponent(std::int64_t e) const noexcept {
    auto r = e % static_cast<std::int64_t>(order_);
    return static_cast<std::uint32_t>(r < 0 ? r + order_ : r);
  }

  FieldLog mul(FieldLog a, FieldLog b) const noexcept {
    if (!a || !b) return std::nullopt;
    return static_cast<std::uint32_t>((std::uint64_t{*a} + *b) % order_);
  }

  /// Addition carried out purely in exponent space through the Zech table.
  FieldLog add(FieldLog a, FieldLog b) const noexcept {
    if (!a) return b;
    if (!b) return a;
    const std::uint32_t diff = (*b + order_ - *a) % order_;
    auto z = zech(diff);
    if (!z) return std::nullopt;
    return static_cast<std::uint32_t>((std::uint64_t{*a} + *z) % order_);
  }

  std::uint32_t mul_elements(std::uint32_t a, std::uint32_t b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return antilog_[(std::uint64_t{log_[a]} + log_[b]) % order_];
  }

 private:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;
  static FieldLog unwrap(std::uint32_t v) noexcept {
    return v == kNone ? FieldLog{} : FieldLog{v};
  }

  Gf2Poly modulus_;
  unsigned m_ = 0;
  std::uint32_t order_ = 0;
  std::vector<std::uint32_t> antilog_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
};

inline FieldTable field_build(const Gf2Poly& modulus) { return FieldTable(modulus); }

/// log of sum alpha^e over the given exponents, folded with Zech additions.
inline FieldLog sum_of_powers(const FieldTable& ft, std::span<const std::int64_t> exponents) {
  FieldLog acc;
  for (auto e : exponents) acc = ft.add(acc, FieldLog{ft.reduce_exponent(e)});
  return acc;
}

inline FieldLog sum_of_powers(const FieldTable& ft, std::initializer_list<std::int64_t> exponents) {
  return sum_of_powers(ft, std::span<const std::int64_t>(exponents.begin(), exponents.size()));
}

/// Exponents {e, 2e, 4e, ...} mod 2^m - 1 in generation order.
inline std::vector<std::uint32_t> cyclotomic_coset(std::uint64_t e, std::uint32_t order) {
  std::vector<std::uint32_t> coset;
  const auto start = static_cast<std::uint32_t>(e % order);
  auto k = start;
  do {
    coset.push_back(k);
    k = static_cast<std::uint32_t>((std::uint64_t{k} * 2) % order);
  } while (k != start);
  return coset;
}

/// Minimal polynomial over GF(2) of alpha^e, where alpha is the table's generator.
/// Built as the product of (x + alpha^(e 2^k)) over the cyclotomic coset.
inline Gf2Poly min_poly_of_power(const FieldTable& ft, std::uint64_t e) {
  // coefficients[i] is an element of GF(2^m), index = degree
  std::vector<std::uint32_t> coeffs{1};
  for (auto k : cyclotomic_coset(e, ft.order())) {
    const auto root = ft.antilog(k);
    std::vector<std::uint32_t> next(coeffs.size() + 1, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] ^= coeffs[i];
      next[i] ^= ft.mul_elements(coeffs[i], root);
    }
    coeffs = std::move(next);
  }
  Gf2Poly p;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] > 1)
      throw Error(ErrorCode::InvalidArgument, "minimal polynomial coefficient outside GF(2)");
    if (coeffs[i]) p.flip(i);
  }
  return p;
}

/// Minimal polynomial of lambda^e for lambda a root of the primitive c2.
inline Gf2Poly min_poly_of_power(const Gf2Poly& c2, std::uint64_t e) {
  return min_poly_of_power(FieldTable(c2), e);
}

/// Inverse of a modulo n, or nullopt when gcd(a, n) != 1.
inline std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 0;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(n), new_r = static_cast<std::int64_t>(a % n);
  while (new_r != 0) {
    auto q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) return std::nullopt;
  if (t < 0) t += static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(t);
}

}  // namespace shrinkca
