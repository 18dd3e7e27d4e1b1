#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shrinkca/error.hpp"

namespace shrinkca {

/// Polynomial over GF(2), one bit per coefficient in ascending degree.
///
/// Storage is kept canonical (no trailing zero words), so equality is a plain
/// word comparison. The zero polynomial has no degree.
class Gf2Poly {
 public:
  Gf2Poly() = default;

  Gf2Poly(std::initializer_list<std::size_t> exponents) {
    for (auto e : exponents) flip(e);
  }

  static Gf2Poly from_exponents(std::span<const std::size_t> exponents) {
    Gf2Poly p;
    for (auto e : exponents) p.flip(e);
    return p;
  }

  /// Bit k of `mask` is the coefficient of x^k.
  static Gf2Poly from_mask(std::uint64_t mask) {
    Gf2Poly p;
    if (mask) p.words_.push_back(mask);
    return p;
  }

  static Gf2Poly monomial(std::size_t k) {
    Gf2Poly p;
    p.flip(k);
    return p;
  }

  static Gf2Poly one() { return from_mask(1); }

  /// Parses the comma-separated exponent list format, e.g. "0,2,5" for 1+x^2+x^5.
  /// Whitespace around entries is ignored; a repeated exponent is rejected.
  static Gf2Poly parse(std::string_view text) {
    Gf2Poly p;
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    if (text.empty()) return p;
    while (true) {
      auto comma = text.find(',');
      auto item = trim(text.substr(0, comma));
      std::size_t e = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), e);
      if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
        throw Error(ErrorCode::Parse, "bad polynomial exponent '" + std::string(item) + "'");
      if (e > (1u << 20)) throw Error(ErrorCode::Parse, "polynomial exponent too large");
      if (p.coeff(e)) throw Error(ErrorCode::Parse, "repeated exponent " + std::to_string(e));
      p.flip(e);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return p;
  }

  bool is_zero() const noexcept { return words_.empty(); }

  std::optional<std::size_t> degree() const noexcept {
    if (words_.empty()) return std::nullopt;
    return (words_.size() - 1) * 64 + (63 - std::countl_zero(words_.back()));
  }

  /// Degree with the zero polynomial mapped to -1; handy in loops.
  long deg() const noexcept {
    auto d = degree();
    return d ? static_cast<long>(*d) : -1;
  }

  bool coeff(std::size_t k) const noexcept {
    auto w = k / 64;
    return w < words_.size() && ((words_[w] >> (k % 64)) & 1u);
  }

  void flip(std::size_t k) {
    auto w = k / 64;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] ^= std::uint64_t{1} << (k % 64);
    trim();
  }

  void set(std::size_t k, bool v) {
    if (coeff(k) != v) flip(k);
  }

  std::size_t weight() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  std::vector<std::size_t> exponents() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  /// Low 64 coefficients as a mask. Only meaningful for degree < 64.
  std::uint64_t to_mask() const noexcept { return words_.empty() ? 0 : words_[0]; }

  std::string to_string() const {
    std::string s;
    for (auto e : exponents()) {
      if (!s.empty()) s += ',';
      s += std::to_string(e);
    }
    return s;
  }

  /// Human-readable form, e.g. "1+x^2+x^5".
  std::string to_pretty() const {
    if (is_zero()) return "0";
    std::string s;
    for (auto e : exponents()) {
      if (!s.empty()) s += '+';
      if (e == 0) s += '1';
      else if (e == 1) s += 'x';
      else s += "x^" + std::to_string(e);
    }
    return s;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  Gf2Poly& operator+=(const Gf2Poly& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
    trim();
    return *this;
  }

  friend Gf2Poly operator+(Gf2Poly a, const Gf2Poly& b) { return a += b; }

  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
    Gf2Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    const Gf2Poly& sparse = a.weight() <= b.weight() ? a : b;
    const Gf2Poly& dense = &sparse == &a ? b : a;
    r.words_.assign(a.words_.size() + b.words_.size() + 1, 0);
    for (auto e : sparse.exponents()) {
      auto ws = e / 64;
      auto bs = e % 64;
      for (std::size_t i = 0; i < dense.words_.size(); ++i) {
        auto w = dense.words_[i];
        r.words_[i + ws] ^= w << bs;
        if (bs) r.words_[i + ws + 1] ^= w >> (64 - bs);
      }
    }
    r.trim();
    return r;
  }

  Gf2Poly& operator*=(const Gf2Poly& o) { return *this = *this * o; }

  /// Multiplication by x^k.
  Gf2Poly shifted(std::size_t k) const {
    Gf2Poly r;
    if (is_zero()) return r;
    auto ws = k / 64;
    auto bs = k % 64;
    r.words_.assign(words_.size() + ws + 1, 0);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      r.words_[i + ws] ^= words_[i] << bs;
      if (bs) r.words_[i + ws + 1] ^= words_[i] >> (64 - bs);
    }
    r.trim();
    return r;
  }

  /// Quotient and remainder. Throws on division by zero.
  friend std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& a, const Gf2Poly& b) {
    if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
    Gf2Poly q;
    Gf2Poly r = a;
    const long db = b.deg();
    while (r.deg() >= db) {
      auto shift = static_cast<std::size_t>(r.deg() - db);
      q.flip(shift);
      r += b.shifted(shift);
    }
    return {std::move(q), std::move(r)};
  }

  friend Gf2Poly operator%(const Gf2Poly& a, const Gf2Poly& b) { return divmod(a, b).second; }
  friend Gf2Poly operator/(const Gf2Poly& a, const Gf2Poly& b) { return divmod(a, b).first; }

  friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;

  /// Orders by degree first, then by coefficients from the top down.
  friend std::strong_ordering operator<=>(const Gf2Poly& a, const Gf2Poly& b) {
    if (auto c = a.deg() <=> b.deg(); c != 0) return c;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  /// Evaluates the polynomial as a linear recurrence on `s` at offset t:
  /// sum over k of coeff_k * s[t+k].
  template <class Bits>
  bool apply_recurrence(const Bits& s, std::size_t t) const {
    bool acc = false;
    for (auto e : exponents()) acc ^= static_cast<bool>(s[t + e]);
    return acc;
  }

 private:
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

inline Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b) { return a * b; }

inline Gf2Poly poly_pow(Gf2Poly base, std::uint64_t n) {
  Gf2Poly r = Gf2Poly::one();
  while (n) {
    if (n & 1u) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

inline Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Reverses coefficient order: x^deg * p(1/x).
inline Gf2Poly poly_reciprocal(const Gf2Poly& p) {
  Gf2Poly r;
  auto d = p.degree();
  if (!d) return r;
  for (auto e : p.exponents()) r.flip(*d - e);
  return r;
}

namespace detail {

/// Arithmetic modulo a polynomial of degree <= 32 on 64-bit masks.
class SmallModRing {
 public:
  explicit SmallModRing(std::uint64_t modulus)
      : mod_(modulus), deg_(63 - std::countl_zero(modulus)) {}

  int degree() const noexcept { return deg_; }

  std::uint64_t reduce(std::uint64_t a) const noexcept {
    for (int d = 63 - std::countl_zero(a | 1); a && d >= deg_; d = 63 - std::countl_zero(a | 1)) {
      a ^= mod_ << (d - deg_);
    }
    return a;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    // Operands are < 2^32 so the carry-less product fits in 64 bits.
    std::uint64_t r = 0;
    while (b) {
      if (b & 1u) r ^= a;
      a <<= 1;
      b >>= 1;
    }
    return reduce(r);
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t n) const noexcept {
    std::uint64_t r = reduce(1);
    a = reduce(a);
    while (n) {
      if (n & 1u) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  }

 private:
  std::uint64_t mod_;
  int deg_;
};

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

inline constexpr std::size_t kMaxPrimitivityDegree = 32;

/// Irreducibility over GF(2) (Ben-Or): gcd(x^(2^i) - x, p) = 1 for i <= deg/2.
inline bool poly_is_irreducible(const Gf2Poly& p) {
  auto d = p.degree();
  if (!d || *d == 0) return false;
  if (*d == 1) return true;
  if (*d > kMaxPrimitivityDegree)
    throw Error(ErrorCode::InvalidArgument, "irreducibility test limited to degree <= 32");
  if (!p.coeff(0)) return false;
  detail::SmallModRing ring(p.to_mask());
  std::uint64_t xpow = 2;  // x^(2^i) mod p
  for (std::size_t i = 1; i <= *d / 2; ++i) {
    xpow = ring.mul(xpow, xpow);
    auto g = poly_gcd(p, Gf2Poly::from_mask(xpow ^ 2u));
    if (g.deg() != 0) return false;
  }
  return true;
}

/// True iff p is irreducible and x has multiplicative order 2^deg - 1 modulo p.
inline bool poly_is_primitive(const Gf2Poly& p) {
  auto d = p.degree();
  if (!d || *d == 0) return false;
  if (*d > kMaxPrimitivityDegree)
    throw Error(ErrorCode::InvalidArgument, "primitivity test limited to degree <= 32");
  if (!poly_is_irreducible(p)) return false;
  if (*d == 1) return p.coeff(0);  // x+1 generates GF(2)^*; x does not
  detail::SmallModRing ring(p.to_mask());
  const std::uint64_t order = (std::uint64_t{1} << *d) - 1;
  for (auto q : detail::prime_factors(order)) {
    if (ring.pow(2, order / q) == 1) return false;
  }
  return true;
}

}  // namespace shrinkca
