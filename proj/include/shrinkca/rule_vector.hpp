#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shrinkca/error.hpp"
#include "shrinkca/gf2_poly.hpp"

namespace shrinkca {

/// Per-cell rules of a null-boundary hybrid 90/150 automaton, cells 1..L left to
/// right. A set flag means rule 150, a clear flag rule 90.
class RuleVector {
 public:
  RuleVector() = default;
  explicit RuleVector(std::vector<std::uint8_t> rules) : rules_(std::move(rules)) {
    for (auto& r : rules_) r = r ? 1 : 0;
  }

  /// Binary text, leftmost character = cell 1.
  static RuleVector parse(std::string_view text) {
    std::vector<std::uint8_t> r;
    r.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') throw Error(ErrorCode::Parse, "rule vector must be a 0/1 string");
      r.push_back(c == '1');
    }
    if (r.empty()) throw Error(ErrorCode::Parse, "empty rule vector");
    return RuleVector(std::move(r));
  }

  /// Hex alias: bits packed MSB-first in reading order, `length` cells.
  static RuleVector parse_hex(std::string_view hex, std::size_t length) {
    if (hex.size() * 4 < length || hex.size() != (length + 3) / 4)
      throw Error(ErrorCode::Parse, "hex rule vector does not match length");
    std::vector<std::uint8_t> r;
    for (char c : hex) {
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw Error(ErrorCode::Parse, "bad hex digit in rule vector");
      for (int b = 3; b >= 0; --b) r.push_back((v >> b) & 1);
    }
    for (std::size_t i = length; i < r.size(); ++i)
      if (r[i]) throw Error(ErrorCode::Parse, "nonzero padding in hex rule vector");
    r.resize(length);
    return RuleVector(std::move(r));
  }

  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }

  /// 0-based access; cell i (1-based) is at index i-1.
  bool operator[](std::size_t idx) const noexcept { return rules_[idx]; }
  const std::vector<std::uint8_t>& bits() const noexcept { return rules_; }

  std::string to_string() const {
    std::string s;
    s.reserve(rules_.size());
    for (auto r : rules_) s += r ? '1' : '0';
    return s;
  }

  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    std::string s;
    for (std::size_t i = 0; i < rules_.size(); i += 4) {
      int v = 0;
      for (std::size_t b = 0; b < 4; ++b) {
        v <<= 1;
        if (i + b < rules_.size()) v |= rules_[i + b];
      }
      s += kDigits[v];
    }
    return s;
  }

  RuleVector mirrored() const {
    return RuleVector(std::vector<std::uint8_t>(rules_.rbegin(), rules_.rend()));
  }

  friend bool operator==(const RuleVector&, const RuleVector&) = default;
  friend auto operator<=>(const RuleVector&, const RuleVector&) = default;

 private:
  std::vector<std::uint8_t> rules_;
};

/// Characteristic polynomials P_0..P_L of the sub-automata R_1..R_i, from
/// P_i = (x + R_i) P_{i-1} + P_{i-2}, P_{-1} = 0, P_0 = 1.
inline std::vector<Gf2Poly> prefix_char_polys(const RuleVector& rv) {
  std::vector<Gf2Poly> out;
  out.reserve(rv.size() + 1);
  Gf2Poly prev;  // P_{-1}
  Gf2Poly cur = Gf2Poly::one();
  out.push_back(cur);
  for (std::size_t i = 0; i < rv.size(); ++i) {
    Gf2Poly next = cur.shifted(1);
    if (rv[i]) next += cur;
    next += prev;
    prev = std::move(cur);
    cur = std::move(next);
    out.push_back(cur);
  }
  return out;
}

inline Gf2Poly char_poly_of_rules(const RuleVector& rv) {
  if (rv.empty()) throw Error(ErrorCode::InvalidArgument, "empty rule vector");
  return prefix_char_polys(rv).back();
}

}  // namespace shrinkca
