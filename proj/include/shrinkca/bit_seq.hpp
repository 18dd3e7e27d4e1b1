#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shrinkca/error.hpp"

namespace shrinkca {

/// Ordered bits with an absolute position for the first one. Keystreams,
/// PN-sequences and automaton cell traces all travel as BitSeq.
struct BitSeq {
  std::vector<std::uint8_t> bits;
  std::uint64_t origin = 0;

  BitSeq() = default;
  explicit BitSeq(std::vector<std::uint8_t> b, std::uint64_t org = 0)
      : bits(std::move(b)), origin(org) {}

  static BitSeq parse(std::string_view text, std::uint64_t org = 0) {
    BitSeq s;
    s.origin = org;
    s.bits.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') throw Error(ErrorCode::Parse, "bit string must contain only 0 and 1");
      s.bits.push_back(c == '1');
    }
    return s;
  }

  std::size_t size() const noexcept { return bits.size(); }
  bool empty() const noexcept { return bits.empty(); }

  /// Relative indexing, 0 = the bit at `origin`.
  std::uint8_t operator[](std::size_t i) const noexcept { return bits[i]; }

  /// Absolute indexing.
  std::uint8_t at_position(std::uint64_t pos) const {
    if (pos < origin || pos - origin >= bits.size())
      throw Error(ErrorCode::InvalidArgument, "position outside sequence");
    return bits[pos - origin];
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s += b ? '1' : '0';
    return s;
  }

  std::size_t count_ones() const noexcept {
    std::size_t n = 0;
    for (auto b : bits) n += b;
    return n;
  }

  friend bool operator==(const BitSeq&, const BitSeq&) = default;
};

/// Bits at relative offsets r, r+d, r+2d, ...
inline BitSeq decimate(const BitSeq& s, std::size_t distance, std::size_t offset) {
  if (distance == 0 || offset >= distance)
    throw Error(ErrorCode::InvalidArgument, "decimate needs d >= 1 and 0 <= r < d");
  BitSeq out;
  for (std::size_t i = offset; i < s.size(); i += distance) out.bits.push_back(s[i]);
  return out;
}

/// Smallest period p (1 <= p <= len) such that s[i] = s[i+p] over the whole sequence.
inline std::size_t observed_period(const BitSeq& s) {
  for (std::size_t p = 1; p < s.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < s.size() && ok; ++i) ok = s[i] == s[i + p];
    if (ok) return p;
  }
  return s.size();
}

}  // namespace shrinkca
