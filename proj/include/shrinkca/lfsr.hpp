#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shrinkca/bit_seq.hpp"
#include "shrinkca/error.hpp"
#include "shrinkca/gf2_poly.hpp"

namespace shrinkca {

/// Fibonacci LFSR of length L <= 63 with characteristic polynomial
/// C(x) = c_0 + c_1 x + ... + x^L.
///
/// Cells A_0..A_{L-1} hold a_t..a_{t+L-1}; the output is A_0 and the bit
/// shifted in at A_{L-1} is sum_{k<L} c_k A_k, i.e. the stream obeys
/// sum_k c_k a_{t+k} = 0.
class Lfsr {
 public:
  Lfsr(const Gf2Poly& charpoly, std::span<const std::uint8_t> seed) : charpoly_(charpoly) {
    auto d = charpoly.degree();
    if (!d || *d == 0 || *d > 63)
      throw Error(ErrorCode::InvalidArgument, "LFSR length must be in [1, 63]");
    length_ = static_cast<unsigned>(*d);
    if (seed.size() != length_)
      throw Error(ErrorCode::InvalidArgument, "seed length " + std::to_string(seed.size()) +
                                                  " does not match LFSR length " +
                                                  std::to_string(length_));
    for (unsigned k = 0; k < length_; ++k)
      if (seed[k]) state_ |= std::uint64_t{1} << k;
    if (state_ == 0) throw Error(ErrorCode::ZeroSeed, "LFSR seed is all zero");
    taps_ = charpoly.to_mask() & ((std::uint64_t{1} << length_) - 1);
  }

  unsigned length() const noexcept { return length_; }
  const Gf2Poly& charpoly() const noexcept { return charpoly_; }

  bool output() const noexcept { return state_ & 1u; }
  /// Current content of cell A_k.
  bool cell(unsigned k) const noexcept { return (state_ >> k) & 1u; }

  void step() noexcept {
    const auto fb = static_cast<std::uint64_t>(std::popcount(state_ & taps_) & 1);
    state_ = (state_ >> 1) | (fb << (length_ - 1));
  }

  /// Emits the current output, then steps; n bits total.
  BitSeq generate(std::size_t n) {
    BitSeq out;
    out.bits.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.bits.push_back(output());
      step();
    }
    return out;
  }

  std::vector<std::uint8_t> state_bits() const {
    std::vector<std::uint8_t> s(length_);
    for (unsigned k = 0; k < length_; ++k) s[k] = cell(k);
    return s;
  }

 private:
  Gf2Poly charpoly_;
  unsigned length_ = 0;
  std::uint64_t state_ = 0;
  std::uint64_t taps_ = 0;
};

struct LfsrState {
  Gf2Poly charpoly;
  std::vector<std::uint8_t> state;
};

inline BitSeq lfsr_generate(const LfsrState& st, std::size_t n) {
  Lfsr reg(st.charpoly, st.state);
  return reg.generate(n);
}

}  // namespace shrinkca
