#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "shrinkca/bit_seq.hpp"
#include "shrinkca/error.hpp"
#include "shrinkca/gf2_poly.hpp"
#include "shrinkca/lfsr.hpp"

namespace shrinkca {

/// Parameters of a shrinking generator (taps empty) or a clock-controlled
/// shrinking generator. Seeds are optional so the same type carries the
/// public half of a spec into the attack.
struct GeneratorSpec {
  unsigned l1 = 0;
  unsigned l2 = 0;
  Gf2Poly c1;
  Gf2Poly c2;
  std::optional<std::vector<std::uint8_t>> is1;
  std::optional<std::vector<std::uint8_t>> is2;
  std::vector<unsigned> taps;

  bool is_ccsg() const noexcept { return !taps.empty(); }
  unsigned max_tap() const noexcept {
    unsigned m = 0;
    for (auto t : taps) m = std::max(m, t);
    return m;
  }
  GeneratorSpec public_part() const {
    GeneratorSpec p = *this;
    p.is1.reset();
    p.is2.reset();
    return p;
  }
};

/// Throws on any violation and returns non-fatal warnings.
/// With require_seeds the two initial states must be present and nonzero.
inline std::vector<std::string> validate(const GeneratorSpec& s, bool require_seeds = true) {
  std::vector<std::string> warnings;
  if (s.l1 < 1 || s.l2 < 2) throw Error(ErrorCode::InvalidArgument, "need l1 >= 1 and l2 >= 2");
  if (s.l1 >= s.l2) throw Error(ErrorCode::InvalidArgument, "need l1 < l2");
  if (std::gcd(s.l1, s.l2) != 1) throw Error(ErrorCode::InvalidArgument, "l1 and l2 must be coprime");
  if (s.l2 > 63) throw Error(ErrorCode::InvalidArgument, "l2 must be at most 63");
  if (s.c1.deg() != static_cast<long>(s.l1))
    throw Error(ErrorCode::InvalidArgument, "degree of c1 does not match l1");
  if (s.c2.deg() != static_cast<long>(s.l2))
    throw Error(ErrorCode::InvalidArgument, "degree of c2 does not match l2");
  if (!poly_is_primitive(s.c1))
    throw Error(ErrorCode::NonPrimitiveModulus, "c1 = " + s.c1.to_string() + " is not primitive");
  if (!poly_is_primitive(s.c2))
    throw Error(ErrorCode::NonPrimitiveModulus, "c2 = " + s.c2.to_string() + " is not primitive");

  std::vector<bool> seen(s.l1, false);
  for (auto t : s.taps) {
    if (t >= s.l1) throw Error(ErrorCode::InvalidArgument, "tap index " + std::to_string(t) + " out of range");
    if (seen[t]) throw Error(ErrorCode::InvalidArgument, "duplicate tap index " + std::to_string(t));
    seen[t] = true;
  }
  if (!s.taps.empty() && s.taps.size() == s.l1)
    warnings.push_back("tap count equals l1; accepted but outside the usual 0 < w < l1 range");
  if (s.taps.size() > 20) throw Error(ErrorCode::InvalidArgument, "at most 20 taps supported");

  auto check_seed = [](const std::optional<std::vector<std::uint8_t>>& seed, unsigned len,
                       const char* name, bool required) {
    if (!seed) {
      if (required) throw Error(ErrorCode::InvalidArgument, std::string(name) + " is missing");
      return;
    }
    if (seed->size() != len)
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " must have " + std::to_string(len) + " bits");
    bool any = false;
    for (auto b : *seed) any |= b != 0;
    if (!any) throw Error(ErrorCode::ZeroSeed, std::string(name) + " is all zero");
  };
  check_seed(s.is1, s.l1, "is1", require_seeds);
  check_seed(s.is2, s.l2, "is2", require_seeds);
  return warnings;
}

/// Step-by-step record of a clock-controlled run: X_t, b'_t, a_t and the
/// emitted bits.
struct CcsgTrace {
  std::vector<std::uint64_t> x;
  BitSeq b_prime;
  BitSeq a;
  BitSeq z;
};

namespace detail {

inline std::uint64_t decimation_value(const Lfsr& sr1, const std::vector<unsigned>& taps) {
  std::uint64_t x = 1;
  for (std::size_t k = 0; k < taps.size(); ++k)
    if (sr1.cell(taps[k])) x += std::uint64_t{1} << k;
  return x;
}

/// Emits SR_2's output as b'_t, keeps it when a_t = 1, then clocks SR_2 X_t
/// times. With no taps X_t = 1 and this is the plain shrinking generator.
/// Stops after n kept bits, or after max_steps SR_1 steps when tracing.
inline CcsgTrace double_decimation(const GeneratorSpec& spec, std::size_t n, bool record,
                                   std::size_t max_steps = 0) {
  validate(spec, true);
  Lfsr sr1(spec.c1, *spec.is1);
  Lfsr sr2(spec.c2, *spec.is2);
  CcsgTrace tr;
  tr.z.bits.reserve(n);
  std::size_t steps = 0;
  while (record ? steps < max_steps : tr.z.size() < n) {
    const auto x = decimation_value(sr1, spec.taps);
    const bool a = sr1.output();
    const bool b = sr2.output();
    if (record) {
      tr.x.push_back(x);
      tr.b_prime.bits.push_back(b);
      tr.a.bits.push_back(a);
    }
    if (a) tr.z.bits.push_back(b);
    for (std::uint64_t k = 0; k < x; ++k) sr2.step();
    sr1.step();
    ++steps;
  }
  return tr;
}

}  // namespace detail

inline BitSeq shrink_generate(const GeneratorSpec& spec, std::size_t n) {
  if (spec.is_ccsg()) throw Error(ErrorCode::InvalidArgument, "shrink_generate expects no taps");
  return detail::double_decimation(spec, n, false).z;
}

/// Works for any tap list; an empty list degenerates to the shrinking generator.
inline BitSeq ccsg_generate(const GeneratorSpec& spec, std::size_t n) {
  return detail::double_decimation(spec, n, false).z;
}

/// Generates shrink or CCSG output depending on the tap list.
inline BitSeq keystream_generate(const GeneratorSpec& spec, std::size_t n) {
  return detail::double_decimation(spec, n, false).z;
}

/// Records `steps` SR_1 steps of the clock-controlled construction.
inline CcsgTrace trace_ccsg(const GeneratorSpec& spec, std::size_t steps) {
  return detail::double_decimation(spec, 0, true, steps);
}

struct ShrunkenStats {
  std::uint64_t period = 0;
  double lc_lower = 0;  // exclusive
  double lc_upper = 0;  // inclusive
  std::uint64_t ones = 0;
};

inline ShrunkenStats shrunken_stats(unsigned l1, unsigned l2) {
  if (l1 < 1 || l2 < 1 || l1 + l2 > 62) throw Error(ErrorCode::InvalidArgument, "lengths out of range");
  ShrunkenStats st;
  const std::uint64_t d = std::uint64_t{1} << (l1 - 1);
  st.period = ((std::uint64_t{1} << l2) - 1) * d;
  st.lc_lower = static_cast<double>(l2) * static_cast<double>(d) / 2.0;
  st.lc_upper = static_cast<double>(l2) * static_cast<double>(d);
  st.ones = (std::uint64_t{1} << (l2 - 1)) * d;
  return st;
}

}  // namespace shrinkca
