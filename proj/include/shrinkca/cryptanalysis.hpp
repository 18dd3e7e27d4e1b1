#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shrinkca/bit_seq.hpp"
#include "shrinkca/error.hpp"
#include "shrinkca/field_table.hpp"
#include "shrinkca/generators.hpp"
#include "shrinkca/gf2_linear.hpp"
#include "shrinkca/lfsr.hpp"
#include "shrinkca/linearizer.hpp"
#include "shrinkca/rule_vector.hpp"

namespace shrinkca {

enum class Provenance : std::uint8_t { Intercepted, Reconstructed, Deduced };

constexpr std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Intercepted: return "intercepted";
    case Provenance::Reconstructed: return "reconstructed";
    case Provenance::Deduced: return "deduced";
  }
  return "?";
}

/// Keystream bits known at absolute positions within one period T.
/// A position is never stored twice with different values.
class KnownBits {
 public:
  struct Entry {
    bool bit;
    Provenance provenance;
  };

  explicit KnownBits(std::uint64_t period) : period_(period) {
    if (period == 0) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  }

  std::uint64_t period() const noexcept { return period_; }

  /// True when the position is new. Re-asserting the same value is a no-op;
  /// a different value throws ConflictingReconstruction.
  bool set(std::uint64_t pos, bool bit, Provenance prov) {
    if (pos >= period_) throw Error(ErrorCode::InvalidArgument, "position " + std::to_string(pos) + " outside period");
    auto [it, inserted] = bits_.try_emplace(pos, Entry{bit, prov});
    if (!inserted && it->second.bit != bit)
      throw Error(ErrorCode::ConflictingReconstruction,
                  "two derivations disagree at position " + std::to_string(pos));
    return inserted;
  }

  std::optional<bool> get(std::uint64_t pos) const {
    auto it = bits_.find(pos);
    if (it == bits_.end()) return std::nullopt;
    return it->second.bit;
  }

  std::optional<Provenance> provenance(std::uint64_t pos) const {
    auto it = bits_.find(pos);
    if (it == bits_.end()) return std::nullopt;
    return it->second.provenance;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  const std::map<std::uint64_t, Entry>& entries() const noexcept { return bits_; }

  std::vector<std::uint64_t> positions(Provenance prov) const {
    std::vector<std::uint64_t> out;
    for (const auto& [pos, e] : bits_)
      if (e.provenance == prov) out.push_back(pos);
    return out;
  }

 private:
  std::uint64_t period_;
  std::map<std::uint64_t, Entry> bits_;
};

/// Offsets c with x_i^t = sum z_{t+c} in sub-triangle n: the exponents of
/// P_{i-1}(x)^n for the sub-automaton R_1..R_{i-1}.
inline std::vector<std::size_t> subtriangle_expressions(const RuleVector& rules, std::size_t i, std::size_t n) {
  if (i < 2 || i > rules.size() + 1) throw Error(ErrorCode::InvalidArgument, "cell index out of range");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
  const auto prefixes = prefix_char_polys(rules);
  return poly_pow(prefixes[i - 1], n).exponents();
}

/// Upper bound on phase-one output: sum over columns of sum_{k>=2} C(N_l, k),
/// N_l being the number of intercepted bits in column l.
inline std::uint64_t phase1_count_formula(std::size_t intercepted, std::size_t d) {
  std::uint64_t total = 0;
  for (std::size_t col = 0; col < d; ++col) {
    const std::size_t nl = col < intercepted ? (intercepted - col + d - 1) / d : 0;
    if (nl >= 64) throw Error(ErrorCode::InvalidArgument, "column too long for the count formula");
    // sum_{k>=2} C(n, k) = 2^n - 1 - n
    total += (std::uint64_t{1} << nl) - 1 - nl;
  }
  return total;
}

/// One collapsing sub-triangle relation and what it contributed.
struct Phase1Derivation {
  std::size_t automaton = 0;  // 0 or 1
  std::size_t cell = 0;       // i
  std::size_t depth = 0;      // n
  std::vector<std::size_t> offsets;
  std::size_t residue = 0;
  FieldLog log;               // nullopt: offsets sum to zero, check only
  std::size_t applications = 0;
  std::size_t new_bits = 0;
};

struct Phase1Result {
  KnownBits known;
  std::vector<std::uint64_t> reconstructed;  // sorted
  std::vector<Phase1Derivation> derivations;
};

/// Chained sub-triangle reconstruction. `ft` is built on P(x), the modulus
/// shared by every interleaved column.
inline Phase1Result phase1_reconstruct(const BitSeq& intercepted, const std::array<RuleVector, 2>& pair,
                                       const FieldTable& ft, unsigned l1) {
  if (l1 < 1 || l1 > 30) throw Error(ErrorCode::InvalidArgument, "l1 out of range");
  const std::uint64_t d = std::uint64_t{1} << (l1 - 1);
  const std::uint64_t order = ft.order();
  const std::uint64_t period = order * d;
  const std::uint64_t origin = intercepted.origin;
  const std::size_t r = intercepted.size();

  Phase1Result res{KnownBits(period), {}, {}};
  for (std::size_t k = 0; k < r; ++k) res.known.set((origin + k) % period, intercepted[k], Provenance::Intercepted);

  for (std::size_t a = 0; a < pair.size(); ++a) {
    const auto prefixes = prefix_char_polys(pair[a]);
    for (std::size_t i = 2; i <= pair[a].size() + 1; ++i) {
      const Gf2Poly& base = prefixes[i - 1];
      Gf2Poly pw = base;
      for (std::size_t n = 1; static_cast<std::size_t>(pw.deg()) < r; ++n, pw = pw * base) {
        const auto offsets = pw.exponents();
        if (offsets.size() < 2) continue;
        const std::size_t rho = offsets.front() % d;
        if (!std::all_of(offsets.begin(), offsets.end(), [&](std::size_t o) { return o % d == rho; })) continue;

        std::vector<std::int64_t> rows;
        rows.reserve(offsets.size());
        for (auto o : offsets) rows.push_back(static_cast<std::int64_t>((o - rho) / d));
        Phase1Derivation der{a, i, n, offsets, rho, sum_of_powers(ft, rows), 0, 0};

        const std::size_t span = offsets.back();
        for (std::size_t t = 0; t + span < r; ++t) {
          bool v = false;
          for (auto o : offsets) v ^= intercepted[t + o] != 0;
          ++der.applications;
          if (!der.log) {
            if (v)
              throw Error(ErrorCode::ConflictingReconstruction,
                          "vanishing sub-triangle sum is nonzero at offset " + std::to_string(t));
            continue;
          }
          const std::uint64_t pos = (origin + t + rho + std::uint64_t{*der.log} * d) % period;
          if (res.known.set(pos, v, Provenance::Reconstructed)) ++der.new_bits;
        }
        res.derivations.push_back(std::move(der));
      }
    }
  }
  res.reconstructed = res.known.positions(Provenance::Reconstructed);
  return res;
}

/// Row j_i of the first column holding b_i, from j_i X = i mod N, for
/// i = 1..count-1. X is the coset exponent E or D.
inline std::vector<std::uint64_t> is2_bit_positions_for_exponent(std::uint64_t x, std::uint64_t n, std::size_t count) {
  auto inv = mod_inverse(x % n, n);
  if (!inv) throw Error(ErrorCode::NonInvertible, "exponent " + std::to_string(x) + " is not invertible mod " + std::to_string(n));
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 1; i < count; ++i) out.push_back((i * *inv) % n);
  return out;
}

/// j_1..j_{L2-1} for a shrinking generator (w = 0) or a CCSG with w taps.
inline std::vector<std::uint64_t> is2_bit_positions(unsigned l1, unsigned l2, unsigned w = 0) {
  if (l2 < 1 || l2 > 63) throw Error(ErrorCode::InvalidArgument, "l2 out of range");
  return is2_bit_positions_for_exponent(coset_exponent(l1, w), (std::uint64_t{1} << l2) - 1, l2);
}

/// Alignment of one keystream column against the span built so far.
struct ColumnCheck {
  std::size_t column = 0;         // c: index of the one in the SR_1 period
  std::uint64_t position = 0;     // p_c
  std::uint64_t shift = 0;        // row of the base sequence holding row 0
  std::vector<std::uint64_t> contradiction_rows;
};

enum class NodeStatus : std::uint8_t { Open, Rejected, Unverified, Survivor };

constexpr std::string_view to_string(NodeStatus s) noexcept {
  switch (s) {
    case NodeStatus::Open: return "open";
    case NodeStatus::Rejected: return "rejected";
    case NodeStatus::Unverified: return "unverified";
    case NodeStatus::Survivor: return "survivor";
  }
  return "?";
}

struct HypothesisNode {
  std::vector<std::uint8_t> prefix;  // a_0 = 1
  std::vector<ColumnCheck> columns;
  NodeStatus status = NodeStatus::Open;
  std::size_t rank = 0;
  std::string note;
};

struct Candidate {
  std::vector<std::uint8_t> is1;
  std::vector<std::uint8_t> is2;
  friend auto operator<=>(const Candidate&, const Candidate&) = default;
};

struct Phase2Result {
  std::vector<Candidate> survivors;  // sorted
  std::size_t nodes_expanded = 0;    // full-length IS_1 hypotheses evaluated
  std::size_t completions = 0;       // of those, consistent ones sent to IS_2 completion
  std::vector<HypothesisNode> trace; // pre-order
};

inline constexpr std::size_t kMaxCompletionNullity = 16;

namespace detail {

class Phase2Search {
 public:
  Phase2Search(const KnownBits& known, const GeneratorSpec& pub, const FieldTable& ft)
      : known_(known), pub_(pub), ft_(ft) {
    validate(pub, false);
    if (ft.degree() != pub.l2) throw Error(ErrorCode::InvalidArgument, "field degree must equal l2");
    d_ = std::uint64_t{1} << (pub.l1 - 1);
    n_ = ft.order();
    if (known.period() != n_ * d_) throw Error(ErrorCode::InvalidArgument, "known-bit period mismatch");
    e_ = coset_exponent(pub.l1, static_cast<unsigned>(pub.taps.size())) % n_;
    auto inv = mod_inverse(e_, n_);
    if (!inv) throw Error(ErrorCode::NonInvertible, "coset exponent not invertible mod 2^l2 - 1");
    e_inv_ = *inv;
    max_tap_ = pub.max_tap();
    columns_.resize(d_);
    for (const auto& [pos, e] : known.entries()) columns_[pos % d_].push_back({pos / d_, e.bit});
    for (const auto& [pos, e] : known.entries()) max_pos_ = std::max(max_pos_, pos);
  }

  Phase2Result run() {
    Branch root;
    dfs({1}, root);
    std::sort(result_.survivors.begin(), result_.survivors.end());
    return std::move(result_);
  }

 private:
  struct Branch {
    LinearKnowledge span;
    std::size_t next_column = 0;
  };

  std::uint64_t decimation(const std::vector<std::uint8_t>& a, std::size_t t) const {
    std::uint64_t x = 1;
    for (std::size_t k = 0; k < pub_.taps.size(); ++k)
      if (a[t + pub_.taps[k]]) x += std::uint64_t{1} << k;
    return x;
  }

  /// Inserts column c at shift; false (with rows recorded) on contradiction.
  bool align(Branch& br, std::size_t c, std::uint64_t position, std::uint64_t clocks, HypothesisNode& node) {
    ColumnCheck chk{c, position, (clocks % n_) * e_inv_ % n_, {}};
    const auto& col = columns_[c];
    for (const auto& [row, bit] : col) {
      auto v = br.span.query(ft_.antilog(row + chk.shift));
      if (v && *v != bit) chk.contradiction_rows.push_back(row);
    }
    if (chk.contradiction_rows.empty()) {
      for (const auto& [row, bit] : col) {
        if (br.span.insert(ft_.antilog(row + chk.shift), bit) == LinearKnowledge::Insert::Conflict) {
          chk.contradiction_rows.push_back(row);
          break;
        }
      }
    }
    const bool ok = chk.contradiction_rows.empty();
    node.columns.push_back(std::move(chk));
    return ok;
  }

  /// Aligns every column whose start can be computed from the bits in `a`.
  bool align_available(Branch& br, const std::vector<std::uint8_t>& a, std::size_t usable, HypothesisNode& node) {
    std::uint64_t clocks = 0;
    std::size_t c = 0;
    for (std::size_t p = 0; p < usable && c < d_; ++p) {
      if (a[p]) {
        // X_t for t < p needs a up to p - 1 + max_tap
        const bool computable = p == 0 || p - 1 + max_tap_ < a.size();
        if (!computable) break;
        if (c >= br.next_column) {
          if (!align(br, c, p, clocks, node)) return false;
          br.next_column = c + 1;
        }
        ++c;
      }
      if (p + max_tap_ >= a.size()) break;
      clocks += decimation(a, p);
    }
    return true;
  }

  void dfs(std::vector<std::uint8_t> prefix, Branch br) {
    const std::size_t idx = result_.trace.size();
    result_.trace.push_back({prefix, {}, NodeStatus::Open, 0, {}});
    const bool leaf = prefix.size() == pub_.l1;

    if (!leaf) {
      HypothesisNode& node = result_.trace[idx];
      const bool ok = align_available(br, prefix, prefix.size(), node);
      node.rank = br.span.rank();
      if (!ok) {
        node.status = NodeStatus::Rejected;
        return;
      }
      for (std::uint8_t bit : {std::uint8_t{1}, std::uint8_t{0}}) {
        auto child = prefix;
        child.push_back(bit);
        dfs(std::move(child), br);
      }
      return;
    }

    ++result_.nodes_expanded;
    const std::uint64_t t1 = (std::uint64_t{1} << pub_.l1) - 1;
    Lfsr sr1(pub_.c1, prefix);
    auto a = sr1.generate(t1 + max_tap_).bits;
    HypothesisNode* node = &result_.trace[idx];
    if (std::count(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(t1), 1) != static_cast<std::ptrdiff_t>(d_)) {
      node->status = NodeStatus::Rejected;
      node->note = "SR_1 period does not contain 2^(l1-1) ones";
      return;
    }
    const bool ok = align_available(br, a, t1, *node);
    node->rank = br.span.rank();
    if (!ok) {
      node->status = NodeStatus::Rejected;
      return;
    }
    ++result_.completions;
    complete(prefix, br, idx);
  }

  void complete(const std::vector<std::uint8_t>& is1, const Branch& br, std::size_t idx) {
    const auto free = br.span.free_directions(pub_.l2);
    if (free.size() > kMaxCompletionNullity) {
      result_.trace[idx].status = NodeStatus::Unverified;
      result_.trace[idx].note = "too few known bits to pin IS_2";
      return;
    }
    const std::uint64_t horizon = max_pos_ + 1;
    bool any = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
      LinearKnowledge span = br.span;
      for (std::size_t k = 0; k < free.size(); ++k) span.insert(free[k], (mask >> k) & 1u);
      std::vector<std::uint8_t> is2(pub_.l2);
      bool nonzero = false;
      for (std::uint64_t i = 0; i < pub_.l2; ++i) {
        is2[i] = *span.query(ft_.antilog(i * e_inv_ % n_));
        nonzero |= is2[i] != 0;
      }
      if (!nonzero) continue;
      GeneratorSpec full = pub_;
      full.is1 = is1;
      full.is2 = is2;
      const auto z = keystream_generate(full, horizon);
      bool match = true;
      for (const auto& [pos, e] : known_.entries()) {
        if (z[pos] != e.bit) {
          match = false;
          break;
        }
      }
      if (match) {
        result_.survivors.push_back({is1, is2});
        any = true;
      }
    }
    result_.trace[idx].status = any ? NodeStatus::Survivor : NodeStatus::Unverified;
    if (!any) result_.trace[idx].note = "regenerated keystream disagrees with known bits";
  }

  const KnownBits& known_;
  const GeneratorSpec& pub_;
  const FieldTable& ft_;
  std::uint64_t d_ = 0, n_ = 0, e_ = 0, e_inv_ = 0, max_pos_ = 0;
  unsigned max_tap_ = 0;
  std::vector<std::vector<std::pair<std::uint64_t, bool>>> columns_;
  Phase2Result result_;
};

}  // namespace detail

/// Hypothesis tree over IS_1 (a_0 = 1), pruning on contradictions between
/// aligned keystream columns, then completing IS_2 and verifying by
/// regeneration. Candidates that reproduce every known bit are returned.
inline Phase2Result phase2_search(const KnownBits& known, const GeneratorSpec& pub, const FieldTable& ft) {
  return detail::Phase2Search(known, pub, ft).run();
}

struct AttackResult {
  Candidate seeds;
  BitSeq keystream;  // one full period from position 0
  Linearization linearization;
  Phase1Result phase1;
  Phase2Result phase2;
};

inline std::string format_candidate(const Candidate& c) {
  std::string s = "is1=";
  for (auto b : c.is1) s += b ? '1' : '0';
  s += " is2=";
  for (auto b : c.is2) s += b ? '1' : '0';
  return s;
}

/// Linearize, reconstruct, search, regenerate. Throws Exhausted when no
/// candidate survives and Ambiguous (listing all) when several do.
inline AttackResult full_attack(const BitSeq& intercepted, const GeneratorSpec& pub) {
  validate(pub, false);
  if (pub.l1 < 2) throw Error(ErrorCode::InvalidArgument, "attack needs l1 >= 2");
  const std::uint64_t d = std::uint64_t{1} << (pub.l1 - 1);
  if (intercepted.size() < d)
    throw Error(ErrorCode::InvalidArgument, "need at least " + std::to_string(d) + " intercepted bits");

  auto lin = linearize_generator(pub.l1, pub.c2, static_cast<unsigned>(pub.taps.size()));
  FieldTable ft(lin.p);
  auto ph1 = phase1_reconstruct(intercepted, {lin.first(), lin.second()}, ft, pub.l1);
  auto ph2 = phase2_search(ph1.known, pub, ft);

  if (ph2.survivors.empty()) throw Error(ErrorCode::Exhausted, "every hypothesis contradicts the known bits");
  if (ph2.survivors.size() > 1) {
    std::string msg = std::to_string(ph2.survivors.size()) + " candidates survive:";
    for (const auto& c : ph2.survivors) msg += " [" + format_candidate(c) + "]";
    throw Error(ErrorCode::Ambiguous, msg);
  }

  AttackResult out{ph2.survivors.front(), {}, std::move(lin), std::move(ph1), std::move(ph2)};
  GeneratorSpec full = pub;
  full.is1 = out.seeds.is1;
  full.is2 = out.seeds.is2;
  out.keystream = keystream_generate(full, out.phase1.known.period());
  for (std::size_t k = 0; k < intercepted.size(); ++k) {
    if (out.keystream[(intercepted.origin + k) % out.keystream.size()] != intercepted[k])
      throw Error(ErrorCode::Exhausted, "regenerated keystream does not reproduce the intercept");
  }
  for (std::uint64_t pos = 0; pos < out.keystream.size(); ++pos)
    out.phase1.known.set(pos, out.keystream[pos], Provenance::Deduced);
  return out;
}

}  // namespace shrinkca
