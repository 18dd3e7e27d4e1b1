#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace shrinkca {

/// Dense bit vector used as a matrix row over GF(2).
class Gf2Row {
 public:
  Gf2Row() = default;
  explicit Gf2Row(std::size_t ncols) : ncols_(ncols), words_((ncols + 63) / 64, 0) {}

  std::size_t size() const noexcept { return ncols_; }
  bool get(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool v) noexcept {
    const auto mask = std::uint64_t{1} << (i % 64);
    if (v) words_[i / 64] |= mask;
    else words_[i / 64] &= ~mask;
  }
  void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  Gf2Row& operator^=(const Gf2Row& o) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  bool any() const noexcept {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  /// Inner product over GF(2).
  bool dot(const std::vector<std::uint8_t>& x) const noexcept {
    bool acc = false;
    for (std::size_t i = 0; i < ncols_; ++i) acc ^= get(i) && x[i];
    return acc;
  }

 private:
  std::size_t ncols_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Solves rows * x = rhs over GF(2). Among all solutions returns the
/// lexicographically smallest x, reading x[0] as the most significant bit.
/// nullopt when the system is inconsistent.
inline std::optional<std::vector<std::uint8_t>> solve_gf2_lexmin(std::vector<Gf2Row> rows,
                                                                 std::vector<std::uint8_t> rhs,
                                                                 std::size_t ncols) {
  // Pivot from the last column backwards, so every pivot variable depends only
  // on free variables to its left; free variables are then set to zero.
  std::vector<std::ptrdiff_t> pivot_row_of(ncols, -1);
  std::size_t rank = 0;
  for (std::size_t c = ncols; c-- > 0 && rank < rows.size();) {
    std::size_t p = rank;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    std::swap(rhs[p], rhs[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].get(c)) {
        rows[r] ^= rows[rank];
        rhs[r] ^= rhs[rank];
      }
    }
    pivot_row_of[c] = static_cast<std::ptrdiff_t>(rank);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rhs[r]) return std::nullopt;

  std::vector<std::uint8_t> x(ncols, 0);
  for (std::size_t c = 0; c < ncols; ++c) {
    if (pivot_row_of[c] < 0) continue;
    const auto& row = rows[static_cast<std::size_t>(pivot_row_of[c])];
    bool v = rhs[static_cast<std::size_t>(pivot_row_of[c])];
    for (std::size_t j = 0; j < c; ++j) v ^= row.get(j) && x[j];
    x[c] = v;
  }
  return x;
}

/// Incremental span of (vector, value) pairs for a linear functional f on
/// GF(2)^m, m <= 64: each insert asserts f(vec) = value. Queries answer f(v)
/// whenever v lies in the span of what has been asserted so far.
class LinearKnowledge {
 public:
  enum class Insert { Added, Redundant, Conflict };

  Insert insert(std::uint64_t vec, bool value) {
    auto [residue, v] = reduce(vec, value);
    if (residue == 0) return v ? Insert::Conflict : Insert::Redundant;
    const int pivot = 63 - std::countl_zero(residue);
    // keep the basis fully reduced on pivot bits
    for (auto& e : basis_) {
      if ((e.vec >> pivot) & 1u) {
        e.vec ^= residue;
        e.value ^= v;
      }
    }
    basis_.push_back({residue, v, pivot});
    pivots_ |= std::uint64_t{1} << pivot;
    return Insert::Added;
  }

  std::optional<bool> query(std::uint64_t vec) const {
    auto [residue, v] = reduce(vec, false);
    if (residue != 0) return std::nullopt;
    return v;
  }

  std::size_t rank() const noexcept { return basis_.size(); }

  /// Complement directions: unit vectors on non-pivot bits below `m`.
  std::vector<std::uint64_t> free_directions(unsigned m) const {
    std::vector<std::uint64_t> out;
    for (unsigned b = 0; b < m; ++b)
      if (!((pivots_ >> b) & 1u)) out.push_back(std::uint64_t{1} << b);
    return out;
  }

 private:
  struct Entry {
    std::uint64_t vec;
    bool value;
    int pivot;
  };

  std::pair<std::uint64_t, bool> reduce(std::uint64_t vec, bool value) const {
    for (const auto& e : basis_) {
      if ((vec >> e.pivot) & 1u) {
        vec ^= e.vec;
        value ^= e.value;
      }
    }
    return {vec, value};
  }

  std::vector<Entry> basis_;
  std::uint64_t pivots_ = 0;
};

}  // namespace shrinkca
