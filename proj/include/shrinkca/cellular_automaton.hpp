#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "shrinkca/bit_seq.hpp"
#include "shrinkca/error.hpp"
#include "shrinkca/gf2_linear.hpp"
#include "shrinkca/rule_vector.hpp"

namespace shrinkca {

/// Null-boundary hybrid 90/150 automaton configuration.
struct CaState {
  RuleVector rules;
  std::vector<std::uint8_t> cells;  // x_1..x_L
};

/// One synchronous update: x_i <- x_{i-1} + R_i x_i + x_{i+1}, x_0 = x_{L+1} = 0.
inline std::vector<std::uint8_t> ca_step(const RuleVector& rules,
                                         const std::vector<std::uint8_t>& cells) {
  const std::size_t L = cells.size();
  std::vector<std::uint8_t> next(L);
  for (std::size_t i = 0; i < L; ++i) {
    std::uint8_t v = rules[i] ? cells[i] : 0;
    if (i > 0) v ^= cells[i - 1];
    if (i + 1 < L) v ^= cells[i + 1];
    next[i] = v;
  }
  return next;
}

inline void check_ca_state(const CaState& st) {
  if (st.rules.empty()) throw Error(ErrorCode::InvalidArgument, "automaton needs at least one cell");
  if (st.cells.size() != st.rules.size())
    throw Error(ErrorCode::InvalidArgument, "cell count does not match rule vector length");
}

/// Successive states x^0..x^{n-1} (the initial state is row 0).
inline std::vector<std::vector<std::uint8_t>> ca_states(const CaState& st, std::size_t n) {
  check_ca_state(st);
  std::vector<std::vector<std::uint8_t>> rows;
  rows.reserve(n);
  auto cur = st.cells;
  for (std::size_t t = 0; t < n; ++t) {
    rows.push_back(cur);
    cur = ca_step(st.rules, cur);
  }
  return rows;
}

/// Per-cell vertical sequences over n time steps; element i-1 is cell i's trace.
inline std::vector<BitSeq> ca_generate(const CaState& st, std::size_t n) {
  auto rows = ca_states(st, n);
  std::vector<BitSeq> traces(st.rules.size());
  for (auto& tr : traces) tr.bits.reserve(n);
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) traces[i].bits.push_back(row[i]);
  return traces;
}

/// Finds a seed whose trace at `cell` (1-based) starts with `target`.
///
/// The transition matrix is symmetric, so the row e_cell^T M^t equals the
/// state reached after t steps from the unit seed e_cell. Among several seeds
/// the lexicographically smallest (x_1 most significant) is returned.
inline std::optional<CaState> solve_cell_seed(const RuleVector& rules, std::size_t cell,
                                              const BitSeq& target) {
  const std::size_t L = rules.size();
  if (L == 0) throw Error(ErrorCode::InvalidArgument, "empty rule vector");
  if (cell < 1 || cell > L) throw Error(ErrorCode::InvalidArgument, "cell index out of range");

  std::vector<Gf2Row> rows;
  rows.reserve(target.size());
  std::vector<std::uint8_t> probe(L, 0);
  probe[cell - 1] = 1;
  for (std::size_t t = 0; t < target.size(); ++t) {
    Gf2Row row(L);
    for (std::size_t j = 0; j < L; ++j)
      if (probe[j]) row.set(j, true);
    rows.push_back(std::move(row));
    probe = ca_step(rules, probe);
  }
  auto x = solve_gf2_lexmin(std::move(rows), target.bits, L);
  if (!x) return std::nullopt;
  return CaState{rules, std::move(*x)};
}

}  // namespace shrinkca
