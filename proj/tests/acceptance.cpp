// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "attack_sweep.hpp"
#include "oracles.hpp"
#include "shrinkca/shrinkca.hpp"

using namespace shrinkca;

namespace {

Gf2Poly P(const char* s) { return Gf2Poly::parse(s); }
std::vector<std::uint8_t> bits(const char* s) { return BitSeq::parse(s).bits; }

struct Check {
  bool ok = true;
  std::string why;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_ms, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  c.expect(ms < limit_ms, "runtime " + std::to_string(ms) + " ms over limit");
  std::printf("%s %2d %-44s %10.3f ms%s%s\n", c.ok ? "PASS" : "FAIL", id, name, ms, c.ok ? "" : "  ", c.why.c_str());
  if (!c.ok) ++failures;
}

std::string rows_of(const Phase2Result& r, const char* prefix) {
  for (const auto& n : r.trace) {
    if (n.prefix != bits(prefix)) continue;
    if (n.status != NodeStatus::Rejected) return "not rejected";
    std::set<std::uint64_t> rows;
    for (const auto& c : n.columns) rows.insert(c.contradiction_rows.begin(), c.contradiction_rows.end());
    std::string s;
    for (auto q : rows) s += (s.empty() ? "" : ",") + std::to_string(q);
    return s;
  }
  return "not visited";
}

}  // namespace

int main() {
  const GeneratorSpec ex1{3, 4, P("0,2,3"), P("0,1,4"), bits("100"), bits("1000"), {}};
  GeneratorSpec ex2 = ex1;
  ex2.taps = {0};
  const GeneratorSpec inst{4, 5, P("0,3,4"), P("0,1,3,4,5"), bits("1001"), bits("10101"), {}};
  const BitSeq intercept = BitSeq::parse("101000011001110011010011");

  criterion(1, "shrinking generator example", 1.0, [&](Check& c) {
    c.expect(lfsr_generate({ex1.c1, *ex1.is1}, 7).to_string() == "1001110", "SR1 stream");
    c.expect(lfsr_generate({ex1.c2, *ex1.is2}, 15).to_string() == "100010011010111", "SR2 stream");
    c.expect(shrink_generate(ex1, 13).to_string() == "1010110110010", "shrunken bits");
  });

  criterion(2, "clock-controlled example", 1.0, [&](Check& c) {
    const auto tr = trace_ccsg(ex2, 20);
    const std::vector<std::uint64_t> want{2, 1, 1, 2, 2, 2, 1, 2, 1, 1, 2, 2, 2, 1, 2, 1, 1, 2, 2};
    c.expect(std::equal(want.begin(), want.end(), tr.x.begin()), "X_t sequence");
    c.expect(tr.b_prime.to_string() == "10010110111010101011", "b' line");
    c.expect(ccsg_generate(ex2, 12).to_string() == "110101011011", "output bits");
  });

  criterion(3, "automaton state table", 1.0, [&](Check& c) {
    const char* rows[] = {"0001110110", "0010010001", "0111101010", "1011101011", "0001101001",
                          "0010101110", "0110000101", "1001001100", "0111110010", "1011011111"};
    const auto got = ca_states({RuleVector::parse("0111001110"), bits(rows[0])}, 10);
    for (std::size_t t = 0; t < 10; ++t) c.expect(got[t] == bits(rows[t]), "row " + std::to_string(t));
  });

  criterion(4, "coset, synthesis and concatenation examples", 1000.0, [&](Check& c) {
    const auto a = linearize_generator(3, P("0,1,2,4,5"), 0);
    c.expect(a.exponent == 7 && a.p == P("0,2,5"), "shrink coset");
    c.expect(a.chains[0][0].to_string() == "01111" && a.chains[1][0].to_string() == "11110", "shrink pair");
    c.expect(a.chains[0][2].to_string() == "01110011111111001110", "shrink chain 1");
    c.expect(a.chains[1][2].to_string() == "11111111100111111111", "shrink chain 2");
    const auto b = linearize_generator(3, P("0,1,2,4,5"), 3);
    c.expect(b.exponent % 31 == 4 && b.p == P("0,1,2,4,5"), "ccsg coset");
    c.expect(b.chains[1][2].to_string() == "10001100000000110001", "ccsg chain from 10000");
    c.expect(b.chains[0][2].to_string() == "00000000011000000000", "ccsg chain from 00001");
  });

  criterion(5, "40-cell linearization", 1000.0, [&](Check& c) {
    const auto lin = linearize_generator(4, P("0,1,3,4,5"), 0);
    c.expect(lin.second().to_hex() == "8C0300C031", "hex of automaton from 10000");
    c.expect(char_poly_of_rules(lin.first()) == poly_pow(lin.p, 8), "partner char poly");
    c.expect(char_poly_of_rules(lin.second()) == poly_pow(lin.p, 8), "char poly");
  });

  criterion(6, "phase 1 golden reconstruction", 1000.0, [&](Check& c) {
    const auto lin = linearize_generator(4, P("0,1,3,4,5"), 0);
    FieldTable ft(lin.p);
    const auto truth = shrink_generate(inst, 248);
    const auto res = phase1_reconstruct(intercept, {lin.first(), lin.second()}, ft, 4);
    std::vector<std::uint64_t> want;
    for (std::uint64_t p = 56; p <= 63; ++p) want.push_back(p);
    for (std::uint64_t p = 152; p <= 167; ++p) want.push_back(p);
    for (std::uint64_t p = 184; p <= 191; ++p) want.push_back(p);
    c.expect(res.reconstructed == want, "reconstructed positions");
    for (auto p : res.reconstructed) c.expect(*res.known.get(p) == (truth[p] != 0), "bit " + std::to_string(p));
    const std::pair<std::uint64_t, const char*> table[] = {
        {7, "01110010"}, {19, "00111101"}, {20, "01001111"}, {23, "11101110"}};
    for (const auto& [r, s] : table) {
      std::string got;
      for (std::uint64_t col = 0; col < 8; ++col) got += truth[r * 8 + col] ? '1' : '0';
      c.expect(got == s, "table row " + std::to_string(r));
    }
  });

  criterion(7, "phase 2 golden search", 1000.0, [&](Check& c) {
    const auto res = full_attack(intercept, inst.public_part());
    c.expect(rows_of(res.phase2, "101") == "23", "prefix 101");
    c.expect(rows_of(res.phase2, "1000") == "0", "prefix 1000");
    c.expect(rows_of(res.phase2, "111") == "0,7,19,23", "prefix 111");
    c.expect(rows_of(res.phase2, "1100") == "2,7,20,23", "prefix 1100");
    c.expect(res.seeds == Candidate{bits("1001"), bits("10101")}, "survivor");
    c.expect(res.keystream == shrink_generate(inst, 248), "regenerated period");
  });

  criterion(8, "formula suite at desk scale", 30000.0, [&](Check& c) {
    std::mt19937_64 rng(8);
    for (unsigned l1 = 2; l1 <= 4; ++l1) {
      for (unsigned l2 = l1 + 1; l2 <= 7; ++l2) {
        if (std::gcd(l1, l2) != 1) continue;
        const auto st = shrunken_stats(l1, l2);
        const auto polys = oracle::primitive_polys(static_cast<int>(l2));
        // degrees 3 and 4 have only two primitive polynomials; every one is used
        for (const auto& c2 : polys) {
          GeneratorSpec s{l1, l2, oracle::primitive_polys(static_cast<int>(l1)).front(), c2,
                          sweep::random_seed(rng, l1), sweep::random_seed(rng, l2), {}};
          const auto z = shrink_generate(s, 2 * st.period);
          const std::string tag = "l1=" + std::to_string(l1) + " l2=" + std::to_string(l2) + " c2=" + c2.to_string();
          c.expect(observed_period(z) == st.period, "period " + tag);
          std::size_t ones = 0;
          for (std::size_t i = 0; i < st.period; ++i) ones += z[i];
          c.expect(ones == st.ones, "ones " + tag);
          const auto lc = static_cast<double>(linear_complexity(z));
          c.expect(lc > st.lc_lower && lc <= st.lc_upper, "linear complexity " + tag);
          try {
            const auto lin = linearize_generator(l1, c2, 0);
            const auto ann = poly_pow(lin.p, std::uint64_t{1} << (l1 - 1));
            for (std::size_t t = 0; t + static_cast<std::size_t>(ann.deg()) < z.size(); ++t)
              if (ann.apply_recurrence(z.bits, t)) {
                c.expect(false, "annihilator " + tag);
                break;
              }
          } catch (const Error& e) {
            c.expect(e.code() == ErrorCode::DegenerateCoset, e.what());
          }
        }
      }
    }
  });

  criterion(9, "algebraic property suite", 30000.0, [&](Check& c) {
    std::mt19937_64 rng(9);
    auto random_bits = [&](std::size_t n) {
      std::vector<std::uint8_t> v(n);
      for (auto& b : v) b = rng() & 1u;
      return v;
    };
    for (int it = 0; it < 100; ++it) {
      const auto r = random_bits(1 + rng() % 16);
      c.expect(char_poly_of_rules(RuleVector(r)) == oracle::transition_char_poly(r), "char poly vs determinant");
    }
    for (int it = 0; it < 200; ++it) {
      const RuleVector rv(random_bits(1 + rng() % 20));
      const auto p = char_poly_of_rules(rv);
      c.expect(char_poly_of_rules(concatenate_once(rv)) == p * p, "concatenation squares");
    }
    for (int it = 0; it < 50; ++it) {
      const auto polys = oracle::primitive_polys(2 + static_cast<int>(rng() % 11));
      const auto& p = polys[rng() % polys.size()];
      const auto [a, b] = synthesize_ca_pair(p);
      c.expect(char_poly_of_rules(a) == p && char_poly_of_rules(b) == p, "synthesis " + p.to_string());
    }
    for (int it = 0; it < 100; ++it) {
      const std::size_t n = 1 + rng() % 24;
      const RuleVector rv(random_bits(n));
      const auto s1 = random_bits(n), s2 = random_bits(n);
      std::vector<std::uint8_t> sx(n);
      for (std::size_t i = 0; i < n; ++i) sx[i] = s1[i] ^ s2[i];
      const auto t1 = ca_generate({rv, s1}, 40), t2 = ca_generate({rv, s2}, 40), tx = ca_generate({rv, sx}, 40);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < 40; ++t) c.expect(tx[i][t] == (t1[i][t] ^ t2[i][t]), "superposition");
    }
  });

  sweep::Summary sum;
  criterion(10, "attack soundness sweep", 60000.0, [&](Check& c) {
    sum = sweep::run(200, 2024);
    c.expect(sum.truth_missing == 0, "true seeds pruned in " + std::to_string(sum.truth_missing) + " instances");
    c.expect(sum.regeneration_failures == 0, "regeneration mismatch");
    c.expect(sum.unsound_bits == 0, "unsound phase 1 bits");
    c.expect(sum.bound_violations == 0, "nodes above 2^(l1-1)");
  });
  std::printf("     sweep: %zu instances, %zu unique, %zu ambiguous, %zu exhausted\n", sum.instances, sum.unique,
              sum.ambiguous, sum.exhausted);
  for (const auto& [l1, v] : sum.nodes_by_l1) {
    const double avg = sum.average_nodes(l1);
    const double target = static_cast<double>(std::uint64_t{1} << (l1 - 2));
    std::printf("     l1=%u: %zu instances, average leaves %.2f, 2^(l1-2) = %.0f (%s)\n", l1, v.second, avg, target,
                avg <= target ? "within" : "above");
  }
  return failures;
}
