#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "shrinkca/shrinkca.hpp"

using namespace shrinkca;

namespace {

Gf2Poly P(const char* s) { return Gf2Poly::parse(s); }
std::vector<std::uint8_t> bits(const char* s) { return BitSeq::parse(s).bits; }

GeneratorSpec example1() { return {3, 4, P("0,2,3"), P("0,1,4"), bits("100"), bits("1000"), {}}; }
GeneratorSpec example2() { return {3, 4, P("0,2,3"), P("0,1,4"), bits("100"), bits("1000"), {0}}; }
GeneratorSpec attack_instance() { return {4, 5, P("0,3,4"), P("0,1,3,4,5"), bits("1001"), bits("10101"), {}}; }

}  // namespace

TEST(ShrinkingGenerator, ExampleOneOutput) {
  EXPECT_EQ(shrink_generate(example1(), 13).to_string(), "1010110110010");
}

TEST(ShrinkingGenerator, FirstBitIsFirstSr2Bit) {
  auto s = example1();
  s.is2 = bits("0110");
  EXPECT_EQ(shrink_generate(s, 1)[0], 0);
}

TEST(ShrinkingGenerator, AttackInstancePrefix) {
  EXPECT_EQ(shrink_generate(attack_instance(), 24).to_string(), "101000011001110011010011");
}

TEST(ShrinkingGenerator, MatchesStreamOracle) {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 50; ++it) {
    GeneratorSpec s = attack_instance();
    s.is1 = std::vector<std::uint8_t>{1, static_cast<std::uint8_t>(rng() & 1), static_cast<std::uint8_t>(rng() & 1), 0};
    s.is2 = std::vector<std::uint8_t>{0, 0, 1, static_cast<std::uint8_t>(rng() & 1), static_cast<std::uint8_t>(rng() & 1)};
    EXPECT_EQ(shrink_generate(s, 300).bits, oracle::double_decimation(s.c1, *s.is1, s.c2, *s.is2, {}, 300));
  }
}

TEST(Ccsg, ExampleTwoTrace) {
  const auto tr = trace_ccsg(example2(), 20);
  const std::vector<std::uint64_t> x19(tr.x.begin(), tr.x.begin() + 19);
  EXPECT_EQ(x19, (std::vector<std::uint64_t>{2, 1, 1, 2, 2, 2, 1, 2, 1, 1, 2, 2, 2, 1, 2, 1, 1, 2, 2}));
  EXPECT_EQ(tr.b_prime.to_string(), "10010110111010101011");
  EXPECT_EQ(tr.a.to_string().substr(0, 7), "1001110");
}

TEST(Ccsg, ExampleTwoOutput) {
  EXPECT_EQ(ccsg_generate(example2(), 12).to_string(), "110101011011");
}

TEST(Ccsg, NoTapsIsTheShrinkingGenerator) {
  EXPECT_EQ(ccsg_generate(example1(), 1000), shrink_generate(example1(), 1000));
  EXPECT_EQ(ccsg_generate(attack_instance(), 1000), shrink_generate(attack_instance(), 1000));
}

TEST(Ccsg, MatchesStreamOracle) {
  auto s = example2();
  for (std::vector<unsigned> taps : {std::vector<unsigned>{0}, {1}, {2, 0}, {0, 1, 2}}) {
    s.taps = taps;
    EXPECT_EQ(ccsg_generate(s, 400).bits, oracle::double_decimation(s.c1, *s.is1, s.c2, *s.is2, taps, 400));
  }
}

TEST(Validation, RejectsBadSpecs) {
  auto expect_code = [](GeneratorSpec s, ErrorCode code) {
    try {
      validate(s);
      ADD_FAILURE() << "no error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code) << e.what();
    }
  };
  auto s = example1();
  s.is1 = bits("000");
  expect_code(s, ErrorCode::ZeroSeed);
  s = example1();
  s.c2 = P("0,1,2,3,4");
  expect_code(s, ErrorCode::NonPrimitiveModulus);
  s = example1();
  s.taps = {3};
  expect_code(s, ErrorCode::InvalidArgument);
  s = example1();
  s.l2 = 6;
  s.c2 = P("0,1,6");
  expect_code(s, ErrorCode::InvalidArgument);  // gcd(3, 6) != 1
  s = example1();
  s.is2.reset();
  expect_code(s, ErrorCode::InvalidArgument);
  EXPECT_NO_THROW(validate(s, false));
}

TEST(Validation, FullTapSetWarns) {
  auto s = example1();
  s.taps = {0, 1, 2};
  const auto w = validate(s);
  EXPECT_EQ(w.size(), 1u);
  s.taps = {0, 1};
  EXPECT_TRUE(validate(s).empty());
}

TEST(Stats, ClosedForms) {
  const auto a = shrunken_stats(3, 4);
  EXPECT_EQ(a.period, 60u);
  EXPECT_EQ(a.lc_lower, 8.0);
  EXPECT_EQ(a.lc_upper, 16.0);
  EXPECT_EQ(a.ones, 32u);
  EXPECT_EQ(shrunken_stats(4, 5).period, 248u);
  const auto b = shrunken_stats(1, 2);
  EXPECT_EQ(b.period, 3u);
  EXPECT_EQ(b.ones, 2u);
}

TEST(Stats, ExampleOneFullPeriod) {
  const auto z = shrink_generate(example1(), 120);
  EXPECT_EQ(observed_period(z), 60u);
  std::size_t ones = 0;
  for (std::size_t i = 0; i < 60; ++i) ones += z[i];
  EXPECT_EQ(ones, 32u);
  EXPECT_EQ(linear_complexity(z), 16u);
}

TEST(Stats, DeskScaleSweep) {
  for (unsigned l1 = 2; l1 <= 4; ++l1) {
    for (unsigned l2 = l1 + 1; l2 <= 7; ++l2) {
      if (std::gcd(l1, l2) != 1) continue;
      const auto st = shrunken_stats(l1, l2);
      for (const auto& c2 : oracle::primitive_polys(static_cast<int>(l2))) {
        GeneratorSpec s{l1, l2, oracle::primitive_polys(static_cast<int>(l1)).front(), c2,
                        std::vector<std::uint8_t>(l1, 1), std::vector<std::uint8_t>(l2, 1), {}};
        const auto z = shrink_generate(s, 2 * st.period);
        ASSERT_EQ(observed_period(z), st.period);
        std::size_t ones = 0;
        for (std::size_t i = 0; i < st.period; ++i) ones += z[i];
        ASSERT_EQ(ones, st.ones);
        const auto lc = static_cast<double>(linear_complexity(z));
        ASSERT_GT(lc, st.lc_lower);
        ASSERT_LE(lc, st.lc_upper);
      }
    }
  }
}

TEST(Interleaving, EveryColumnIsAShiftOfOnePnSequence) {
  const auto s = attack_instance();
  const auto z = shrink_generate(s, 2 * 248);
  const auto p = min_poly_of_power(s.c2, 15);
  for (std::size_t r = 0; r < 8; ++r) {
    const auto col = decimate(z, 8, r);
    EXPECT_EQ(berlekamp_massey(col), p);
  }
}
