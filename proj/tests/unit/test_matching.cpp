#include <gtest/gtest.h>

#include <random>

#include "alphamix/error.hpp"
#include "alphamix/matching.hpp"
#include "generators.hpp"
#include "naive_oracle.hpp"

using namespace alphamix;

TEST(Matching, IdenticalTemplatesScoreZero) {
  std::mt19937_64 rng(1);
  const IrisTemplate a = IrisTemplate::with_full_mask(gen::random_grid(rng, 20, 512));
  for (std::size_t range : {0u, 1u, 8u}) {
    const MatchOutcome m = hamming_distance(a, a, range);
    ASSERT_TRUE(m.comparable());
    EXPECT_EQ(m.score, 0.0);
    EXPECT_EQ(m.shift, 0);
  }
}

TEST(Matching, ComplementScoresOne) {
  std::mt19937_64 rng(2);
  const BitGrid code = gen::random_grid(rng, 20, 512);
  const MatchOutcome m = hamming_distance(IrisTemplate::with_full_mask(code),
                                          IrisTemplate::with_full_mask(~code), 0);
  EXPECT_EQ(m.score, 1.0);
}

TEST(Matching, HandWorkedPair) {
  const MatchOutcome m = hamming_distance(gen::full({"10110010"}), gen::full({"10010110"}), 0);
  EXPECT_EQ(m.disagreeing, 2u);
  EXPECT_EQ(m.compared, 8u);
  EXPECT_EQ(m.score, 0.25);
}

TEST(Matching, ShiftFindsRotatedCopy) {
  std::mt19937_64 rng(3);
  const IrisTemplate a = gen::random_template(rng, 20, 512);
  const IrisTemplate b(a.code().rotated(-3), a.mask().rotated(-3));
  const MatchOutcome m = hamming_distance(a, b, 8);
  EXPECT_EQ(m.score, 0.0);
  EXPECT_EQ(m.shift, 3);
  EXPECT_GT(hamming_distance(a, b, 2).score, 0.3);
}

TEST(Matching, EmptyJointMaskIsIncomparable) {
  const IrisTemplate a(gen::grid({"1111"}), gen::grid({"1100"}));
  const IrisTemplate b(gen::grid({"0000"}), gen::grid({"0011"}));
  EXPECT_FALSE(hamming_distance(a, b, 0).comparable());
  EXPECT_FALSE(hamming_distance(a, b, 0).matches(1.0));
  // A one-column shift brings the valid regions together.
  EXPECT_TRUE(hamming_distance(a, b, 1).comparable());
}

TEST(Matching, Preconditions) {
  EXPECT_THROW(hamming_distance(gen::full({"10"}), gen::full({"101"}), 0), DimensionError);
  EXPECT_THROW(hamming_distance(gen::full({"101"}), gen::full({"101"}), 3), InvalidArgument);
}

TEST(Matching, PackedEqualsNaiveProperty) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 2 + rng() % 70;
    const double mask_p = (trial % 5 == 0) ? 0.05 : 0.8;
    const IrisTemplate a = gen::random_template(rng, rows, cols, mask_p);
    const IrisTemplate b = gen::random_template(rng, rows, cols, mask_p);
    const std::size_t range = rng() % std::min<std::size_t>(cols, 6);
    const MatchOutcome got = hamming_distance(a, b, range);
    const oracle::Score want = oracle::hamming(a, b, range);
    ASSERT_EQ(got.comparable(), want.comparable);
    if (want.comparable) {
      EXPECT_EQ(got.disagreeing * want.valid, want.diff * got.compared);
      EXPECT_EQ(got.score, want.value());
    }
  }
}

TEST(Matching, SymmetricUnderPartialMasks) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const IrisTemplate a = gen::random_template(rng, 4, 40, 0.6);
    const IrisTemplate b = gen::random_template(rng, 4, 40, 0.6);
    const std::size_t range = rng() % 5;
    const MatchOutcome ab = hamming_distance(a, b, range);
    const MatchOutcome ba = hamming_distance(b, a, range);
    ASSERT_EQ(ab.comparable(), ba.comparable());
    if (ab.comparable()) EXPECT_EQ(ab.score, ba.score);
  }
}

TEST(Matching, ProbeEqualsDirectCall) {
  std::mt19937_64 rng(6);
  const IrisTemplate probe = gen::random_template(rng, 20, 512);
  const ShiftedProbe shifted(probe, 8);
  for (int i = 0; i < 20; ++i) {
    const IrisTemplate other = gen::random_template(rng, 20, 512);
    EXPECT_EQ(shifted.match(other), hamming_distance(other, probe, 8));
  }
}
