#include <gtest/gtest.h>

#include "hyperarr/lattice.hpp"
#include "hyperarr/sampler.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace hyperarr;

TEST(Property, MobiusZeroSum) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Arrangement A = oracle::random_arrangement(2 + s % 3, 2 + s % 7, 900 + s);
    const auto c = property::mobius_zero_sum(build_poset(A));
    EXPECT_TRUE(c.ok) << c.detail;
  }
  for (std::size_t d = 2; d <= 4; ++d) EXPECT_TRUE(property::mobius_zero_sum(build_poset(resonance_arrangement(d))).ok);
}

TEST(Property, DeletionRestriction) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Arrangement A = oracle::random_arrangement(2 + s % 2, 3 + s % 5, 1900 + s);
    const auto c = property::deletion_restriction(A);
    EXPECT_TRUE(c.ok) << c.detail << " seed " << s;
  }
  EXPECT_TRUE(property::deletion_restriction(resonance_arrangement(3)).ok);
}

TEST(Property, JacobiansMatchFiniteDifferences) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto c = property::jacobians_match(random_essential_arrangement(2 + s % 2, 3 + s % 4, 60 + s), s);
    EXPECT_TRUE(c.ok) << c.detail;
  }
}

TEST(Property, HessiansNegativeAtSamplePoints) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Arrangement A = random_essential_arrangement(2 + s % 2, 5, 80 + s);
    const auto c = property::hessians_negative(A, morse_sample(A));
    EXPECT_TRUE(c.ok) << c.detail;
  }
}

TEST(Property, DeterministicUnderFixedSeed) {
  const auto c = property::deterministic(resonance_arrangement(3), 20240601);
  EXPECT_TRUE(c.ok) << c.detail;
}

TEST(Property, ThreadCountDoesNotChangeSamples) {
  const Arrangement A = random_essential_arrangement(3, 7, 5);
  MorseOptions opt;
  opt.threads = 1;
  const SampleReport a = morse_sample(A, opt);
  opt.threads = 4;
  const SampleReport b = morse_sample(A, opt);
  EXPECT_EQ(a.points, b.points);
}
