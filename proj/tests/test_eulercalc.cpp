#include <gtest/gtest.h>

#include <random>

#include "hyperarr/charpoly.hpp"
#include "hyperarr/error.hpp"
#include "hyperarr/eulercalc.hpp"
#include "hyperarr/series.hpp"
#include "oracles.hpp"

using namespace hyperarr;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> r;
  for (long x : v) r.emplace_back(x);
  return r;
}

Integer binom(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

const CharPoly kEx23(ints({2, -3, 1}));

}  // namespace

TEST(Series, ReciprocalAndProduct) {
  const IntegerSeries one_minus_z = IntegerSeries::linear(6, Integer(1), Integer(-1));
  const IntegerSeries geo = one_minus_z.reciprocal();
  for (std::size_t i = 0; i <= 6; ++i) EXPECT_EQ(geo[i], 1);
  EXPECT_EQ(one_minus_z * geo, IntegerSeries::constant(6, Integer(1)));
  EXPECT_EQ(geo.pow(2)[5], 6);
  EXPECT_THROW(IntegerSeries::linear(3, Integer(2), Integer(1)).reciprocal(), Error);
  const RationalSeries half = RationalSeries::linear(3, Rational(2), Rational(1)).reciprocal();
  EXPECT_EQ(half[0], Rational(1, 2));
  EXPECT_EQ(half[3], Rational(-1, 16));
}

TEST(Euler, CCoefficientValues) {
  EXPECT_EQ(c_coefficient(2, {}), 3);
  EXPECT_EQ(c_coefficient(2, std::vector<int>{2}), 2);
  EXPECT_EQ(c_coefficient(2, std::vector<int>{1}), 2);
  EXPECT_EQ(c_coefficient(3, {}), 4);
  // plane cubic has genus 1
  EXPECT_EQ(c_coefficient(2, std::vector<int>{3}), 0);
  // quartic K3 surface
  EXPECT_EQ(c_coefficient(3, std::vector<int>{4}), 24);
}

TEST(Euler, CCoefficientMatchesChernOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> deg(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<int> degs(static_cast<std::size_t>(trial % 4));
    for (int& d : degs) d = deg(rng);
    const Integer ref = static_cast<int>(degs.size()) > n ? Integer(0) : oracle::complete_intersection_chi(n, degs);
    EXPECT_EQ(c_coefficient(static_cast<std::size_t>(n), degs), ref);
    EXPECT_EQ(c_coefficient_via_chern(static_cast<std::size_t>(n), degs), ref);
  }
}

TEST(Euler, BTildeValues) {
  EXPECT_EQ(b_tilde_coefficient(5, std::vector<int>{1}), 1);
  EXPECT_EQ(b_tilde_coefficient(3, {}), 4);
  for (int d = 1; d <= 8; ++d) {
    const std::vector<int> degs{1, 1, 2, d};
    EXPECT_EQ(b_tilde_coefficient(2, degs), d * d + d + 2) << "d = " << d;
  }
}

TEST(Euler, BTildeInclusionExclusion) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> deg(1, 6);
  for (int n = 1; n <= 6; ++n) {
    for (std::size_t r = 0; r <= 3; ++r) {
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<int> degs(r);
        for (int& d : degs) d = deg(rng);
        EXPECT_EQ(b_tilde_coefficient(static_cast<std::size_t>(n), degs), oracle::projective_complement_chi(n, degs));
      }
    }
  }
}

TEST(Euler, BCoefficientClosedForms) {
  for (std::size_t i = 0; i <= 10; ++i) {
    const long sign = (i % 2 == 0) ? 1 : -1;
    EXPECT_EQ(b_coefficient(i, std::vector<int>{2}), sign);
    EXPECT_EQ(b_coefficient(i, {}), 1);
    for (int d = 0; d <= 7; ++d) EXPECT_EQ(b_coefficient(i, std::vector<int>{d}), ipow(Integer(1 - d), i));
  }
}

TEST(Euler, BCoefficientsMatchAffineOracle) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> deg(1, 5);
  for (int n = 0; n <= 6; ++n) {
    for (std::size_t r = 0; r <= 3; ++r) {
      std::vector<int> degs(r);
      for (int& d : degs) d = deg(rng);
      const auto bs = b_coefficients(static_cast<std::size_t>(n), degs);
      ASSERT_EQ(bs.size(), static_cast<std::size_t>(n) + 1);
      EXPECT_EQ(bs.back(), oracle::affine_complement_chi(n, degs));
      EXPECT_EQ(bs.back(), b_coefficient(static_cast<std::size_t>(n), degs));
    }
  }
}

TEST(Euler, ArrangementPlusGeneric) {
  EXPECT_EQ(chi_arrangement_plus_generic(kEx23, std::vector<int>{2}), 6);
  EXPECT_EQ(chi_arrangement_plus_generic(kEx23, {}), 0);
  EXPECT_EQ(chi_arrangement_plus_generic(kEx23, std::vector<int>{3}), 12);
}

TEST(Euler, ArrangementPlusGenericIsEvaluation) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<long> coeff(-30, 30);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) % 6;
    std::vector<Integer> a(n + 1);
    for (auto& x : a) x = coeff(rng);
    a[n] = 1;
    const CharPoly chi(a);
    for (int d = 0; d <= 6; ++d)
      EXPECT_EQ(chi_arrangement_plus_generic(chi, std::vector<int>{d}), oracle::evaluate(a, Integer(1 - d)));
  }
}

TEST(Euler, MilnorVectorValidation) {
  EXPECT_THROW(MilnorVector(ints({2, 1})), Error);
  EXPECT_THROW(MilnorVector(ints({1, -1})), Error);
  EXPECT_EQ(MilnorVector(ints({1, 2, 1})).sum(), 4);
}

TEST(Euler, CsmFromMilnor) {
  // xyz: the complement of three lines in CP^2 is (C*)^2, class [CP^2] restricted to degree 1 in h^2
  const CsmClass c = csm_from_milnor(MilnorVector(ints({1, 2, 1})));
  EXPECT_EQ(c.coeffs(), ints({1, 0, 0}));
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Integer> mu(n + 1, Integer(0));
    mu[0] = 1;
    const CsmClass s = csm_from_milnor(MilnorVector(mu));
    for (std::size_t i = 0; i <= n; ++i) EXPECT_EQ(s.coeffs()[i], binom(static_cast<unsigned>(n), static_cast<unsigned>(i)));
  }
}

TEST(Euler, CsmRemoveGeneric) {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Integer> top(n + 1), lower(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      top[i] = binom(static_cast<unsigned>(n), static_cast<unsigned>(i));
      lower[i] = binom(static_cast<unsigned>(n - 1), static_cast<unsigned>(i));
    }
    EXPECT_EQ(csm_remove_generic(CsmClass(top), 1), CsmClass(lower));
  }
  // C^2 minus two crossing lines is (C*)^2 with χ = 0; a generic conic there
  // is a smooth affine conic (χ 0) minus 4 points, so removing it gives 0 − (−4) = 4.
  const CsmClass c = csm_remove_generic(csm_from_milnor(MilnorVector(ints({1, 2, 1}))), 2);
  EXPECT_EQ(c.degree(), 4);
  EXPECT_THROW(csm_remove_generic(c, 0), Error);
}

TEST(Euler, ChiFromMilnorQuadricWeights) {
  const MilnorVector mu(ints({1, 3, 4}));
  EXPECT_EQ(chi_from_milnor(mu, std::vector<int>{2}), 8);
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<long> entry(0, 20);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) % 5;
    std::vector<Integer> m(n + 1);
    m[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) m[i] = entry(rng);
    const MilnorVector v(m);
    const Integer sign = (n % 2 == 0) ? 1 : -1;
    EXPECT_EQ(chi_from_milnor(v, std::vector<int>{2}), sign * v.sum());
    for (const std::vector<int>& degs : {std::vector<int>{}, std::vector<int>{3}, std::vector<int>{2, 4}, std::vector<int>{1, 1, 5}})
      EXPECT_EQ(chi_from_milnor(v, degs), chi_from_milnor_via_csm(v, degs));
  }
}

TEST(Euler, ChiFromMilnorOfHyperplaneArrangement) {
  // Example 2.3 coned and deconed again: μ = |coefficients of χ_A| from the top,
  // and χ_A(1−d) must come back out of the Milnor route.
  const MilnorVector mu(ints({1, 3, 2}));
  for (int d = 0; d <= 5; ++d) EXPECT_EQ(chi_from_milnor(mu, std::vector<int>{d}), kEx23(Integer(1 - d)));
}

TEST(Euler, Bounds) {
  EXPECT_EQ(region_bound_complex(MilnorVector(ints({1, 2, 1}))), 4);
  EXPECT_EQ(region_bound_bezout(1, 2), 7);
  EXPECT_EQ(region_bound_bezout(2, 2), 13);
  for (unsigned k = 1; k <= 6; ++k) EXPECT_EQ(region_bound_bezout(2 * k, 2), 4 * k * k + 6 * k + 3);
  const MorseBound even = region_bound_morse(Integer(8), Integer(4));
  EXPECT_EQ(even.bound, 6);
  EXPECT_FALSE(even.parity_warning);
  const MorseBound odd = region_bound_morse(Integer(8), Integer(3));
  EXPECT_EQ(odd.bound, 6);
  EXPECT_TRUE(odd.parity_warning);
  for (long k = 1; k <= 5; ++k) EXPECT_EQ(region_bound_morse(Integer(6 * k + 2), Integer(2 * k + 2)).bound, 4 * k + 2);
  for (long N : {1L, 6L, 370L}) EXPECT_EQ(region_bound_morse(Integer(N), Integer(N)).bound, N);
  // plane curve of degree d plus a line: the left side of the paper's sum is d²+2d+3
  for (long d = 1; d <= 8; ++d)
    EXPECT_EQ(region_bound_morse(Integer(d * d + d + 2), Integer(d + 1)).bound, (d * d + 2 * d + 3 + 1) / 2);
}
