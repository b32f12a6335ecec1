#include <gtest/gtest.h>

#include "hyperarr/charpoly.hpp"
#include "hyperarr/error.hpp"
#include "hyperarr/io.hpp"
#include "hyperarr/lattice.hpp"
#include "oracles.hpp"

using namespace hyperarr;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> r;
  for (long x : v) r.emplace_back(x);
  return r;
}

Hyperplane plane(std::vector<long> normal, long offset) {
  Hyperplane h;
  for (long a : normal) h.normal.emplace_back(a);
  h.offset = offset;
  return h;
}

// ℓ1: y = 2, ℓ2: y = 0, ℓ3: y = x + 1
Arrangement example23() { return Arrangement(2, {plane({0, 1}, 2), plane({0, 1}, 0), plane({-1, 1}, 1)}); }

Arrangement coordinate(std::size_t n) {
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> a(n, 0);
    a[i] = 1;
    hs.push_back(plane(a, 0));
  }
  return Arrangement(n, hs);
}

}  // namespace

TEST(Arrangement, RejectsScalarMultiples) {
  EXPECT_THROW(Arrangement(2, {plane({1, 2}, 3), plane({2, 4}, 6)}), Error);
  EXPECT_NO_THROW(Arrangement(2, {plane({1, 2}, 3), plane({2, 4}, 5)}));
}

TEST(Arrangement, RejectsZeroNormalAndWrongLength) {
  EXPECT_THROW(Arrangement(2, {plane({0, 0}, 1)}), Error);
  EXPECT_THROW(Arrangement(2, {plane({1, 0, 0}, 1)}), Error);
}

TEST(Arrangement, RankAndEssential) {
  const RankInfo r = rank_and_essential(example23());
  EXPECT_EQ(r.rank, 2U);
  EXPECT_TRUE(r.essential);
  const RankInfo par = rank_and_essential(Arrangement(3, {plane({1, 0, 0}, 0), plane({1, 0, 0}, 1)}));
  EXPECT_EQ(par.rank, 1U);
  EXPECT_FALSE(par.essential);
  const RankInfo res = rank_and_essential(resonance_arrangement(4));
  EXPECT_EQ(res.rank, 4U);
  EXPECT_TRUE(res.essential);
}

TEST(Arrangement, SignVectors) {
  const Arrangement A = example23();
  const std::vector<double> p{1, 1}, q{0, 3}, on{5, 0};
  EXPECT_EQ(sign_vector_at(A, p).str(), "-+-");
  EXPECT_EQ(sign_vector_at(A, q).str(), "+++");
  try {
    sign_vector_at(A, on);
    FAIL() << "expected OnBoundary";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OnBoundary);
  }
}

TEST(Arrangement, ResonanceSizes) {
  EXPECT_EQ(resonance_arrangement(2).size(), 3U);
  EXPECT_EQ(resonance_arrangement(3).size(), 7U);
  EXPECT_EQ(resonance_arrangement(4).size(), 15U);
}

TEST(Poset, Example23) {
  const IntersectionPoset P = build_poset(example23());
  EXPECT_EQ(P.count_by_dim(), (std::vector<std::size_t>{2, 3, 1}));
  std::vector<long long> by_dim[3];
  for (std::size_t i = 0; i < P.size(); ++i) by_dim[P.flats[i].dim].push_back(P.mobius[i]);
  EXPECT_EQ(by_dim[2], (std::vector<long long>{1}));
  EXPECT_EQ(by_dim[1], (std::vector<long long>{-1, -1, -1}));
  EXPECT_EQ(by_dim[0], (std::vector<long long>{1, 1}));
}

TEST(Poset, EmptyArrangement) {
  const IntersectionPoset P = build_poset(Arrangement(3));
  ASSERT_EQ(P.size(), 1U);
  EXPECT_EQ(P.flats[0].dim, 3U);
  EXPECT_EQ(P.mobius[0], 1);
}

TEST(Poset, BooleanLattice) {
  const IntersectionPoset P = build_poset(coordinate(3));
  ASSERT_EQ(P.size(), 8U);
  for (std::size_t i = 0; i < P.size(); ++i) {
    const long long expect = ((3 - P.flats[i].dim) % 2 == 0) ? 1 : -1;
    EXPECT_EQ(P.mobius[i], expect);
  }
}

TEST(CharPoly, Example23AllRoutes) {
  const Arrangement A = example23();
  const CharPoly expect(ints({2, -3, 1}));
  EXPECT_EQ(char_poly_mobius(A), expect);
  EXPECT_EQ(char_poly_whitney(A), expect);
  const std::uint64_t primes[] = {101, 103, 107};
  EXPECT_EQ(char_poly_finite_field(A, primes), expect);
  EXPECT_EQ(char_poly_finite_field(A), expect);
  EXPECT_EQ(expect.to_string(), "t^2 - 3t + 2");
}

TEST(CharPoly, EmptyAndSingle) {
  EXPECT_EQ(char_poly_mobius(Arrangement(3)), CharPoly(ints({0, 0, 0, 1})));
  EXPECT_EQ(char_poly_whitney(Arrangement(3)), CharPoly(ints({0, 0, 0, 1})));
  EXPECT_EQ(char_poly_finite_field(Arrangement(3)), CharPoly(ints({0, 0, 0, 1})));
  EXPECT_EQ(char_poly_whitney(Arrangement(2, {plane({1, 0}, 0)})), CharPoly(ints({0, -1, 1})));
}

TEST(CharPoly, CoordinateHyperplanes) {
  const CharPoly expect(ints({-1, 3, -3, 1}));
  EXPECT_EQ(char_poly_whitney(coordinate(3)), expect);
  EXPECT_EQ(char_poly_mobius(coordinate(3)), expect);
}

TEST(CharPoly, ResonanceRegionCounts) {
  const CharPoly c3 = char_poly_mobius(resonance_arrangement(3));
  EXPECT_EQ(abs(c3(Integer(-1))), 32);
  const CharPoly c4 = char_poly_finite_field(resonance_arrangement(4));
  EXPECT_EQ(abs(c4(Integer(-1))), 370);
  EXPECT_EQ(c4, char_poly_mobius(resonance_arrangement(4)));
}

TEST(CharPoly, MatchesWhitneyOracleOnRandomArrangements) {
  for (std::uint64_t s = 0; s < 25; ++s) {
    const Arrangement A = oracle::random_arrangement(2 + s % 3, 3 + s % 5, 1000 + s);
    const CharPoly ref(oracle::whitney(A));
    EXPECT_EQ(char_poly_mobius(A), ref) << "seed " << s;
    EXPECT_EQ(char_poly_whitney(A), ref) << "seed " << s;
  }
}

TEST(CharPoly, ValueAtPrimeCountsPoints) {
  // χ(p) = #(F_p^n minus A) for primes of good reduction
  for (const Arrangement& A : {example23(), resonance_arrangement(3), coordinate(3)}) {
    const CharPoly chi = char_poly_mobius(A);
    for (std::uint64_t p : {31ULL, 37ULL, 101ULL}) {
      EXPECT_EQ(chi(Integer(static_cast<unsigned long>(p))), Integer(static_cast<unsigned long>(oracle::fp_complement_count(A, p))));
    }
  }
}

TEST(CharPoly, FiniteFieldPointCounts) {
  const Arrangement A = resonance_arrangement(3);
  const IntersectionPoset P = build_poset(A);
  for (std::uint64_t p : {53ULL, 59ULL}) {
    EXPECT_EQ(complement_point_count(A, P, p), Integer(static_cast<unsigned long>(oracle::fp_complement_count(A, p))));
  }
}

TEST(CharPoly, BadPrimeIsReported) {
  // the lines x = 0 and x = 7 coincide modulo 7
  const Arrangement A(1, {plane({1}, 0), plane({1}, 7)});
  const IntersectionPoset P = build_poset(A);
  try {
    complement_point_count(A, P, 7);
    FAIL() << "expected BadPrime";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadPrime);
  }
  EXPECT_EQ(char_poly_finite_field(A), CharPoly(ints({-2, 1})));
}

TEST(CharPoly, WhitneyBudget) {
  const Arrangement A = oracle::random_arrangement(3, 25, 7, 20);
  ASSERT_EQ(A.size(), 25U);
  try {
    char_poly_whitney(A);
    FAIL() << "expected SubsetBudgetExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SubsetBudgetExceeded);
  }
}

TEST(CharPoly, DivideByTMinusOne) {
  EXPECT_EQ(CharPoly(ints({2, -3, 1})).divide_by_t_minus_one(), CharPoly(ints({-2, 1})));
  EXPECT_THROW(CharPoly(ints({1, 0, 1})).divide_by_t_minus_one(), Error);
}

TEST(Regions, Example23) {
  const RegionCounts rc = region_counts(example23());
  EXPECT_EQ(rc.regions, 6);
  EXPECT_EQ(rc.bounded, 0);
  EXPECT_TRUE(rc.bounded_meaningful);
}

TEST(Regions, EmptyAndResonance) {
  const RegionCounts e = region_counts(Arrangement(3));
  EXPECT_EQ(e.regions, 1);
  EXPECT_FALSE(e.bounded_meaningful);
  EXPECT_EQ(region_counts(resonance_arrangement(2)).regions, 6);
}

TEST(Regions, TriangleHasOneBoundedRegion) {
  const Arrangement A(2, {plane({1, 0}, 0), plane({0, 1}, 0), plane({1, 1}, 1)});
  const RegionCounts rc = region_counts(A);
  EXPECT_EQ(rc.regions, 7);
  EXPECT_EQ(rc.bounded, 1);
}

TEST(Regions, Invariants) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Arrangement A = oracle::random_arrangement(2 + s % 2, 2 + s % 6, 500 + s);
    const RegionCounts rc = region_counts(A);
    EXPECT_GE(rc.regions, rc.bounded);
    EXPECT_GE(rc.bounded, 0);
    if (rc.bounded_meaningful) EXPECT_GE(rc.regions, Integer(static_cast<unsigned long>(A.dim() + 1)));
  }
}

TEST(Io, ParsesArrangementJson) {
  const Arrangement A = parse_arrangement_json(
      R"({"n": 2, "hyperplanes": [{"normal": ["0","1"], "offset": "2"}, {"normal": [1, "-1/2"], "offset": 0}]})");
  EXPECT_EQ(A.dim(), 2U);
  ASSERT_EQ(A.size(), 2U);
  EXPECT_EQ(A[1].normal[1], Rational(-1, 2));
  EXPECT_EQ(A[0].offset, 2);
}

TEST(Io, RoundTrip) {
  const Arrangement A = resonance_arrangement(3);
  const Arrangement B = parse_arrangement_json(arrangement_to_json(A));
  EXPECT_EQ(A.hyperplanes(), B.hyperplanes());
}

TEST(Io, MalformedInputIsParseError) {
  for (const char* text : {"{", R"({"n": 2})", R"({"n": 2, "hyperplanes": [{"normal": ["x", "1"]}]})",
                           R"({"n": 2, "hyperplanes": [{"normal": ["1/0", "1"]}]})"}) {
    try {
      parse_arrangement_json(text);
      ADD_FAILURE() << "accepted " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << text;
    }
  }
}

TEST(Io, ExampleFile) {
  const Arrangement A = read_arrangement_file(std::string(HYPERARR_DATA_DIR) + "/ex23.json");
  EXPECT_EQ(char_poly_mobius(A), CharPoly(ints({2, -3, 1})));
}

TEST(Errors, NumericalKinds) {
  EXPECT_FALSE(is_numerical(ErrorKind::ParseError));
  EXPECT_FALSE(is_numerical(ErrorKind::NotEssential));
  EXPECT_FALSE(is_numerical(ErrorKind::BadPrime));
  EXPECT_TRUE(is_numerical(ErrorKind::TargetNotReached));
  EXPECT_TRUE(is_numerical(ErrorKind::SignCollision));
  EXPECT_TRUE(is_numerical(ErrorKind::SliceDegenerate));
  EXPECT_EQ(to_string(ErrorKind::PathLoss), "PathLoss");
}
