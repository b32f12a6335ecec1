#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>

#include "hyperarr/error.hpp"
#include "hyperarr/polysys.hpp"
#include "hyperarr/sampler.hpp"
#include "hyperarr/tracker.hpp"
#include "properties.hpp"

using namespace hyperarr;

namespace {

// F(x; p) = p0·x^2 + p1·x + p2 in one variable.
class Quadratic final : public ParametricSystem {
 public:
  std::size_t num_vars() const override { return 1; }
  std::size_t num_params() const override { return 3; }
  void evaluate(const CVector& x, const CVector& p, CVector& f, CMatrix* jx, CMatrix* jp) const override {
    f.resize(1);
    f[0] = p[0] * x[0] * x[0] + p[1] * x[0] + p[2];
    if (jx) {
      jx->resize(1, 1);
      (*jx)(0, 0) = 2.0 * p[0] * x[0] + p[1];
    }
    if (jp) {
      jp->resize(1, 3);
      (*jp)(0, 0) = x[0] * x[0];
      (*jp)(0, 1) = x[0];
      (*jp)(0, 2) = 1.0;
    }
  }
};

CVector vec(std::initializer_list<Complex> v) {
  CVector r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const auto& c : v) r[i++] = c;
  return r;
}

std::vector<ComplexPoly> polys(std::initializer_list<const char*> texts, std::size_t n) {
  std::vector<ComplexPoly> r;
  for (const char* t : texts) r.push_back(to_complex(parse_poly(t, n)));
  return r;
}

LogGradientSystem example38() {
  return LogGradientSystem({parse_poly("x1^2 + x2^2 - 1", 2), parse_poly("x1", 2)},
                           {parse_poly("(x1-1)^2 + (x2-2)^2 + (x1-x2)^2 + 1", 2)});
}

LogGradientSystem arrangement_system(const Arrangement& A, std::uint64_t seed) {
  return LogGradientSystem(arrangement_polynomials(A), {make_generic_quadric(A.dim(), seed).polynomial()});
}

}  // namespace

TEST(Tracker, LinearClosedForm) {
  // u·x − 1 = 0 with u: 1 → 2
  const Quadratic sys;
  const auto path = ParameterPath::straight(vec({0.0, 1.0, -1.0}), vec({0.0, 2.0, -1.0}));
  const PathPoint end = track_path(sys, path, vec({1.0}));
  ASSERT_EQ(end.status, PathStatus::Success);
  EXPECT_LT(std::abs(end.x[0] - 0.5), 1e-12);
}

TEST(Tracker, StraightPathThroughDiscriminantIsSingular) {
  // x^2 = t with t: 1 → −1 passes the double root at t = 0
  const Quadratic sys;
  const CVector from = vec({1.0, 0.0, -1.0}), to = vec({1.0, 0.0, 1.0});
  const PathPoint straight = track_path(sys, ParameterPath::straight(from, to), vec({1.0}));
  EXPECT_EQ(straight.status, PathStatus::Singular) << "t = " << straight.t << " cond " << straight.condition << " step " << straight.step;
  const PathPoint detour = track_path(sys, ParameterPath::twisted(sys, from, to, 3), vec({1.0}));
  ASSERT_EQ(detour.status, PathStatus::Success);
  EXPECT_LT(std::abs(std::abs(detour.x[0].imag()) - 1.0), 1e-10);
  EXPECT_LT(std::abs(detour.x[0].real()), 1e-10);
}

TEST(Tracker, PathParametrization) {
  ParameterPath p;
  p.from = vec({1.0, 2.0});
  p.to = vec({3.0, -1.0});
  p.gamma = Complex(0.0, 1.0);
  p.detour = vec({Complex(0, 1), 0.0});
  EXPECT_LT((p.at(0.0) - p.gamma * p.from).norm(), 1e-15);
  EXPECT_LT((p.at(1.0) - p.to).norm(), 1e-15);
  const double s = 0.3, h = 1e-6;
  EXPECT_LT((p.derivative(s) - (p.at(s + h) - p.at(s - h)) / (2 * h)).norm(), 1e-8);
}

TEST(Tracker, SmallLoopReturnsToStart) {
  const LogGradientSystem sys = example38();
  const SeedPair seed = seed_pair(sys, 5);
  const CVector p0 = seed.params;
  const CVector p1 = p0 + 1e-3 * p0.norm() * random_complex_vector(p0.size(), 6);
  const CVector p2 = p0 + 1e-3 * p0.norm() * random_complex_vector(p0.size(), 7);
  CVector x = seed.x;
  for (const auto& [a, b] : {std::pair{p0, p1}, std::pair{p1, p2}, std::pair{p2, p0}}) {
    const PathPoint pt = track_path(sys, ParameterPath::straight(a, b), x);
    ASSERT_EQ(pt.status, PathStatus::Success);
    x = pt.x;
  }
  EXPECT_LT((x - seed.x).norm(), 1e-6 * std::max(1.0, seed.x.norm()));
}

TEST(Newton, ExactAndPerturbed) {
  const Quadratic sys;
  const CVector p = vec({1.0, 0.0, -2.0});
  const NewtonResult exact = newton_refine(sys, vec({std::sqrt(2.0)}), p);
  EXPECT_LT(std::abs(exact.x[0] - std::sqrt(2.0)), 1e-15);
  EXPECT_LT(exact.residual, 1e-14);
  const NewtonResult pert = newton_refine(sys, vec({std::sqrt(2.0) + 1e-4}), p);
  EXPECT_LT(std::abs(pert.x[0] - std::sqrt(2.0)), 1e-12);
  try {
    newton_refine(sys, vec({0.0}), vec({1.0, 0.0, 0.0}));
    FAIL() << "expected SingularJacobian";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularJacobian);
  }
  EXPECT_FALSE(try_newton_refine(sys, vec({0.0}), vec({1.0, 0.0, 0.0})).has_value());
}

TEST(SolutionSetTest, Dedup) {
  SolutionSet set(1e-6, 9);
  EXPECT_TRUE(set.insert(vec({1.0, 2.0})).second);
  EXPECT_FALSE(set.insert(vec({1.0 + 1e-9, 2.0})).second);
  EXPECT_TRUE(set.insert(vec({1.0, 2.1})).second);
  EXPECT_EQ(set.size(), 2U);
  EXPECT_EQ(set.find(vec({1.0, 2.1 + 1e-10})), std::optional<std::size_t>(1));
  EXPECT_FALSE(set.find(vec({5.0, 5.0})).has_value());
  EXPECT_THROW(set.find(vec({1.0})), Error);
}

TEST(TotalDegree, UnivariateQuadratic) {
  const TotalDegreeResult r = total_degree_solve(polys({"x1^2 - 1"}, 1));
  ASSERT_EQ(r.solutions.size(), 2U);
  std::vector<double> roots{r.solutions[0][0].real(), r.solutions[1][0].real()};
  std::sort(roots.begin(), roots.end());
  EXPECT_NEAR(roots[0], -1.0, 1e-12);
  EXPECT_NEAR(roots[1], 1.0, 1e-12);
}

TEST(TotalDegree, FiberSystemHasFourSolutions) {
  // 2axy + by^2 = α, ax^2 + 2bxy = β
  const TotalDegreeResult r = total_degree_solve(polys({"6*x1*x2 + 5*x2^2 - 7", "3*x1^2 + 10*x1*x2 - 11"}, 2));
  EXPECT_EQ(r.solutions.size(), 4U);
  EXPECT_EQ(r.paths, 4U);
}

TEST(TotalDegree, DiagonalSystem) {
  const TotalDegreeResult r = total_degree_solve(polys({"x1^3 - 2", "x2^2 + 3", "x3^2 - 5"}, 3));
  EXPECT_EQ(r.solutions.size(), 12U);
}

TEST(TotalDegree, PointsAtInfinityAreDropped) {
  // two parallel lines meet only at infinity
  const TotalDegreeResult r = total_degree_solve(polys({"x1 + x2 - 1", "x1 + x2 - 2"}, 2));
  EXPECT_EQ(r.solutions.size(), 0U);
  EXPECT_EQ(r.at_infinity + r.failed, 1U);
}

TEST(TotalDegree, BudgetIsEnforced) {
  TotalDegreeOptions opt;
  opt.bezout_budget = 10;
  try {
    total_degree_solve(polys({"x1^4 - 1", "x2^3 - 1"}, 2), opt);
    FAIL() << "expected BezoutBudgetExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BezoutBudgetExceeded);
  }
}

TEST(SeedPair, SatisfiesSystemAndIsReproducible) {
  // k = 2, n = 1: one linear condition on (u1, u2, v)
  const LogGradientSystem sys({parse_poly("x1", 1), parse_poly("x1 - 1", 1)}, {parse_poly("x1^2 + 1", 1)});
  const SeedPair a = seed_pair(sys, 42);
  CVector f;
  sys.evaluate(a.x, a.params, f, nullptr, nullptr);
  EXPECT_GT(a.params.norm(), 0.5);
  EXPECT_LT(f.norm(), 1e-12);
  const SeedPair b = seed_pair(sys, 42);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.params, b.params);
}

TEST(Monodromy, Example23FindsSix) {
  const Arrangement A(2, {Hyperplane{{0, 1}, 2}, Hyperplane{{0, 1}, 0}, Hyperplane{{-1, 1}, 1}});
  const LogGradientSystem sys = arrangement_system(A, 1);
  MonodromyConfig cfg;
  cfg.target_count = 6;
  cfg.seed = 2;
  const MonodromyResult r = monodromy_solve(sys, cfg);
  EXPECT_TRUE(r.target_reached);
  EXPECT_EQ(r.solutions.size(), 6U);
}

TEST(Monodromy, ResonanceThreeFindsThirtyTwo) {
  const LogGradientSystem sys = arrangement_system(resonance_arrangement(3), 3);
  MonodromyConfig cfg;
  cfg.target_count = 32;
  cfg.seed = 4;
  cfg.threads = 2;
  const MonodromyResult r = monodromy_solve(sys, cfg);
  EXPECT_TRUE(r.target_reached);
  EXPECT_EQ(r.solutions.size(), 32U);
}

TEST(Monodromy, Example38WithoutTargetFindsEight) {
  const LogGradientSystem sys = example38();
  MonodromyConfig cfg;
  cfg.seed = 7;
  const MonodromyResult r = monodromy_solve(sys, cfg);
  EXPECT_EQ(r.solutions.size(), 8U);
}

TEST(Monodromy, ThreadCountDoesNotChangeResult) {
  const LogGradientSystem sys = arrangement_system(resonance_arrangement(3), 8);
  MonodromyConfig cfg;
  cfg.target_count = 32;
  cfg.seed = 9;
  cfg.threads = 1;
  const MonodromyResult a = monodromy_solve(sys, cfg);
  cfg.threads = 4;
  const MonodromyResult b = monodromy_solve(sys, cfg);
  EXPECT_EQ(a.solutions.points(), b.solutions.points());
  EXPECT_EQ(a.loops, b.loops);
}

TEST(ParameterHomotopyTest, IdentityAndPermutation) {
  const LogGradientSystem sys = example38();
  MonodromyConfig cfg;
  cfg.seed = 7;
  const MonodromyResult m = monodromy_solve(sys, cfg);
  const auto& starts = m.solutions.points();
  const HomotopyResult same = parameter_homotopy(sys, starts, m.params, m.params, cfg);
  ASSERT_EQ(same.solutions.size(), starts.size());
  for (const auto& x : starts) EXPECT_TRUE(same.solutions.find(x).has_value());

  const CVector target = vec({1.0, 1.0, 2.0});
  const HomotopyResult fwd = parameter_homotopy(sys, starts, m.params, target, cfg);
  auto reversed = starts;
  std::reverse(reversed.begin(), reversed.end());
  const HomotopyResult rev = parameter_homotopy(sys, reversed, m.params, target, cfg);
  ASSERT_EQ(fwd.solutions.size(), rev.solutions.size());
  for (const auto& x : fwd.solutions.points()) EXPECT_TRUE(rev.solutions.find(x).has_value());
}

TEST(ClassifyReal, Example38SixRealOnePair) {
  const LogGradientSystem sys = example38();
  MonodromyConfig cfg;
  cfg.seed = 7;
  const MonodromyResult m = monodromy_solve(sys, cfg);
  const HomotopyResult h = parameter_homotopy(sys, m.solutions.points(), m.params, vec({1.0, 1.0, 2.0}), cfg);
  const RealClassification rc = classify_real(h.solutions, 1e-8);
  EXPECT_EQ(rc.real.size(), 6U);
  EXPECT_EQ(rc.nonreal_pairs, 1U);
  EXPECT_TRUE(property::conjugate_closure(h.solutions).ok);
}

TEST(ClassifyReal, ToyAndMismatch) {
  const TotalDegreeResult r = total_degree_solve(polys({"x1^2 - 1"}, 1));
  EXPECT_EQ(classify_real(r.solutions, 1e-8).real.size(), 2U);
  SolutionSet lonely;
  lonely.insert(vec({Complex(1.0, 1.0)}));
  try {
    classify_real(lonely, 1e-8);
    FAIL() << "expected ConjugationMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConjugationMismatch);
  }
  EXPECT_EQ(classify_real(lonely, 1e-8, false).nonreal, 1U);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}
