#include <gtest/gtest.h>

#include <json.hpp>

#include "hyperarr/error.hpp"
#include "hyperarr/polysys.hpp"
#include "hyperarr/sampler.hpp"
#include "hyperarr/sparse_poly.hpp"
#include "oracles.hpp"

using namespace hyperarr;

namespace {

RationalPoly P(const char* text, std::size_t n) { return parse_poly(text, n); }

}  // namespace

TEST(SparsePoly, ParseBasics) {
  const RationalPoly circle = P("x1^2 + x2^2 - 1", 2);
  EXPECT_EQ(circle.total_degree(), 2);
  EXPECT_EQ(circle.size(), 3U);
  EXPECT_EQ(circle.coefficient({2, 0}), 1);
  EXPECT_EQ(circle.coefficient({0, 0}), -1);
  const RationalPoly m = P("x1*x2*x3", 3);
  EXPECT_EQ(m.size(), 1U);
  EXPECT_EQ(m.coefficient({1, 1, 1}), 1);
  EXPECT_EQ(P("(x1-1)^2", 1), P("x1^2 - 2*x1 + 1", 1));
  EXPECT_EQ(P("-x1^2", 1).coefficient({2}), -1);
  EXPECT_EQ(P("x1/2 + 3/4", 1).coefficient({1}), Rational(1, 2));
}

TEST(SparsePoly, ParseErrors) {
  for (const char* bad : {"x1 +", "x1 / x2", "x3", "(x1", "x1 ^ -1", "1/0", "y1"}) {
    try {
      parse_poly(bad, 2);
      ADD_FAILURE() << "accepted " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
}

TEST(SparsePoly, ExpansionMatchesEvaluation) {
  const RationalPoly p = P("(x1 - 2*x2 + 1)^3 * (x2 + 1/3)", 2);
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      const Rational x(a), y(b);
      const Rational l = x - 2 * y + 1;
      const std::vector<Rational> pt{x, y};
      EXPECT_EQ(p.evaluate(pt), l * l * l * (y + Rational(1, 3)));
    }
}

TEST(SparsePoly, Gradient) {
  const auto g = P("x1^2 + x2^2", 2).gradient();
  EXPECT_EQ(g[0], P("2*x1", 2));
  EXPECT_EQ(g[1], P("2*x2", 2));
  for (const auto& d : RationalPoly::constant(3, Rational(5)).gradient()) EXPECT_TRUE(d.is_zero());
  const auto polar = P("x1*x2*x3", 3).gradient();
  EXPECT_EQ(polar[0], P("x2*x3", 3));
  EXPECT_EQ(polar[1], P("x1*x3", 3));
  EXPECT_EQ(polar[2], P("x1*x2", 3));
}

TEST(SparsePoly, HomogenizeAndCompose) {
  const RationalPoly h = P("x1^2 + x2^2 - 1", 2).homogenize();
  EXPECT_TRUE(h.is_homogeneous());
  EXPECT_EQ(h, parse_poly("x1^2 + x2^2 - x0^2", 3, 0));
  // substitute x1 = y1 + y2, x2 = y1 − y2
  const RationalPoly c = P("x1*x2", 2).compose_linear({{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}});
  EXPECT_EQ(c, P("x1^2 - x2^2", 2));
  EXPECT_EQ(count_variables("x1 + x7^2"), 7U);
  EXPECT_EQ(count_variables("x0*x2", 0), 3U);
}

TEST(SparsePoly, ZeroPolynomial) {
  const RationalPoly z(2);
  EXPECT_EQ(z.total_degree(), -1);
  const std::vector<Rational> pt{Rational(3), Rational(-1)};
  EXPECT_EQ(z.evaluate(pt), 0);
  const CompiledPoly cz(to_complex(z));
  EXPECT_EQ(cz.value(CVector::Ones(2)), Complex(0.0));
}

TEST(PolySys, GenericQuadric) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const QuadricSpec q = make_generic_quadric(n, 77 + n);
    ASSERT_EQ(q.a.size(), n);
    QuadricSpec zero_b = q;
    for (auto& b : zero_b.b) b = 0;
    EXPECT_EQ(zero_b.polynomial().evaluate(zero_b.a), 1);
    for (const auto& a : q.a) {
      EXPECT_LE(abs(a), 2);
      EXPECT_LE(a.get_den(), 16);
    }
    EXPECT_EQ(q.polynomial(), make_generic_quadric(n, 77 + n).polynomial());
  }
}

TEST(PolySys, CriticalSystemByHand) {
  // u/x1 − 2v x1/(x1²+1) cleared: u(x1²+1) − 2v x1²
  const PolySystem sys = build_critical_system({P("x1", 1)}, P("x1^2 + 1", 1));
  EXPECT_EQ(sys.parameter_names(), (std::vector<std::string>{"u1", "v"}));
  ASSERT_EQ(sys.num_equations(), 1U);
  const std::vector<Rational> params{Rational(3), Rational(5)};
  const auto eq = sys.specialize(std::span<const Rational>(params));
  EXPECT_EQ(eq[0], P("3*x1^2 + 3 - 10*x1^2", 1));
}

TEST(PolySys, CriticalSystemVanishesAtCriticalPoint) {
  // ψ = log|x1| + log|x1 − 1| − v log(x1² + 1); compare roots of the cleared form
  // with the rational form at the same point.
  const std::vector<RationalPoly> fs{P("x1", 1), P("x1 - 1", 1)};
  const RationalPoly g = P("x1^2 + 1", 1);
  const CompiledPolySystem cleared(build_critical_system(fs, g));
  const LogGradientSystem logs(fs, {g});
  CVector p(3);
  p << 1.0, 1.0, 1.5;
  CVector x(1);
  x << Complex(0.3, 0.2);
  CVector f1, f2;
  cleared.evaluate(x, p, f1, nullptr, nullptr);
  logs.evaluate(x, p, f2, nullptr, nullptr);
  // cleared = rational · x1 (x1 − 1) (x1² + 1)
  const Complex scale = x[0] * (x[0] - 1.0) * (x[0] * x[0] + 1.0);
  EXPECT_LT(std::abs(f1[0] - f2[0] * scale), 1e-12);
}

TEST(PolySys, HomogenizeDivisor) {
  EXPECT_EQ(homogenize_divisor(P("x1^2 + x2^2 - 1", 2)), parse_poly("(x1^2 + x2^2 - x0^2)*x0", 3, 0));
  EXPECT_EQ(homogenize_divisor(P("x1*x2", 2)), parse_poly("x1*x2*x0", 3, 0));
}

TEST(PolySys, JsonDump) {
  const PolySystem sys = build_critical_system({P("x1", 1)}, P("x1^2 + 1", 1));
  const auto j = nlohmann::json::parse(sys.to_json());
  EXPECT_EQ(j["variables"], 1);
  EXPECT_EQ(j["parameters"].size(), 2U);
  EXPECT_EQ(j["equations"].size(), 1U);
}

TEST(PolySys, EvaluateMatchesCompiled) {
  const Arrangement A = random_essential_arrangement(3, 5, 9);
  const PolySystem sys = build_critical_system(arrangement_polynomials(A), make_generic_quadric(3, 9).polynomial());
  const CompiledPolySystem compiled(sys);
  const CVector x = random_complex_vector(3, 1), p = random_complex_vector(6, 2);
  CMatrix j1, j2;
  const CVector f1 = sys.evaluate(x, p, &j1);
  CVector f2;
  compiled.evaluate(x, p, f2, &j2, nullptr);
  EXPECT_LT((f1 - f2).norm() / f1.norm(), 1e-12);
  EXPECT_LT((j1 - j2).norm() / j1.norm(), 1e-12);
  EXPECT_TRUE(compiled.parameter_homogeneous());
}

TEST(PolySys, JacobiansMatchFiniteDifferences) {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const Arrangement A = random_essential_arrangement(2 + s % 2, 3 + s % 4, 40 + s);
    const auto fs = arrangement_polynomials(A);
    const auto g = make_generic_quadric(A.dim(), s).polynomial();
    const CompiledPolySystem cleared(build_critical_system(fs, g));
    const LogGradientSystem logs(fs, {g});
    const CVector x = random_complex_vector(A.dim(), 100 + s);
    const CVector p = random_complex_vector(A.size() + 1, 200 + s);
    EXPECT_LT(oracle::jacobian_fd_error(cleared, x, p), 1e-6);
    EXPECT_LT(oracle::parameter_jacobian_fd_error(cleared, x, p), 1e-6);
    EXPECT_LT(oracle::jacobian_fd_error(logs, x, p), 1e-6);
    EXPECT_LT(oracle::parameter_jacobian_fd_error(logs, x, p), 1e-6);
  }
}

TEST(PolySys, LogGradientHessianIsSymmetric) {
  const Arrangement A = random_essential_arrangement(3, 6, 5);
  const LogGradientSystem logs(arrangement_polynomials(A), {make_generic_quadric(3, 5).polynomial()});
  const CVector x = random_complex_vector(3, 8), p = random_complex_vector(7, 9);
  const CMatrix H = logs.hessian(x, p);
  EXPECT_LT((H - H.transpose()).norm(), 1e-10 * H.norm());
}

TEST(PolySys, DivisorFilter) {
  const std::vector<RationalPoly> fs{P("x1", 1)};
  const LogGradientSystem logs(fs, {P("x1^2 + 1", 1)});
  CVector on(1), off(1);
  on << Complex(0.0, 0.0);
  off << Complex(0.5, 0.1);
  EXPECT_FALSE(logs.admissible(on));
  EXPECT_TRUE(logs.admissible(off));
  EXPECT_GT(logs.divisor_distance(off), 1e-3);
}
