#include "hyperarr/milnor.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hyperarr/charpoly.hpp"
#include "hyperarr/error.hpp"
#include "hyperarr/polysys.hpp"
#include "random.hpp"

namespace hyperarr {

ProjectiveDivisor::ProjectiveDivisor(RationalPoly F) : F_(std::move(F)), degree_(0) {
  if (F_.num_vars() == 0) throw Error(ErrorKind::InvalidInput, "projective divisor needs at least one variable");
  if (F_.total_degree() < 1) throw Error(ErrorKind::InvalidInput, "projective divisor must be non-constant");
  if (!F_.is_homogeneous()) throw Error(ErrorKind::InvalidInput, "projective divisor must be homogeneous");
  degree_ = static_cast<unsigned>(F_.total_degree());
}

std::vector<RationalPoly> divisor_factors(const std::vector<RationalPoly>& fs, std::size_t n) {
  std::vector<RationalPoly> out;
  for (const auto& f : fs) {
    if (f.num_vars() != n) throw Error(ErrorKind::InvalidInput, "polynomial variable count mismatch");
    if (f.total_degree() < 1) throw Error(ErrorKind::InvalidInput, "divisor factors must be non-constant");
    out.push_back(f.homogenize());
  }
  out.push_back(RationalPoly::variable(n + 1, 0));
  return out;
}

ProjectiveDivisor divisor_for_arrangement(const std::vector<RationalPoly>& fs, std::size_t n) {
  RationalPoly F = RationalPoly::constant(n + 1, Rational(1));
  for (const auto& h : divisor_factors(fs, n)) F = F * h;
  return ProjectiveDivisor(std::move(F));
}

std::vector<Integer> milnor_bezout_bounds(unsigned degree, std::size_t n) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(ipow(Integer(degree == 0 ? 0 : degree - 1), i));
  return out;
}

namespace {

Rational random_rational(std::mt19937_64& rng, long height) {
  std::uniform_int_distribution<long> num(-height, height);
  std::uniform_int_distribution<long> den(1, height);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Preimage count of a random point under the polar map on a random CP^i, or −1 if degenerate.
long long polar_degree(const ProjectiveDivisor& F, std::size_t i, std::uint64_t seed, const MilnorOptions& options) {
  std::mt19937_64 rng(seed);
  const std::size_t rows = F.n() + 1;
  std::vector<std::vector<Rational>> M(rows, std::vector<Rational>(i + 1));
  for (auto& row : M)
    for (auto& entry : row) {
      do entry = random_rational(rng, 100);
      while (entry == 0);
    }
  const RationalPoly G = F.polynomial().compose_linear(M);
  if (G.is_zero()) return -1;
  Rational scale = 0;
  for (const auto& [m, c] : G.terms()) scale = std::max(scale, Rational(abs(c)));
  const ComplexPoly Gc = to_complex(G * Rational(1 / scale));
  std::vector<ComplexPoly> equations;
  for (std::size_t j = 0; j <= i; ++j) {
    ComplexPoly eq = Gc.derivative(j);
    const Rational zj = random_rational(rng, 100);
    eq -= ComplexPoly::constant(i + 1, Complex(to_double(zj), 0.0));
    if (eq.total_degree() < 1) return -1;
    equations.push_back(std::move(eq));
  }
  TotalDegreeOptions td;
  td.seed = detail::derive_seed(seed, "total-degree");
  td.bezout_budget = options.bezout_budget;
  td.threads = options.threads;
  td.tracker = options.tracker;
  const TotalDegreeResult r = total_degree_solve(equations, td);
  const long long count = static_cast<long long>(r.solutions.size());
  if (count % (F.degree() - 1) != 0) return -1;
  return count / (F.degree() - 1);
}

}  // namespace

MilnorVector milnor_numbers(const ProjectiveDivisor& F, const MilnorOptions& options) {
  const std::size_t n = F.n();
  std::vector<Integer> mu(n + 1, Integer(0));
  mu[0] = 1;
  if (F.degree() == 1) return MilnorVector(std::move(mu));
  const double bezout = std::pow(static_cast<double>(F.degree() - 1), static_cast<double>(n + 1));
  if (bezout > options.bezout_budget)
    throw Error(ErrorKind::BezoutBudgetExceeded, "polar-map fibers need " + std::to_string(bezout) + " paths");
  for (std::size_t i = 1; i <= n; ++i) {
    bool done = false;
    for (std::size_t draw = 0; draw <= options.redraw_budget && !done; ++draw) {
      const long long a = polar_degree(F, i, detail::derive_seed(options.seed, "slice-a", i * 64 + draw), options);
      const long long b = polar_degree(F, i, detail::derive_seed(options.seed, "slice-b", i * 64 + draw), options);
      if (a >= 0 && a == b) {
        mu[i] = static_cast<long>(a);
        done = true;
      }
    }
    if (!done)
      throw Error(ErrorKind::SliceDegenerate,
                  "mu^" + std::to_string(i) + " is unstable across " + std::to_string(options.redraw_budget) +
                      " slice redraws");
  }
  return MilnorVector(std::move(mu));
}

MilnorVector milnor_from_charpoly(const std::vector<RationalPoly>& linear_factors) {
  if (linear_factors.empty()) throw Error(ErrorKind::NotProductOfLinearForms, "no linear factors given");
  const std::size_t dim = linear_factors[0].num_vars();
  std::vector<Hyperplane> hs;
  for (const auto& l : linear_factors) {
    if (l.num_vars() != dim || l.total_degree() != 1 || !l.is_homogeneous())
      throw Error(ErrorKind::NotProductOfLinearForms, "factor " + l.to_string(0) + " is not a linear form");
    Hyperplane h;
    for (std::size_t j = 0; j < dim; ++j) {
      Monomial m(dim, 0);
      m[j] = 1;
      h.normal.push_back(l.coefficient(m));
    }
    h.offset = 0;
    hs.push_back(std::move(h));
  }
  const Arrangement central(dim, std::move(hs));
  const CharPoly q = char_poly_mobius(central).divide_by_t_minus_one();
  const std::size_t n = dim - 1;
  std::vector<Integer> mu(n + 1, Integer(0));
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t power = n - i;
    const Integer c = power <= q.degree() ? q.coeffs()[power] : Integer(0);
    mu[i] = (i % 2 == 0) ? c : Integer(-c);
  }
  return MilnorVector(std::move(mu));
}

MilnorVector milnor_from_charpoly(const Arrangement& affine) {
  std::vector<RationalPoly> fs;
  for (const auto& h : affine.hyperplanes())
    fs.push_back(RationalPoly::linear(std::span<const Rational>(h.normal), Rational(-h.offset)));
  return milnor_from_charpoly(divisor_factors(fs, affine.dim()));
}

}  // namespace hyperarr
