#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperarr/rational.hpp"

namespace hyperarr {

using Complex = std::complex<double>;
using Monomial = std::vector<unsigned>;  // exponent of each variable

/// Sparse multivariate polynomial in variables x_0..x_{n-1} (0-based storage).
///
/// Coeff is Rational (exact construction) or Complex (tracking). Zero
/// coefficients are never stored. Values are immutable in practice: all
/// arithmetic returns new polynomials.
template <class Coeff>
class SparsePoly {
 public:
  using Terms = std::map<Monomial, Coeff>;

  explicit SparsePoly(std::size_t nvars = 0) : n_(nvars) {}
  SparsePoly(std::size_t nvars, Terms terms);

  static SparsePoly constant(std::size_t nvars, const Coeff& c);
  static SparsePoly variable(std::size_t nvars, std::size_t index);
  /// Σ a_j x_j + c
  static SparsePoly linear(std::span<const Coeff> a, const Coeff& c);

  std::size_t num_vars() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// −1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool is_homogeneous() const;
  Coeff coefficient(const Monomial& m) const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const Coeff& c);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, const Coeff& c) { return a *= c; }
  friend SparsePoly operator*(const Coeff& c, SparsePoly a) { return a *= c; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) { return a.times(b); }
  SparsePoly operator-() const;
  bool operator==(const SparsePoly&) const = default;

  SparsePoly pow(unsigned e) const;
  SparsePoly derivative(std::size_t var) const;
  std::vector<SparsePoly> gradient() const;

  Coeff evaluate(std::span<const Coeff> x) const;

  /// Substitutes x_j = Σ_l M[j][l] y_l; the result lives in M[0].size() variables.
  SparsePoly compose_linear(const std::vector<std::vector<Coeff>>& M) const;

  /// Homogenizes to total degree, with the new variable x_0 prepended
  /// (old x_j becomes x_{j+1}).
  SparsePoly homogenize() const;

  /// Same polynomial viewed in more variables (new ones appended, unused).
  SparsePoly extend_vars(std::size_t nvars) const;

  /// Text form using variable names x<base>, x<base+1>, …
  std::string to_string(unsigned base = 1) const;

 private:
  SparsePoly times(const SparsePoly& o) const;

  std::size_t n_ = 0;
  Terms terms_;
};

using RationalPoly = SparsePoly<Rational>;
using ComplexPoly = SparsePoly<Complex>;

extern template class SparsePoly<Rational>;
extern template class SparsePoly<Complex>;

/// Lossy conversion used at the boundary between construction and tracking.
ComplexPoly to_complex(const RationalPoly& p);

/// Parses an expression over +, −, *, ^, parentheses, rational or decimal
/// literals and variables x<i>, base <= i < base + nvars. Division is allowed
/// by nonzero constants only. Throws Error{ParseError} with the offending
/// position in the message.
RationalPoly parse_poly(std::string_view text, std::size_t nvars, unsigned base = 1);

/// 1 + the largest variable index appearing in text, minus base (0 if none).
std::size_t count_variables(std::string_view text, unsigned base = 1);

}  // namespace hyperarr
