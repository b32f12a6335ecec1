#include "hyperarr/eulercalc.hpp"

#include <string>

#include "hyperarr/error.hpp"
#include "hyperarr/series.hpp"

namespace hyperarr {

namespace {

void check_degrees(std::span<const int> degs) {
  for (int d : degs)
    if (d < 0) throw Error(ErrorKind::InvalidInput, "hypersurface degree must be non-negative, got " + std::to_string(d));
}

/// Π (1−z)/(1+(d−1)z)
IntegerSeries complement_factor(std::size_t order, std::span<const int> degs) {
  IntegerSeries acc = IntegerSeries::constant(order, Integer(1));
  const IntegerSeries one_minus_z = IntegerSeries::linear(order, Integer(1), Integer(-1));
  for (int d : degs) acc *= one_minus_z * IntegerSeries::linear(order, Integer(1), Integer(d - 1)).reciprocal();
  return acc;
}

IntegerSeries inverse_one_minus_z(std::size_t order, unsigned power) {
  return IntegerSeries::linear(order, Integer(1), Integer(-1)).reciprocal().pow(power);
}

}  // namespace

Integer c_coefficient(std::size_t n, std::span<const int> degs) {
  check_degrees(degs);
  IntegerSeries s = inverse_one_minus_z(n, 2);
  for (int d : degs)
    s *= IntegerSeries::linear(n, Integer(0), Integer(d)) *
         IntegerSeries::linear(n, Integer(1), Integer(d - 1)).reciprocal();
  return s[n];
}

Integer c_coefficient_via_chern(std::size_t n, std::span<const int> degs) {
  check_degrees(degs);
  IntegerSeries s = IntegerSeries::linear(n, Integer(1), Integer(1)).pow(static_cast<unsigned>(n + 1));
  for (int d : degs)
    s *= IntegerSeries::linear(n, Integer(0), Integer(d)) * IntegerSeries::linear(n, Integer(1), Integer(d)).reciprocal();
  return s[n];
}

Integer b_tilde_coefficient(std::size_t n, std::span<const int> degs) {
  check_degrees(degs);
  return (inverse_one_minus_z(n, 2) * complement_factor(n, degs))[n];
}

std::vector<Integer> b_coefficients(std::size_t n, std::span<const int> degs) {
  check_degrees(degs);
  const IntegerSeries s = inverse_one_minus_z(n, 1) * complement_factor(n, degs);
  return s.coeffs();
}

Integer b_coefficient(std::size_t i, std::span<const int> degs) { return b_coefficients(i, degs)[i]; }

Integer chi_arrangement_plus_generic(const CharPoly& chi, std::span<const int> degs) {
  const std::size_t n = chi.degree();
  const auto b = b_coefficients(n, degs);
  Integer acc = 0;
  for (std::size_t i = 0; i <= n; ++i) acc += chi[i] * b[i];
  return acc;
}

MilnorVector::MilnorVector(std::vector<Integer> mu) : mu_(std::move(mu)) {
  if (mu_.empty() || mu_[0] != 1) throw Error(ErrorKind::InvalidInput, "Milnor vector must start with mu^0 = 1");
  for (const auto& m : mu_)
    if (m < 0) throw Error(ErrorKind::InvalidInput, "Milnor numbers are non-negative");
}

Integer MilnorVector::sum() const {
  Integer s = 0;
  for (const auto& m : mu_) s += m;
  return s;
}

CsmClass::CsmClass(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorKind::InvalidInput, "CSM class needs at least one coefficient");
}

CsmClass csm_from_milnor(const MilnorVector& mu) {
  const std::size_t n = mu.n();
  IntegerSeries total(n);
  const IntegerSeries one_plus_h = IntegerSeries::linear(n, Integer(1), Integer(1));
  for (std::size_t i = 0; i <= n; ++i) {
    IntegerSeries term = one_plus_h.pow(static_cast<unsigned>(n - i));
    IntegerSeries h_i(n);
    h_i[i] = (i % 2 == 0) ? mu[i] : Integer(-mu[i]);
    total += h_i * term;
  }
  return CsmClass(total.coeffs());
}

CsmClass csm_remove_generic(const CsmClass& c, int d) {
  if (d < 1) throw Error(ErrorKind::InvalidInput, "generic hypersurface degree must be >= 1");
  const std::size_t n = c.n();
  const IntegerSeries s = IntegerSeries(n, c.coeffs()) * IntegerSeries::linear(n, Integer(1), Integer(d)).reciprocal();
  return CsmClass(s.coeffs());
}

Integer chi_from_milnor(const MilnorVector& mu, std::span<const int> degs) {
  const std::size_t n = mu.n();
  const auto b = b_coefficients(n, degs);
  Integer acc = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const Integer term = mu[n - i] * b[i];
    if ((n - i) % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

Integer chi_from_milnor_via_csm(const MilnorVector& mu, std::span<const int> degs) {
  CsmClass c = csm_from_milnor(mu);
  for (int d : degs) {
    if (d == 0) continue;  // constant: removes nothing
    c = csm_remove_generic(c, d);
  }
  return c.degree();
}

Integer region_bound_complex(const MilnorVector& mu) { return mu.sum(); }

Integer region_bound_bezout(unsigned d, unsigned n) {
  if (d < 1 || n < 1) throw Error(ErrorKind::InvalidInput, "region_bound_bezout needs d >= 1 and n >= 1");
  const Integer num = ipow(Integer(d + 1), n + 1) - 1;
  return num / d;
}

MorseBound region_bound_morse(const Integer& mu_sum, const Integer& chi_real) {
  const Integer total = mu_sum + chi_real;
  MorseBound out;
  out.parity_warning = (total % 2) != 0;
  out.bound = out.parity_warning ? Integer((total + 1) / 2) : Integer(total / 2);
  return out;
}

}  // namespace hyperarr
