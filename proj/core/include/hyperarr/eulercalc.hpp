#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hyperarr/charpoly.hpp"
#include "hyperarr/rational.hpp"

namespace hyperarr {

/// Degrees d_1..d_r of generic hypersurfaces. A degree of 0 stands for a
/// constant polynomial (no hypersurface) and is accepted where it makes sense.
using DegreeList = std::vector<int>;

/// Euler characteristic of a generic complete intersection of the given
/// degrees in CP^n: [z^n] 1/(1−z)^2 · Π d z/(1+(d−1)z).
Integer c_coefficient(std::size_t n, std::span<const int> degs);

/// Same number from the Chern-class side: [z^n] (1+z)^{n+1} Π d z/(1+d z).
Integer c_coefficient_via_chern(std::size_t n, std::span<const int> degs);

/// χ(CP^n minus generic hypersurfaces): [z^n] 1/(1−z)^2 · Π (1−z)/(1+(d−1)z).
Integer b_tilde_coefficient(std::size_t n, std::span<const int> degs);

/// χ(C^i minus generic hypersurfaces): [z^i] 1/(1−z) · Π (1−z)/(1+(d−1)z).
Integer b_coefficient(std::size_t i, std::span<const int> degs);

/// b_0..b_n in one pass.
std::vector<Integer> b_coefficients(std::size_t n, std::span<const int> degs);

/// χ(C^n \ (A ∪ V(g_1…g_r))) = Σ a_i b_i[degs] for a hyperplane arrangement
/// with characteristic polynomial Σ a_i t^i.
Integer chi_arrangement_plus_generic(const CharPoly& chi, std::span<const int> degs);

/// Milnor numbers μ^0..μ^n of a projective hypersurface.
class MilnorVector {
 public:
  MilnorVector() = default;
  /// Requires μ^0 = 1 and all entries non-negative.
  explicit MilnorVector(std::vector<Integer> mu);

  std::size_t n() const noexcept { return mu_.size() - 1; }
  const Integer& operator[](std::size_t i) const { return mu_[i]; }
  const std::vector<Integer>& values() const noexcept { return mu_; }
  Integer sum() const;
  bool operator==(const MilnorVector&) const = default;

 private:
  std::vector<Integer> mu_{Integer(1)};
};

/// Class Σ γ_i h^i in A*(CP^n) with h^i·[CP^n] = [CP^{n−i}]; its degree
/// (Euler characteristic) is the coefficient of h^n.
class CsmClass {
 public:
  explicit CsmClass(std::vector<Integer> coeffs);

  std::size_t n() const noexcept { return coeffs_.size() - 1; }
  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
  const Integer& degree() const { return coeffs_.back(); }
  bool operator==(const CsmClass&) const = default;

 private:
  std::vector<Integer> coeffs_;
};

/// c_SM of the hypersurface complement: Σ (−1)^i μ^i h^i (1+h)^{n−i}.
CsmClass csm_from_milnor(const MilnorVector& mu);

/// Removing a generic degree-d hypersurface multiplies the class by 1/(1+d h).
CsmClass csm_remove_generic(const CsmClass& c, int d);

/// Σ_i (−1)^{n−i} μ^{n−i} b_i[degs], where μ are the Milnor numbers of ʰf·x_0.
Integer chi_from_milnor(const MilnorVector& mu, std::span<const int> degs);

/// The same Euler characteristic through the CSM calculus: csm_from_milnor,
/// then csm_remove_generic for each degree, then the degree of the class.
Integer chi_from_milnor_via_csm(const MilnorVector& mu, std::span<const int> degs);

/// Σ μ^i: the complex critical-point count bounding the real regions.
Integer region_bound_complex(const MilnorVector& mu);

/// ((d+1)^{n+1} − 1)/d.
Integer region_bound_bezout(unsigned d, unsigned n);

struct MorseBound {
  Integer bound;
  bool parity_warning = false;  // mu_sum + chi_real was odd; the bound was rounded up
};

/// ⌈(mu_sum + chi_real)/2⌉.
MorseBound region_bound_morse(const Integer& mu_sum, const Integer& chi_real);

}  // namespace hyperarr
