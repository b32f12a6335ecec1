#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/eulercalc.hpp"
#include "hyperarr/sparse_poly.hpp"
#include "hyperarr/tracker.hpp"

namespace hyperarr {

/// Homogeneous F(x_0, …, x_n) of degree D >= 1 defining a hypersurface in CP^n.
class ProjectiveDivisor {
 public:
  /// Throws InvalidInput unless F is nonzero, non-constant and homogeneous.
  explicit ProjectiveDivisor(RationalPoly F);

  const RationalPoly& polynomial() const noexcept { return F_; }
  std::size_t n() const noexcept { return F_.num_vars() - 1; }
  unsigned degree() const noexcept { return degree_; }

 private:
  RationalPoly F_;
  unsigned degree_;
};

/// x_0 · Π ʰf_i in variables x_0..x_n (the f_i live in x_1..x_n).
ProjectiveDivisor divisor_for_arrangement(const std::vector<RationalPoly>& fs, std::size_t n);

/// The factors ʰf_1, …, ʰf_k, x_0 of divisor_for_arrangement.
std::vector<RationalPoly> divisor_factors(const std::vector<RationalPoly>& fs, std::size_t n);

struct MilnorOptions {
  std::uint64_t seed = 20240601;
  std::size_t redraw_budget = 5;
  double bezout_budget = 1e4;
  std::size_t threads = 1;
  TrackerOptions tracker;
};

/// μ^i(F) as the degree of the polar map on a random CP^i: the number of
/// y ∈ C^{i+1} with ∇(F∘M)(y) = z, divided by D − 1. Each level is computed
/// on two independent slices that must agree. Throws SliceDegenerate after
/// the redraw budget, BezoutBudgetExceeded if (D−1)^{n+1} is over budget.
MilnorVector milnor_numbers(const ProjectiveDivisor& F, const MilnorOptions& options = {});

/// Milnor numbers of a product of distinct linear forms from the
/// characteristic polynomial of the central arrangement they define:
/// μ^i = (−1)^i [z^{n−i}] χ(z)/(z − 1). Throws NotProductOfLinearForms.
MilnorVector milnor_from_charpoly(const std::vector<RationalPoly>& linear_factors);

/// Same for x_0·ʰf where f is the product of the arrangement's affine forms.
MilnorVector milnor_from_charpoly(const Arrangement& affine);

/// (D−1)^i for i = 0..n, the upper bounds on μ^i.
std::vector<Integer> milnor_bezout_bounds(unsigned degree, std::size_t n);

}  // namespace hyperarr
