#pragma once

// Property checks shared by the unit tests and the acceptance binary.

#include <string>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/lattice.hpp"
#include "hyperarr/sampler.hpp"
#include "hyperarr/tracker.hpp"

namespace property {

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

/// Σ_{x <= y} μ(x) = 0 for every flat y other than the ambient space.
Check mobius_zero_sum(const hyperarr::IntersectionPoset& poset);

/// χ_A = χ_{A∖H} − χ_{A^H} for every hyperplane H.
Check deletion_restriction(const hyperarr::Arrangement& A);

/// Analytic x- and p-Jacobians of the critical system and of the log-gradient
/// system against central differences, at random complex points.
Check jacobians_match(const hyperarr::Arrangement& A, std::uint64_t seed, double tol = 1e-6);

/// Every nonreal member's conjugate is also a member.
Check conjugate_closure(const hyperarr::SolutionSet& sols, double imag_tol = 1e-8);

/// All eigenvalues of Hess ψ at the Morse sample points are negative,
/// with the Hessian rebuilt from the arrangement and quadric.
Check hessians_negative(const hyperarr::Arrangement& A, const hyperarr::SampleReport& report);

/// Two single-worker runs with one seed give bit-identical points.
Check deterministic(const hyperarr::Arrangement& A, std::uint64_t seed);

}  // namespace property
