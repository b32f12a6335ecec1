#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/lattice.hpp"
#include "hyperarr/rational.hpp"

namespace hyperarr {

/// Integer univariate polynomial Σ a_i t^i; coeffs[i] multiplies t^i.
class CharPoly {
 public:
  CharPoly() = default;
  explicit CharPoly(std::vector<Integer> coeffs);

  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }

  Integer operator()(const Integer& t) const;
  CharPoly operator-(const CharPoly& other) const;
  bool operator==(const CharPoly&) const = default;

  /// Exact quotient by (t − 1); throws if (t − 1) does not divide.
  CharPoly divide_by_t_minus_one() const;

  std::string to_string() const;

 private:
  std::vector<Integer> coeffs_;  // trailing zeros trimmed, but at least one entry
};

/// Σ_{x ∈ L(A)} μ(x) t^{dim x}.
CharPoly char_poly_mobius(const Arrangement& arrangement);
CharPoly char_poly_from_poset(const IntersectionPoset& poset);

/// Whitney's subset sum; intended as an independent check (k <= 24).
CharPoly char_poly_whitney(const Arrangement& arrangement);
inline constexpr std::size_t kWhitneySubsetBudget = 24;

/// Interpolates χ_A from complement point counts over F_p, one per prime.
/// At least n + 1 primes are needed; extra primes serve as exactness checks.
/// Throws Error{BadPrime} if the arrangement degenerates modulo some prime.
CharPoly char_poly_finite_field(const Arrangement& arrangement, std::span<const std::uint64_t> primes);

/// Same, choosing primes >= 10^6 automatically and skipping bad ones.
CharPoly char_poly_finite_field(const Arrangement& arrangement);

/// #(F_p^n \ ∪ H_i) computed from the intersection lattice over F_p. Throws
/// BadPrime if the reduction mod p does not preserve the lattice.
Integer complement_point_count(const Arrangement& arrangement, const IntersectionPoset& exact, std::uint64_t p);

struct RegionCounts {
  Integer regions;
  Integer bounded;
  std::size_t rank = 0;
  /// False when the arrangement is not essential: the bounded count is then
  /// reported as 0 and carries no geometric meaning.
  bool bounded_meaningful = false;
};

/// regions = (−1)^n χ(−1); bounded = (−1)^rank χ(1).
RegionCounts region_counts(const Arrangement& arrangement);
RegionCounts region_counts(const CharPoly& chi, std::size_t ambient_dim, const RankInfo& rank);

}  // namespace hyperarr
