#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hyperarr/rational.hpp"

namespace hyperarr {

/// Affine hyperplane {x : normal·x − offset = 0}; f(x) = normal·x − offset.
struct Hyperplane {
  std::vector<Rational> normal;
  Rational offset;

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;
  bool operator==(const Hyperplane&) const = default;
};

/// Finite list of distinct affine hyperplanes in K^n with exact rational data.
///
/// Construction rejects zero normals, wrong lengths and hyperplanes that are
/// scalar multiples of an earlier one (they describe the same set).
class Arrangement {
 public:
  explicit Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return hyperplanes_.size(); }
  bool empty() const noexcept { return hyperplanes_.empty(); }

  const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }
  const std::vector<Hyperplane>& hyperplanes() const noexcept { return hyperplanes_; }

  /// A \ {H_i}.
  Arrangement deletion(std::size_t i) const;

  /// A^{H_i}: the traces of the other hyperplanes on H_i, written in
  /// coordinates of H_i ≅ K^{n−1} (parallel hyperplanes drop out,
  /// coinciding traces are merged).
  Arrangement restriction(std::size_t i) const;

  /// Canonical representative of hyperplane i scaled so that the first
  /// nonzero normal entry is 1.
  static Hyperplane normalized(const Hyperplane& h);

 private:
  std::size_t dim_;
  std::vector<Hyperplane> hyperplanes_;
};

struct RankInfo {
  std::size_t rank = 0;
  bool essential = false;
};

/// rank = dim span(normals); essential iff rank = n.
RankInfo rank_and_essential(const Arrangement& arrangement);

/// Sign pattern of (f_1(x),…,f_k(x)) at an interior point, as a string over {+,-}.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::string signs);

  const std::string& str() const noexcept { return signs_; }
  std::size_t size() const noexcept { return signs_.size(); }
  int operator[](std::size_t i) const { return signs_[i] == '+' ? 1 : -1; }

  auto operator<=>(const SignVector&) const = default;

 private:
  std::string signs_;
};

/// Throws Error{OnBoundary} if some |f_i(x)| <= eps.
SignVector sign_vector_at(const Arrangement& arrangement, std::span<const double> x, double eps = 1e-9);

/// Hyperplanes through the origin normal to every nonzero 0/1 vector of length d.
Arrangement resonance_arrangement(std::size_t d);

}  // namespace hyperarr
