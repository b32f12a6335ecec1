#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hyperarr/arrangement.hpp"

namespace hyperarr {

/// Dynamic bitset over hyperplane indices.
class HyperplaneSet {
 public:
  HyperplaneSet() = default;
  explicit HyperplaneSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const;
  std::size_t universe() const noexcept { return universe_; }
  bool is_subset_of(const HyperplaneSet& other) const;
  std::vector<std::size_t> indices() const;

  bool operator==(const HyperplaneSet&) const = default;
  auto operator<=>(const HyperplaneSet&) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Nonempty intersection of hyperplanes, with both an implicit description
/// (reduced echelon equations [A | b]) and a parametric one (point + directions).
struct Flat {
  std::size_t dim = 0;
  std::vector<std::vector<Rational>> equations;
  std::vector<Rational> point;
  std::vector<std::vector<Rational>> directions;
  HyperplaneSet generators;  // every hyperplane containing the flat
};

/// L(A) ordered by reverse inclusion. flats[0] is the ambient space; flats are
/// sorted by decreasing dimension, so x < y implies index(x) < index(y).
struct IntersectionPoset {
  std::size_t ambient_dim = 0;
  std::vector<Flat> flats;
  std::vector<std::vector<std::size_t>> covers;  // covers[i]: flats one dimension lower inside flats[i]
  std::vector<long long> mobius;                 // μ(0̂, x)

  std::size_t size() const noexcept { return flats.size(); }
  /// counts[d] = number of flats of dimension d.
  std::vector<std::size_t> count_by_dim() const;
  /// x <= y in L(A), i.e. flats[y] ⊆ flats[x].
  bool leq(std::size_t x, std::size_t y) const;
};

/// Builds L(A) incrementally: each hyperplane is intersected with every flat
/// found so far, with flats deduplicated by their canonical echelon form.
IntersectionPoset build_poset(const Arrangement& arrangement);

}  // namespace hyperarr
