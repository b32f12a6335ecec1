#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/lattice.hpp"
#include "linalg.hpp"

namespace hyperarr::detail {

template <class Field>
struct RawFlat {
  Echelon<Field> echelon;
  HyperplaneSet generators;
};

template <class Field>
std::vector<typename Echelon<Field>::Row> hyperplane_rows(const Arrangement& a, const Field& field) {
  std::vector<typename Echelon<Field>::Row> rows;
  rows.reserve(a.size());
  for (const auto& h : a.hyperplanes()) {
    typename Echelon<Field>::Row row;
    row.reserve(a.dim() + 1);
    for (const auto& c : h.normal) row.push_back(field.from_rational(c));
    row.push_back(field.from_rational(h.offset));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Enumerates the nonempty intersections of hyperplanes over `field`, sorted
/// by decreasing dimension (stable in discovery order within a dimension).
template <class Field>
std::vector<RawFlat<Field>> enumerate_flats(const Arrangement& a, const Field& field) {
  const std::size_t n = a.dim();
  const std::size_t k = a.size();
  const auto rows = hyperplane_rows(a, field);

  std::vector<Echelon<Field>> flats;
  std::unordered_map<std::string, std::size_t> index;
  flats.emplace_back(field, n);
  index.emplace(flats.front().key(), 0);

  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t existing = flats.size();
    for (std::size_t j = 0; j < existing; ++j) {
      if (flats[j].classify(rows[i]) != Echelon<Field>::Insert::Added) continue;
      Echelon<Field> next = flats[j];
      next.insert(rows[i]);
      auto key = next.key();
      if (index.emplace(std::move(key), flats.size()).second) flats.push_back(std::move(next));
    }
  }

  std::vector<RawFlat<Field>> out;
  out.reserve(flats.size());
  for (auto& e : flats) {
    HyperplaneSet gens(k);
    for (std::size_t i = 0; i < k; ++i)
      if (e.classify(rows[i]) == Echelon<Field>::Insert::Contained) gens.set(i);
    out.push_back({std::move(e), std::move(gens)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RawFlat<Field>& x, const RawFlat<Field>& y) { return x.echelon.rank() < y.echelon.rank(); });
  return out;
}

/// μ(0̂, y) = −Σ_{x<y} μ(0̂, x), where x < y iff gens(x) ⊊ gens(y).
/// Flats must be sorted by increasing codimension.
std::vector<long long> mobius_from_generators(const std::vector<std::size_t>& codims,
                                              const std::vector<const HyperplaneSet*>& gens);

}  // namespace hyperarr::detail
