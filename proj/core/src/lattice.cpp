#include "hyperarr/lattice.hpp"

#include <bit>

#include "lattice_impl.hpp"

namespace hyperarr {

std::size_t HyperplaneSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool HyperplaneSet::is_subset_of(const HyperplaneSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::vector<std::size_t> HyperplaneSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < universe_; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

std::vector<std::size_t> IntersectionPoset::count_by_dim() const {
  std::vector<std::size_t> counts(ambient_dim + 1, 0);
  for (const auto& f : flats) ++counts[f.dim];
  return counts;
}

bool IntersectionPoset::leq(std::size_t x, std::size_t y) const {
  return flats[x].generators.is_subset_of(flats[y].generators);
}

namespace detail {

std::vector<long long> mobius_from_generators(const std::vector<std::size_t>& codims,
                                              const std::vector<const HyperplaneSet*>& gens) {
  const std::size_t m = gens.size();
  std::vector<long long> mu(m, 0);
  for (std::size_t y = 0; y < m; ++y) {
    if (y == 0) {
      mu[0] = 1;
      continue;
    }
    long long acc = 0;
    for (std::size_t x = 0; x < y && codims[x] < codims[y]; ++x) {
      if (!gens[x]->is_subset_of(*gens[y])) continue;
      if (__builtin_add_overflow(acc, mu[x], &acc))
        throw Error(ErrorKind::NumericFailure, "Möbius value overflows 64 bits");
    }
    mu[y] = -acc;
  }
  return mu;
}

}  // namespace detail

namespace {

void parametrize(Flat& flat, const detail::Echelon<detail::RationalField>& e, std::size_t n) {
  const auto& pivots = e.pivots();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  flat.point.assign(n, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) flat.point[pivots[r]] = e.rows()[r][n];
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> dir(n, Rational(0));
    dir[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) dir[pivots[r]] = -e.rows()[r][free];
    flat.directions.push_back(std::move(dir));
  }
}

}  // namespace

IntersectionPoset build_poset(const Arrangement& arrangement) {
  const std::size_t n = arrangement.dim();
  detail::RationalField field;
  auto raw = detail::enumerate_flats(arrangement, field);

  IntersectionPoset poset;
  poset.ambient_dim = n;
  poset.flats.reserve(raw.size());
  std::vector<std::size_t> codims;
  for (auto& r : raw) {
    Flat f;
    f.dim = n - r.echelon.rank();
    f.equations = r.echelon.rows();
    parametrize(f, r.echelon, n);
    f.generators = std::move(r.generators);
    codims.push_back(r.echelon.rank());
    poset.flats.push_back(std::move(f));
  }

  std::vector<const HyperplaneSet*> gens;
  for (const auto& f : poset.flats) gens.push_back(&f.generators);
  poset.mobius = detail::mobius_from_generators(codims, gens);

  poset.covers.assign(poset.flats.size(), {});
  for (std::size_t y = 0; y < poset.flats.size(); ++y)
    for (std::size_t x = 0; x < y; ++x)
      if (codims[x] + 1 == codims[y] && gens[x]->is_subset_of(*gens[y])) poset.covers[x].push_back(y);
  return poset;
}

}  // namespace hyperarr
