#include "hyperarr/charpoly.hpp"

#include <algorithm>

#include "hyperarr/error.hpp"
#include "lattice_impl.hpp"
#include "linalg.hpp"

namespace hyperarr {

CharPoly::CharPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.emplace_back(0);
}

Integer CharPoly::operator()(const Integer& t) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

CharPoly CharPoly::operator-(const CharPoly& other) const {
  std::vector<Integer> out(std::max(coeffs_.size(), other.coeffs_.size()), Integer(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] -= other.coeffs_[i];
  return CharPoly(std::move(out));
}

CharPoly CharPoly::divide_by_t_minus_one() const {
  // synthetic division by (t − 1)
  const std::size_t d = degree();
  if (d == 0) throw Error(ErrorKind::InvalidInput, "cannot divide a constant by (t - 1)");
  std::vector<Integer> q(d, Integer(0));
  Integer carry = 0;
  for (std::size_t i = d; i >= 1; --i) {
    carry = coeffs_[i] + carry;
    q[i - 1] = carry;
  }
  if (coeffs_[0] + carry != 0) throw Error(ErrorKind::InvalidInput, "(t - 1) does not divide " + to_string());
  return CharPoly(std::move(q));
}

std::string CharPoly::to_string() const {
  std::string s;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Integer& c = coeffs_[i];
    if (c == 0 && coeffs_.size() > 1) continue;
    const Integer mag = abs(c);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (mag != 1 || i == 0) s += mag.get_str();
    if (i >= 1) s += "t";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

CharPoly char_poly_from_poset(const IntersectionPoset& poset) {
  std::vector<Integer> coeffs(poset.ambient_dim + 1, Integer(0));
  for (std::size_t i = 0; i < poset.size(); ++i) coeffs[poset.flats[i].dim] += Integer(static_cast<long>(poset.mobius[i]));
  return CharPoly(std::move(coeffs));
}

CharPoly char_poly_mobius(const Arrangement& arrangement) { return char_poly_from_poset(build_poset(arrangement)); }

namespace {

using detail::Echelon;
using detail::RationalField;

void whitney_recurse(const std::vector<Echelon<RationalField>::Row>& rows, std::size_t next,
                     const Echelon<RationalField>& current, std::size_t subset_size, std::vector<Integer>& acc) {
  if (next == rows.size()) {
    const std::size_t dim = current.dim_ambient() - current.rank();
    if (subset_size % 2 == 0)
      acc[dim] += 1;
    else
      acc[dim] -= 1;
    return;
  }
  whitney_recurse(rows, next + 1, current, subset_size, acc);
  Echelon<RationalField> with = current;
  if (with.insert(rows[next]) == Echelon<RationalField>::Insert::Empty) return;  // all supersets empty too
  whitney_recurse(rows, next + 1, with, subset_size + 1, acc);
}

}  // namespace

CharPoly char_poly_whitney(const Arrangement& arrangement) {
  if (arrangement.size() > kWhitneySubsetBudget)
    throw Error(ErrorKind::SubsetBudgetExceeded, "Whitney sum needs 2^" + std::to_string(arrangement.size()) +
                                                     " subsets; budget is 2^" +
                                                     std::to_string(kWhitneySubsetBudget));
  RationalField field;
  const auto rows = detail::hyperplane_rows(arrangement, field);
  std::vector<Integer> acc(arrangement.dim() + 1, Integer(0));
  whitney_recurse(rows, 0, Echelon<RationalField>(field, arrangement.dim()), 0, acc);
  return CharPoly(std::move(acc));
}

Integer complement_point_count(const Arrangement& arrangement, const IntersectionPoset& exact, std::uint64_t p) {
  const std::size_t n = arrangement.dim();
  detail::PrimeField field(p);
  const auto rows = detail::hyperplane_rows(arrangement, field);  // throws on bad denominators

  // Every exact flat must keep its codimension mod p.
  for (const auto& flat : exact.flats) {
    Echelon<detail::PrimeField> e(field, n);
    for (auto i : flat.generators.indices()) e.insert(rows[i]);
    if (e.rank() != n - flat.dim)
      throw Error(ErrorKind::BadPrime, "rank of a flat drops modulo " + std::to_string(p));
  }

  auto raw = detail::enumerate_flats(arrangement, field);
  std::vector<std::size_t> codims;
  std::vector<const HyperplaneSet*> gens;
  std::vector<std::size_t> counts(n + 1, 0);
  for (const auto& r : raw) {
    codims.push_back(r.echelon.rank());
    gens.push_back(&r.generators);
    ++counts[n - r.echelon.rank()];
  }
  if (counts != exact.count_by_dim())
    throw Error(ErrorKind::BadPrime, "intersection lattice changes modulo " + std::to_string(p));

  const auto mu = detail::mobius_from_generators(codims, gens);
  Integer total = 0;
  const Integer pz(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < raw.size(); ++i)
    total += Integer(static_cast<long>(mu[i])) * ipow(pz, n - codims[i]);
  return total;
}

namespace {

/// Newton divided differences over Q, expanded to monomial coefficients.
std::vector<Rational> interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t m = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = m - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  std::vector<Rational> poly(m, Rational(0));
  // Horner on the Newton form: p = dd[m−1]; p = p·(t − x_i) + dd[i]
  std::vector<Rational> acc{dd[m - 1]};
  for (std::size_t i = m - 1; i-- > 0;) {
    std::vector<Rational> next(acc.size() + 1, Rational(0));
    for (std::size_t c = 0; c < acc.size(); ++c) {
      next[c + 1] += acc[c];
      next[c] -= acc[c] * xs[i];
    }
    next[0] += dd[i];
    acc = std::move(next);
  }
  for (std::size_t c = 0; c < m; ++c) poly[c] = c < acc.size() ? acc[c] : Rational(0);
  return poly;
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

}  // namespace

CharPoly char_poly_finite_field(const Arrangement& arrangement, std::span<const std::uint64_t> primes) {
  const std::size_t n = arrangement.dim();
  if (primes.size() < n + 1)
    throw Error(ErrorKind::InvalidInput, "finite-field interpolation needs at least " + std::to_string(n + 1) +
                                             " primes");
  const IntersectionPoset exact = build_poset(arrangement);
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  for (auto p : primes) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    xs.emplace_back(Integer(static_cast<unsigned long>(p)));
    ys.emplace_back(complement_point_count(arrangement, exact, p));
  }
  const std::size_t used = n + 1;
  const auto poly = interpolate({xs.begin(), xs.begin() + used}, {ys.begin(), ys.begin() + used});
  std::vector<Integer> coeffs;
  for (const auto& c : poly) {
    if (c.get_den() != 1) throw Error(ErrorKind::NumericFailure, "interpolated coefficient is not an integer");
    coeffs.push_back(c.get_num());
  }
  CharPoly chi(std::move(coeffs));
  if (chi.degree() != n || chi[n] != 1)
    throw Error(ErrorKind::NumericFailure, "interpolated polynomial is not monic of degree n: " + chi.to_string());
  for (std::size_t i = used; i < xs.size(); ++i)
    if (chi(xs[i].get_num()) != ys[i].get_num())
      throw Error(ErrorKind::NumericFailure, "exactness check failed at spare prime " + xs[i].get_str());
  return chi;
}

CharPoly char_poly_finite_field(const Arrangement& arrangement) {
  const std::size_t needed = arrangement.dim() + 2;  // n + 1 interpolation nodes and a spare
  const IntersectionPoset exact = build_poset(arrangement);
  std::vector<std::uint64_t> good;
  for (std::uint64_t p = 1000003; good.size() < needed; p += 2) {
    if (!is_prime(p)) continue;
    try {
      complement_point_count(arrangement, exact, p);
      good.push_back(p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BadPrime) throw;
    }
  }
  return char_poly_finite_field(arrangement, good);
}

RegionCounts region_counts(const CharPoly& chi, std::size_t ambient_dim, const RankInfo& rank) {
  RegionCounts rc;
  rc.rank = rank.rank;
  rc.regions = chi(Integer(-1));
  if (ambient_dim % 2 == 1) rc.regions = -rc.regions;
  rc.bounded_meaningful = rank.essential && ambient_dim > 0;
  if (rc.bounded_meaningful) {
    rc.bounded = chi(Integer(1));
    if (rank.rank % 2 == 1) rc.bounded = -rc.bounded;
  } else {
    rc.bounded = 0;
  }
  return rc;
}

RegionCounts region_counts(const Arrangement& arrangement) {
  return region_counts(char_poly_mobius(arrangement), arrangement.dim(), rank_and_essential(arrangement));
}

}  // namespace hyperarr
