#pragma once

// Field-generic reduced row echelon form over K^n affine equations, used by
// the intersection-lattice builders over Q and over F_p.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperarr/error.hpp"
#include "hyperarr/rational.hpp"

namespace hyperarr::detail {

struct RationalField {
  using value_type = Rational;

  value_type zero() const { return Rational(0); }
  value_type one() const { return Rational(1); }
  bool is_zero(const value_type& a) const { return a == 0; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const { return 1 / a; }
  value_type from_rational(const Rational& q) const { return q; }
  void append_key(std::string& key, const value_type& a) const {
    key += a.get_str();
    key += ',';
  }
};

class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {}

  std::uint64_t modulus() const { return p_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const { return (a + b) % p_; }
  value_type sub(value_type a, value_type b) const { return (a + p_ - b) % p_; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  value_type pow(value_type a, std::uint64_t e) const {
    value_type r = 1;
    while (e) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1U;
    }
    return r;
  }
  value_type inv(value_type a) const { return pow(a, p_ - 2); }

  /// Reduction of a rational; throws BadPrime when p divides the denominator.
  value_type from_rational(const Rational& q) const {
    const Integer pz(static_cast<unsigned long>(p_));
    Integer den = q.get_den() % pz;
    if (den == 0) throw Error(ErrorKind::BadPrime, "prime " + std::to_string(p_) + " divides a denominator");
    Integer num = q.get_num() % pz;
    if (num < 0) num += pz;
    const value_type n = num.get_ui();
    return mul(n, inv(den.get_ui()));
  }
  void append_key(std::string& key, value_type a) const {
    key += std::to_string(a);
    key += ',';
  }

 private:
  std::uint64_t p_;
};

/// Affine subspace {x : A x = b} kept as the reduced row echelon form of [A | b].
template <class Field>
class Echelon {
 public:
  using T = typename Field::value_type;
  using Row = std::vector<T>;  // n coefficients followed by the right-hand side

  enum class Insert { Contained, Empty, Added };

  Echelon(const Field& field, std::size_t n) : field_(&field), n_(n) {}

  std::size_t dim_ambient() const { return n_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces `row` against the current rows without modifying *this.
  Row reduce(Row row) const {
    const Field& f = *field_;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivots_[r];
      if (f.is_zero(row[p])) continue;
      const T factor = row[p];
      for (std::size_t c = 0; c <= n_; ++c)
        if (!f.is_zero(rows_[r][c])) row[c] = f.sub(row[c], f.mul(factor, rows_[r][c]));
    }
    return row;
  }

  /// Classifies the equation `row` against this subspace: Contained if the
  /// subspace already satisfies it, Empty if the intersection is empty.
  Insert classify(const Row& row) const {
    const Row red = reduce(row);
    for (std::size_t c = 0; c < n_; ++c)
      if (!field_->is_zero(red[c])) return Insert::Added;
    return field_->is_zero(red[n_]) ? Insert::Contained : Insert::Empty;
  }

  /// Intersects with {row · [x;-1] = 0}. On Added the echelon form stays reduced.
  Insert insert(Row row) {
    const Field& f = *field_;
    row = reduce(std::move(row));
    std::size_t p = n_;
    for (std::size_t c = 0; c < n_; ++c)
      if (!f.is_zero(row[c])) {
        p = c;
        break;
      }
    if (p == n_) return f.is_zero(row[n_]) ? Insert::Contained : Insert::Empty;
    const T inv = f.inv(row[p]);
    for (std::size_t c = 0; c <= n_; ++c) row[c] = f.mul(row[c], inv);
    for (auto& other : rows_) {
      if (f.is_zero(other[p])) continue;
      const T factor = other[p];
      for (std::size_t c = 0; c <= n_; ++c)
        if (!f.is_zero(row[c])) other[c] = f.sub(other[c], f.mul(factor, row[c]));
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
    return Insert::Added;
  }

  /// Canonical key: equal subspaces have equal keys.
  std::string key() const {
    std::string k;
    for (const auto& row : rows_) {
      for (const auto& v : row) field_->append_key(k, v);
      k += ';';
    }
    return k;
  }

 private:
  const Field* field_;
  std::size_t n_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
};

/// Rank of a rational matrix given as rows of length ncols.
inline std::size_t rank(const std::vector<std::vector<Rational>>& rows, std::size_t ncols) {
  RationalField field;
  Echelon<RationalField> ech(field, ncols);
  for (const auto& r : rows) {
    std::vector<Rational> row = r;
    row.emplace_back(0);
    ech.insert(std::move(row));
  }
  return ech.rank();
}

}  // namespace hyperarr::detail
