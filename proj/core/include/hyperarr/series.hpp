#pragma once

#include <cstddef>
#include <type_traits>
#include <vector>

#include "hyperarr/error.hpp"
#include "hyperarr/rational.hpp"

namespace hyperarr {

/// Formal power series c_0 + c_1 z + … + c_N z^N, exact modulo z^{N+1}.
///
/// Coeff is Integer or Rational. Over Integer the reciprocal exists only when
/// c_0 = ±1; use the Rational instantiation otherwise.
template <class Coeff>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : c_(order + 1, Coeff(0)) {}
  TruncatedSeries(std::size_t order, std::vector<Coeff> coeffs) : c_(order + 1, Coeff(0)) {
    for (std::size_t i = 0; i < coeffs.size() && i <= order; ++i) c_[i] = std::move(coeffs[i]);
  }

  static TruncatedSeries constant(std::size_t order, Coeff value) {
    TruncatedSeries s(order);
    s.c_[0] = std::move(value);
    return s;
  }
  /// a + b z
  static TruncatedSeries linear(std::size_t order, Coeff a, Coeff b) {
    TruncatedSeries s(order);
    s.c_[0] = std::move(a);
    if (order >= 1) s.c_[1] = std::move(b);
    return s;
  }

  std::size_t order() const noexcept { return c_.size() - 1; }
  const Coeff& operator[](std::size_t i) const { return c_[i]; }
  Coeff& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Coeff>& coeffs() const noexcept { return c_; }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = a.order();
    TruncatedSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  TruncatedSeries reciprocal() const {
    const std::size_t n = order();
    if (c_[0] == 0) throw Error(ErrorKind::InvalidInput, "series with zero constant term has no reciprocal");
    if constexpr (std::is_same_v<Coeff, Integer>) {
      if (c_[0] != 1 && c_[0] != -1)
        throw Error(ErrorKind::InvalidInput, "integer series reciprocal needs a unit constant term");
    }
    TruncatedSeries r(n);
    r.c_[0] = Coeff(1) / c_[0];
    for (std::size_t i = 1; i <= n; ++i) {
      Coeff acc = 0;
      for (std::size_t j = 1; j <= i; ++j) acc += c_[j] * r.c_[i - j];
      r.c_[i] = -acc / c_[0];
    }
    return r;
  }

  TruncatedSeries pow(unsigned e) const {
    TruncatedSeries r = constant(order(), Coeff(1));
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  bool operator==(const TruncatedSeries&) const = default;

 private:
  std::vector<Coeff> c_;
};

using IntegerSeries = TruncatedSeries<Integer>;
using RationalSeries = TruncatedSeries<Rational>;

}  // namespace hyperarr
