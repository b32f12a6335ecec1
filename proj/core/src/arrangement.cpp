#include "hyperarr/arrangement.hpp"

#include <cmath>
#include <set>

#include "hyperarr/error.hpp"
#include "linalg.hpp"

namespace hyperarr {

Rational Hyperplane::evaluate(std::span<const Rational> x) const {
  Rational acc = -offset;
  for (std::size_t j = 0; j < normal.size(); ++j) acc += normal[j] * x[j];
  return acc;
}

double Hyperplane::evaluate(std::span<const double> x) const {
  double acc = -to_double(offset);
  for (std::size_t j = 0; j < normal.size(); ++j) acc += to_double(normal[j]) * x[j];
  return acc;
}

Hyperplane Arrangement::normalized(const Hyperplane& h) {
  Hyperplane out = h;
  for (const auto& a : h.normal) {
    if (a != 0) {
      const Rational lead = a;
      for (auto& c : out.normal) c /= lead;
      out.offset /= lead;
      break;
    }
  }
  return out;
}

namespace {

std::string hyperplane_key(const Hyperplane& h) {
  const Hyperplane n = Arrangement::normalized(h);
  std::string key;
  for (const auto& c : n.normal) key += c.get_str() + ",";
  key += "|" + n.offset.get_str();
  return key;
}

}  // namespace

Arrangement::Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes)
    : dim_(dim), hyperplanes_(std::move(hyperplanes)) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
    const auto& h = hyperplanes_[i];
    if (h.normal.size() != dim_)
      throw Error(ErrorKind::InvalidInput, "hyperplane " + std::to_string(i) + " has normal of length " +
                                               std::to_string(h.normal.size()) + ", expected " +
                                               std::to_string(dim_));
    bool nonzero = false;
    for (const auto& c : h.normal) nonzero = nonzero || c != 0;
    if (!nonzero) throw Error(ErrorKind::InvalidInput, "hyperplane " + std::to_string(i) + " has zero normal");
    if (!seen.insert(hyperplane_key(h)).second)
      throw Error(ErrorKind::DuplicateHyperplane,
                  "hyperplane " + std::to_string(i) + " is a scalar multiple of an earlier hyperplane");
  }
}

Arrangement Arrangement::deletion(std::size_t i) const {
  std::vector<Hyperplane> rest;
  for (std::size_t j = 0; j < size(); ++j)
    if (j != i) rest.push_back(hyperplanes_[j]);
  return Arrangement(dim_, std::move(rest));
}

Arrangement Arrangement::restriction(std::size_t i) const {
  const Hyperplane& h = hyperplanes_[i];
  std::size_t pivot = 0;
  while (h.normal[pivot] == 0) ++pivot;

  // On H: x_pivot = (offset − Σ_{l≠pivot} a_l x_l) / a_pivot; the free
  // coordinates are the remaining ones in order.
  std::vector<Hyperplane> traces;
  std::set<std::string> seen;
  for (std::size_t j = 0; j < size(); ++j) {
    if (j == i) continue;
    const Hyperplane& g = hyperplanes_[j];
    const Rational ratio = g.normal[pivot] / h.normal[pivot];
    Hyperplane t;
    for (std::size_t l = 0; l < dim_; ++l)
      if (l != pivot) t.normal.push_back(g.normal[l] - ratio * h.normal[l]);
    t.offset = g.offset - ratio * h.offset;
    bool nonzero = false;
    for (const auto& c : t.normal) nonzero = nonzero || c != 0;
    if (!nonzero) continue;  // parallel to H (cannot coincide: duplicates are rejected)
    if (seen.insert(hyperplane_key(t)).second) traces.push_back(std::move(t));
  }
  return Arrangement(dim_ - 1, std::move(traces));
}

RankInfo rank_and_essential(const Arrangement& arrangement) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& h : arrangement.hyperplanes()) rows.push_back(h.normal);
  const std::size_t r = detail::rank(rows, arrangement.dim());
  return {r, r == arrangement.dim()};
}

SignVector::SignVector(std::string signs) : signs_(std::move(signs)) {
  for (char c : signs_)
    if (c != '+' && c != '-') throw Error(ErrorKind::InvalidInput, "sign vector must use only '+' and '-'");
}

SignVector sign_vector_at(const Arrangement& arrangement, std::span<const double> x, double eps) {
  if (x.size() != arrangement.dim()) throw Error(ErrorKind::InvalidInput, "point has wrong dimension");
  std::string s;
  s.reserve(arrangement.size());
  for (std::size_t i = 0; i < arrangement.size(); ++i) {
    const double v = arrangement[i].evaluate(x);
    if (!(std::abs(v) > eps))
      throw Error(ErrorKind::OnBoundary, "point lies within " + std::to_string(eps) + " of hyperplane " +
                                             std::to_string(i));
    s.push_back(v > 0 ? '+' : '-');
  }
  return SignVector(std::move(s));
}

Arrangement resonance_arrangement(std::size_t d) {
  std::vector<Hyperplane> hs;
  for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
    Hyperplane h;
    for (std::size_t j = 0; j < d; ++j) h.normal.emplace_back((mask >> j) & 1U ? 1 : 0);
    h.offset = 0;
    hs.push_back(std::move(h));
  }
  return Arrangement(d, std::move(hs));
}

}  // namespace hyperarr
