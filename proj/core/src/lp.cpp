#include "hyperarr/lp.hpp"

#include <cmath>
#include <limits>

#include "hyperarr/error.hpp"

namespace hyperarr {

namespace {

constexpr double kEps = 1e-9;
constexpr std::size_t kMaxPivots = 100000;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  double& obj(std::size_t c) { return at(m_, c); }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    if (std::abs(p) < 1e-14) throw Error(ErrorKind::NumericFailure, "simplex pivot breakdown");
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  /// Bland's rule on columns [0, allowed); returns false if unbounded.
  bool optimize(std::size_t allowed) {
    for (std::size_t iter = 0; iter < kMaxPivots; ++iter) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j)
        if (obj(j) > kEps) {
          enter = j;
          break;
        }
      if (enter == allowed) return true;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kEps) continue;
        const double ratio = rhs(i) / a;
        if (leave == m_ || ratio < best - kEps) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + kEps && basis_[i] < basis_[leave]) {
          leave = i;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
    throw Error(ErrorKind::NumericFailure, "simplex iteration cap reached");
  }

  std::size_t rows() const { return m_; }

 private:
  std::size_t m_, n_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution simplex_maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                            const std::vector<double>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw Error(ErrorKind::InvalidInput, "LP right-hand side length mismatch");
  for (const auto& row : A)
    if (row.size() != n) throw Error(ErrorKind::InvalidInput, "LP row length mismatch");

  std::vector<std::size_t> art_rows;
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0) art_rows.push_back(i);
  const std::size_t n_art = art_rows.size();
  // columns: z (n) | slack (m) | artificial (n_art) | rhs
  const std::size_t cols = n + m + n_art;
  Tableau T(m, cols);
  std::size_t next_art = n + m;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b[i] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) T.at(i, j) = sign * A[i][j];
    T.at(i, n + i) = sign;
    T.rhs(i) = sign * b[i];
    if (b[i] < 0) {
      T.at(i, next_art) = 1.0;
      T.basis()[i] = next_art++;
    } else {
      T.basis()[i] = n + i;
    }
  }

  if (n_art > 0) {
    // phase 1: maximize −Σ artificials
    for (std::size_t j = 0; j <= cols; ++j) T.obj(j) = 0.0;
    for (std::size_t j = n + m; j < cols; ++j) T.obj(j) = -1.0;
    for (std::size_t i : art_rows) {
      for (std::size_t j = 0; j < cols; ++j) T.obj(j) += T.at(i, j);
      T.obj(cols) += T.rhs(i);
    }
    T.optimize(cols);
    if (T.obj(cols) > 1e-7) return LpSolution{LpSolution::Status::Infeasible, 0.0, {}};
    // drive remaining artificials out of the basis
    for (std::size_t i = 0; i < m; ++i) {
      if (T.basis()[i] < n + m) continue;
      for (std::size_t j = 0; j < n + m; ++j)
        if (std::abs(T.at(i, j)) > kEps) {
          T.pivot(i, j);
          break;
        }
    }
  }

  // phase 2 over the original and slack columns
  for (std::size_t j = 0; j <= cols; ++j) T.obj(j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) T.obj(j) = c[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bj = T.basis()[i];
    if (bj >= n || c[bj] == 0.0) continue;
    const double cb = c[bj];
    for (std::size_t j = 0; j <= cols; ++j) T.obj(j) -= cb * T.at(i, j);
  }
  if (!T.optimize(n + m)) return LpSolution{LpSolution::Status::Unbounded, 0.0, {}};

  LpSolution sol{LpSolution::Status::Optimal, -T.obj(cols), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < m; ++i)
    if (T.basis()[i] < n) sol.z[T.basis()[i]] = T.rhs(i);
  return sol;
}

}  // namespace hyperarr
