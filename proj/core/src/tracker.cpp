#include "hyperarr/tracker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "hyperarr/error.hpp"
#include "random.hpp"

namespace hyperarr {

std::string_view to_string(PathStatus status) {
  switch (status) {
    case PathStatus::Tracking: return "tracking";
    case PathStatus::Success: return "success";
    case PathStatus::Diverged: return "diverged";
    case PathStatus::Singular: return "singular";
    case PathStatus::StepUnderflow: return "step-underflow";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inf_norm(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff(); }
double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

double condition_estimate(const CMatrix& hx, const CVector& hs) {
  Eigen::FullPivLU<CMatrix> lu(hx);
  if (!lu.isInvertible()) return kInf;
  const double c = inf_norm(lu.inverse()) * std::max(inf_norm(hx), max_abs(hs));
  return std::isfinite(c) ? c : kInf;
}

bool velocity(const Homotopy& H, const CVector& x, double s, CVector& v) {
  CVector h, hs;
  CMatrix hx;
  H.evaluate(x, s, h, &hx, &hs);
  v = -Eigen::PartialPivLU<CMatrix>(hx).solve(hs);
  return v.allFinite();
}

bool predict_rk4(const Homotopy& H, const CVector& x, double s, double step, CVector& out) {
  CVector k1, k2, k3, k4;
  if (!velocity(H, x, s, k1)) return false;
  if (!velocity(H, x + 0.5 * step * k1, s + 0.5 * step, k2)) return false;
  if (!velocity(H, x + 0.5 * step * k2, s + 0.5 * step, k3)) return false;
  if (!velocity(H, x + step * k3, s + step, k4)) return false;
  out = x + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return out.allFinite();
}

bool correct(const Homotopy& H, CVector& x, double s, const TrackerOptions& opt) {
  CVector h;
  CMatrix hx;
  double prev = kInf;
  for (int it = 0; it < opt.max_corrector_iterations; ++it) {
    H.evaluate(x, s, h, &hx, nullptr);
    const CVector dx = Eigen::PartialPivLU<CMatrix>(hx).solve(h);
    if (!dx.allFinite()) return false;
    x -= dx;
    const double norm = dx.norm();
    const double scale = 1.0 + x.norm();
    if (it == 0 && norm > 0.05 * scale) return false;
    if (it > 0 && norm > 0.5 * prev) return false;
    if (norm <= opt.corrector_tol * scale) return true;
    prev = norm;
  }
  return false;
}

}  // namespace

PathPoint track_path(const Homotopy& H, const CVector& start, const TrackerOptions& opt) {
  PathPoint pt;
  pt.x = start;
  pt.step = opt.initial_step;
  if (!correct(H, pt.x, 0.0, opt)) {
    // the start may already be exact to rounding; accept if the residual is tiny
    pt.x = start;
    CVector h;
    H.evaluate(pt.x, 0.0, h, nullptr, nullptr);
    if (!(max_abs(h) <= 1e-8 * (1.0 + pt.x.norm()))) {
      pt.status = PathStatus::Singular;
      return pt;
    }
  }
  int successes = 0;
  double step = opt.initial_step;
  CVector predicted;
  CVector h, hs;
  CMatrix hx;
  H.evaluate(pt.x, 0.0, h, &hx, &hs);
  const double start_condition = std::max(1.0, condition_estimate(hx, hs));
  while (pt.t < 1.0) {
    if (++pt.steps > opt.max_steps) {
      pt.status = PathStatus::StepUnderflow;
      return pt;
    }
    step = std::min(step, 1.0 - pt.t);
    const double s_next = (1.0 - pt.t - step) < 1e-15 ? 1.0 : pt.t + step;
    bool ok = predict_rk4(H, pt.x, pt.t, s_next - pt.t, predicted) && correct(H, predicted, s_next, opt);
    if (ok) {
      pt.x = predicted;
      pt.t = s_next;
      if (pt.x.norm() > opt.divergence_norm) {
        pt.status = PathStatus::Diverged;
        return pt;
      }
      H.evaluate(pt.x, pt.t, h, &hx, &hs);
      pt.condition = condition_estimate(hx, hs);
      if (pt.condition > opt.singular_condition) {
        pt.status = PathStatus::Singular;
        return pt;
      }
      if (++successes >= opt.growth_after) {
        step = std::min(step * opt.growth_factor, opt.max_step);
        successes = 0;
      }
    } else {
      successes = 0;
      step *= 0.5;
      if (step < opt.min_step) {
        H.evaluate(pt.x, pt.t, h, &hx, &hs);
        pt.condition = condition_estimate(hx, hs);
        pt.status = pt.condition > opt.underflow_singular_growth * start_condition ? PathStatus::Singular
                                                                                    : PathStatus::StepUnderflow;
        pt.step = step;
        return pt;
      }
    }
    pt.step = step;
  }
  pt.t = 1.0;
  // final polish at the target
  for (int it = 0; it < opt.final_newton_iterations; ++it) {
    H.evaluate(pt.x, 1.0, h, &hx, nullptr);
    const CVector dx = Eigen::PartialPivLU<CMatrix>(hx).solve(h);
    if (!dx.allFinite()) break;
    const CVector candidate = pt.x - dx;
    CVector hc;
    H.evaluate(candidate, 1.0, hc, nullptr, nullptr);
    if (max_abs(hc) > max_abs(h)) break;
    pt.x = candidate;
    if (dx.norm() <= 1e-15 * (1.0 + pt.x.norm())) break;
  }
  H.evaluate(pt.x, 1.0, h, &hx, &hs);
  pt.residual = max_abs(h);
  pt.condition = condition_estimate(hx, hs);
  pt.status = pt.condition > opt.singular_condition ? PathStatus::Singular : PathStatus::Success;
  return pt;
}

PathPoint track_path(const ParametricSystem& system, const ParameterPath& path, const CVector& start,
                     const TrackerOptions& options) {
  return track_path(ParameterHomotopy(system, path), start, options);
}

std::optional<NewtonResult> try_newton_refine(const ParametricSystem& system, const CVector& x0, const CVector& params,
                                              int max_iterations, double tol) {
  try {
    return newton_refine(system, x0, params, max_iterations, tol);
  } catch (const Error&) {
    return std::nullopt;
  }
}

NewtonResult newton_refine(const ParametricSystem& system, const CVector& x0, const CVector& params,
                           int max_iterations, double tol) {
  NewtonResult r{x0, 0.0, 0};
  CVector f;
  CMatrix jx;
  double prev = kInf;
  for (int it = 0; it < max_iterations; ++it) {
    system.evaluate(r.x, params, f, &jx, nullptr);
    r.residual = max_abs(f);
    if (condition_estimate(jx, CVector::Zero(0)) > 1e14 || !std::isfinite(inf_norm(jx)))
      throw Error(ErrorKind::SingularJacobian, "Jacobian is numerically singular during Newton refinement");
    if (r.residual == 0.0) return r;
    const CVector dx = Eigen::PartialPivLU<CMatrix>(jx).solve(f);
    if (!dx.allFinite()) throw Error(ErrorKind::SingularJacobian, "Newton step is not finite");
    r.x -= dx;
    r.iterations = it + 1;
    const double norm = dx.norm();
    if (norm <= tol * std::max(1.0, r.x.norm())) {
      system.evaluate(r.x, params, f, nullptr, nullptr);
      r.residual = max_abs(f);
      return r;
    }
    if (it >= 2 && norm > 0.5 * prev) break;
    prev = norm;
  }
  throw Error(ErrorKind::NoConvergence, "Newton refinement did not converge");
}

PolynomialMap::PolynomialMap(const std::vector<ComplexPoly>& equations) : n_(equations.size()) {
  for (const auto& e : equations) {
    if (e.num_vars() != n_) throw Error(ErrorKind::InvalidInput, "polynomial map must be square");
    equations_.emplace_back(e);
  }
}

void PolynomialMap::evaluate(const CVector& x, const CVector& /*p*/, CVector& f, CMatrix* jx, CMatrix* jp) const {
  const auto n = static_cast<Eigen::Index>(n_);
  f.resize(n);
  if (jp) jp->resize(n, 0);
  if (jx) jx->resize(n, n);
  std::vector<Complex> grad(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    f[static_cast<Eigen::Index>(j)] = equations_[j].value_gradient(x, grad.data());
    if (jx)
      for (std::size_t l = 0; l < n_; ++l) (*jx)(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) = grad[l];
  }
}

SolutionSet::SolutionSet(double dedup_tol, std::uint64_t seed) : tol_(dedup_tol), seed_(seed) {}

double SolutionSet::key(const CVector& x) const { return projection_.dot(x).real(); }

std::optional<std::size_t> SolutionSet::find(const CVector& x) const {
  if (points_.empty()) return std::nullopt;
  if (x.size() != projection_.size()) throw Error(ErrorKind::InvalidInput, "solution dimension mismatch");
  const double k = key(x);
  const double radius = 2.0 * tol_ * std::max(1.0, x.norm());
  for (auto it = index_.lower_bound(k - radius); it != index_.end() && it->first <= k + radius; ++it) {
    const CVector& y = points_[it->second];
    if ((x - y).norm() <= tol_ * std::max({1.0, x.norm(), y.norm()})) return it->second;
  }
  return std::nullopt;
}

std::pair<std::size_t, bool> SolutionSet::insert(const CVector& x, double residual) {
  if (auto hit = find(x)) return {*hit, false};
  if (projection_.size() != x.size()) {
    projection_ = random_complex_vector(static_cast<std::size_t>(x.size()), seed_);
    projection_ /= projection_.norm();
  }
  points_.push_back(x);
  residuals_.push_back(residual);
  index_.emplace(key(x), points_.size() - 1);
  return {points_.size() - 1, true};
}

RealClassification classify_real(const SolutionSet& sols, double imag_tol, bool real_system) {
  RealClassification out;
  std::vector<std::size_t> nonreal;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const CVector& x = sols[i];
    const double scale = std::max(1.0, max_abs(x));
    const double im = x.size() == 0 ? 0.0 : x.imag().cwiseAbs().maxCoeff();
    if (im < imag_tol * scale)
      out.real.push_back(i);
    else
      nonreal.push_back(i);
  }
  out.nonreal = nonreal.size();
  out.nonreal_pairs = nonreal.size() / 2;
  if (real_system) {
    if (nonreal.size() % 2 != 0)
      throw Error(ErrorKind::ConjugationMismatch, "odd number of nonreal solutions for a real system");
    for (std::size_t i : nonreal) {
      auto j = sols.find(sols[i].conjugate());
      if (!j || *j == i)
        throw Error(ErrorKind::ConjugationMismatch, "nonreal solution without its complex conjugate");
    }
  }
  return out;
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const std::size_t workers = std::min(threads, count);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

CVector random_complex_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CVector v(static_cast<Eigen::Index>(n));
  for (auto& c : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    c = Complex(re, im);
  }
  return v;
}

namespace {

/// (1−s)·γ·G(X) + s·F^h(X) on the n homogenized equations, plus the chart c·X = 1.
class TotalDegreeHomotopy final : public Homotopy {
 public:
  TotalDegreeHomotopy(const std::vector<ComplexPoly>& homogenized, std::vector<unsigned> degrees, CVector chart,
                      Complex gamma)
      : n_(homogenized.size()), degrees_(std::move(degrees)), chart_(std::move(chart)), gamma_(gamma) {
    for (const auto& p : homogenized) target_.emplace_back(p);
  }

  std::size_t dim() const override { return n_ + 1; }

  void evaluate(const CVector& X, double s, CVector& h, CMatrix* hx, CVector* hs) const override {
    const auto N = static_cast<Eigen::Index>(n_ + 1);
    h.resize(N);
    if (hx) hx->setZero(N, N);
    if (hs) hs->resize(N);
    const Complex w = X[static_cast<Eigen::Index>(n_)];
    std::vector<Complex> grad(n_ + 1);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const unsigned d = degrees_[i];
      const Complex xi = X[ii];
      const Complex xd = std::pow(xi, static_cast<int>(d));
      const Complex wd = std::pow(w, static_cast<int>(d));
      const Complex g = xd - wd;
      const Complex f = target_[i].value_gradient(X, grad.data());
      const Complex a = (1.0 - s) * gamma_;
      h[ii] = a * g + s * f;
      if (hs) (*hs)[ii] = f - gamma_ * g;
      if (hx) {
        for (std::size_t l = 0; l <= n_; ++l) (*hx)(ii, static_cast<Eigen::Index>(l)) = s * grad[l];
        const double dd = static_cast<double>(d);
        (*hx)(ii, ii) += a * dd * std::pow(xi, static_cast<int>(d) - 1);
        (*hx)(ii, static_cast<Eigen::Index>(n_)) -= a * dd * std::pow(w, static_cast<int>(d) - 1);
      }
    }
    const auto last = static_cast<Eigen::Index>(n_);
    h[last] = chart_.cwiseProduct(X).sum() - 1.0;
    if (hs) (*hs)[last] = 0.0;
    if (hx)
      for (Eigen::Index l = 0; l < N; ++l) (*hx)(last, l) = chart_[l];
  }

 private:
  std::size_t n_;
  std::vector<unsigned> degrees_;
  std::vector<CompiledPoly> target_;
  CVector chart_;
  Complex gamma_;
};

}  // namespace

TotalDegreeResult total_degree_solve(const std::vector<ComplexPoly>& equations, const TotalDegreeOptions& options) {
  const std::size_t n = equations.size();
  TotalDegreeResult result{SolutionSet(options.dedup_tol, detail::derive_seed(options.seed, "dedup")), 0, 0, 0};
  std::vector<unsigned> degrees;
  double bezout = 1.0;
  for (const auto& e : equations) {
    if (e.num_vars() != n) throw Error(ErrorKind::InvalidInput, "total-degree solve needs a square system");
    if (e.is_zero()) throw Error(ErrorKind::InvalidInput, "total-degree solve got a zero equation");
    const int d = e.total_degree();
    if (d == 0) return result;  // nonzero constant: no solutions
    degrees.push_back(static_cast<unsigned>(d));
    bezout *= d;
  }
  if (bezout > options.bezout_budget)
    throw Error(ErrorKind::BezoutBudgetExceeded,
                "Bezout number " + std::to_string(static_cast<long long>(bezout)) + " exceeds the budget");
  if (n == 0) return result;

  std::vector<ComplexPoly> homogenized;
  for (const auto& e : equations) {
    // homogenize() puts the new variable first; rotate it to the last slot
    const ComplexPoly h = e.homogenize();
    ComplexPoly::Terms terms;
    for (const auto& [m, c] : h.terms()) {
      Monomial r(m.begin() + 1, m.end());
      r.push_back(m[0]);
      terms.emplace(std::move(r), c);
    }
    homogenized.emplace_back(n + 1, std::move(terms));
  }
  const CVector chart = random_complex_vector(n + 1, detail::derive_seed(options.seed, "chart"));
  const CVector gvec = random_complex_vector(1, detail::derive_seed(options.seed, "gamma"));
  const Complex gamma = gvec[0] / std::abs(gvec[0]);
  const TotalDegreeHomotopy H(homogenized, degrees, chart, gamma);

  std::vector<std::size_t> radix(degrees.begin(), degrees.end());
  const auto paths = static_cast<std::size_t>(bezout);
  result.paths = paths;
  std::vector<PathPoint> ends(paths);
  const double pi = std::acos(-1.0);
  parallel_for(paths, options.threads, [&](std::size_t idx) {
    CVector X(static_cast<Eigen::Index>(n + 1));
    std::size_t rem = idx;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = rem % radix[i];
      rem /= radix[i];
      X[static_cast<Eigen::Index>(i)] = std::polar(1.0, 2.0 * pi * static_cast<double>(r) / radix[i]);
    }
    X[static_cast<Eigen::Index>(n)] = 1.0;
    const Complex scale = chart.cwiseProduct(X).sum();
    X /= scale;
    ends[idx] = track_path(H, X, options.tracker);
  });

  std::vector<ComplexPoly> affine = equations;
  const PolynomialMap map(affine);
  const CVector no_params(0);
  for (const auto& end : ends) {
    const Complex w = end.x[static_cast<Eigen::Index>(n)];
    const double rel = std::abs(w) / std::max(end.x.norm(), 1e-300);
    if (end.status != PathStatus::Success) {
      if (rel < 1e-3)
        ++result.at_infinity;
      else
        ++result.failed;
      continue;
    }
    if (rel < options.infinity_tol) {
      ++result.at_infinity;
      continue;
    }
    const CVector y = end.x.head(static_cast<Eigen::Index>(n)) / w;
    auto refined = try_newton_refine(map, y, no_params);
    if (!refined) {
      ++result.failed;
      continue;
    }
    result.solutions.insert(refined->x, refined->residual);
  }
  return result;
}

}  // namespace hyperarr
