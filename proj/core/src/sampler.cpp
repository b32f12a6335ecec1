#include "hyperarr/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "hyperarr/charpoly.hpp"
#include "hyperarr/error.hpp"
#include "hyperarr/lattice.hpp"
#include "hyperarr/lp.hpp"
#include "random.hpp"

namespace hyperarr {

std::string_view to_string(SampleMethod method) { return method == SampleMethod::Morse ? "morse" : "lp"; }

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::size_t region_count(const Arrangement& arrangement) {
  return static_cast<std::size_t>(to_int64(region_counts(arrangement).regions));
}

struct UnitForm {
  std::vector<double> normal;
  double offset;
};

std::vector<UnitForm> unit_forms(const Arrangement& arrangement) {
  std::vector<UnitForm> out;
  for (const auto& h : arrangement.hyperplanes()) {
    double norm = 0.0;
    UnitForm f;
    for (const auto& a : h.normal) {
      f.normal.push_back(to_double(a));
      norm += f.normal.back() * f.normal.back();
    }
    norm = std::sqrt(norm);
    for (double& a : f.normal) a /= norm;
    f.offset = to_double(h.offset) / norm;
    out.push_back(std::move(f));
  }
  return out;
}

double margin_of(const std::vector<UnitForm>& forms, std::span<const double> x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : forms) {
    double v = -f.offset;
    for (std::size_t j = 0; j < x.size(); ++j) v += f.normal[j] * x[j];
    best = std::min(best, std::abs(v));
  }
  return best;
}

void sort_by_sign_vector(SampleReport& r) {
  std::vector<std::size_t> order(r.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r.sign_vectors[a] < r.sign_vectors[b]; });
  auto permute = [&](auto& v) {
    if (v.size() != order.size()) return;
    auto copy = v;
    for (std::size_t i = 0; i < order.size(); ++i) v[i] = copy[order[i]];
  };
  permute(r.points);
  permute(r.sign_vectors);
  permute(r.residuals);
  permute(r.gradient_norms);
  permute(r.hessian_max_eigenvalues);
}

/// Newton steps on the real point while the residual keeps dropping.
CVector polish_real(const LogGradientSystem& system, CVector x, const CVector& params) {
  CVector f;
  CMatrix jx;
  system.evaluate(x, params, f, &jx, nullptr);
  double best = f.cwiseAbs().maxCoeff();
  for (int it = 0; it < 8 && best > 0.0; ++it) {
    const CVector candidate = (x - Eigen::PartialPivLU<CMatrix>(jx).solve(f)).real().cast<Complex>();
    CVector fc;
    CMatrix jc;
    system.evaluate(candidate, params, fc, &jc, nullptr);
    const double r = fc.cwiseAbs().maxCoeff();
    if (!(r < best)) break;
    x = candidate;
    f = fc;
    jx = jc;
    best = r;
  }
  return x;
}

}  // namespace

std::vector<RationalPoly> arrangement_polynomials(const Arrangement& arrangement) {
  std::vector<RationalPoly> fs;
  for (const auto& h : arrangement.hyperplanes())
    fs.push_back(RationalPoly::linear(std::span<const Rational>(h.normal), Rational(-h.offset)));
  return fs;
}

SampleReport morse_sample(const Arrangement& arrangement, const MorseOptions& options) {
  const auto total_start = Clock::now();
  if (arrangement.empty() || !rank_and_essential(arrangement).essential)
    throw Error(ErrorKind::NotEssential, "Morse sampling needs an essential arrangement");
  const std::size_t n = arrangement.dim();
  const std::size_t k = arrangement.size();

  SampleReport report;
  report.method = SampleMethod::Morse;
  auto stage = Clock::now();
  report.expected_count = region_count(arrangement);
  report.timings.emplace_back("charpoly", ms_since(stage));

  const auto fs = arrangement_polynomials(arrangement);
  const auto forms = unit_forms(arrangement);
  CVector target(static_cast<Eigen::Index>(k + 1));
  for (std::size_t i = 0; i < k; ++i) target[static_cast<Eigen::Index>(i)] = 1.0;
  target[static_cast<Eigen::Index>(k)] = static_cast<double>((k + 2) / 2);  // ⌈(k+1)/2⌉
  for (const auto& t : target) report.target_params.push_back(t.real());

  std::string last_failure = "no attempt made";
  for (std::size_t attempt = 0; attempt <= options.redraw_budget; ++attempt) {
    report.retries = attempt;
    const QuadricSpec quadric = make_generic_quadric(n, detail::derive_seed(options.seed, "quadric", attempt));
    const LogGradientSystem system(fs, {quadric.polynomial()});

    MonodromyConfig cfg;
    cfg.target_count = report.expected_count;
    cfg.max_loops = options.max_loops;
    cfg.seed = detail::derive_seed(options.seed, "monodromy", attempt);
    cfg.residual_tol = options.residual_tol;
    cfg.dedup_tol = options.dedup_tol;
    cfg.imag_tol = options.imag_tol;
    cfg.threads = options.threads;
    cfg.tracker = options.tracker;
    cfg.trace = options.trace;

    HomotopyResult endpoints;
    RealClassification real;
    double t_mono = 0.0, t_hom = 0.0;
    try {
      stage = Clock::now();
      MonodromyResult mono = monodromy_solve(system, cfg);
      t_mono = ms_since(stage);
      if (!mono.target_reached) {
        last_failure = "monodromy found " + std::to_string(mono.solutions.size()) + " of " +
                       std::to_string(report.expected_count) + " solutions";
        continue;
      }
      stage = Clock::now();
      endpoints = parameter_homotopy(system, mono.solutions.points(), mono.params, target, cfg);
      t_hom = ms_since(stage);
      real = classify_real(endpoints.solutions, options.imag_tol);
    } catch (const Error& e) {
      if (!is_numerical(e.kind())) throw;
      last_failure = e.what();
      continue;
    }
    if (real.nonreal > 0) {
      last_failure = std::to_string(real.nonreal) + " nonreal critical points";
      continue;
    }

    stage = Clock::now();
    report.quadric = quadric;
    report.nonreal = real.nonreal;
    report.points.clear();
    report.sign_vectors.clear();
    report.residuals.clear();
    report.gradient_norms.clear();
    report.hessian_max_eigenvalues.clear();
    report.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t idx : real.real) {
      const CVector x = polish_real(system, endpoints.solutions[idx].real().cast<Complex>(), target);
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = x[static_cast<Eigen::Index>(j)].real();
      const CVector grad = system.gradient(x, target);
      report.gradient_norms.push_back(grad.cwiseAbs().maxCoeff());
      report.residuals.push_back(system.relative_residual(x, target));
      const Eigen::MatrixXd hess = system.hessian(x, target).real();
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (hess + hess.transpose()));
      report.hessian_max_eigenvalues.push_back(eig.eigenvalues().maxCoeff());
      report.min_margin = std::min(report.min_margin, margin_of(forms, p));
      report.sign_vectors.push_back(sign_vector_at(arrangement, p));
      report.points.push_back(std::move(p));
    }
    const std::set<SignVector> distinct(report.sign_vectors.begin(), report.sign_vectors.end());
    if (distinct.size() != report.sign_vectors.size())
      throw Error(ErrorKind::SignCollision, std::to_string(report.sign_vectors.size() - distinct.size()) +
                                                " sample points share a region");
    sort_by_sign_vector(report);
    report.timings.emplace_back("monodromy", t_mono);
    report.timings.emplace_back("homotopy", t_hom);
    report.timings.emplace_back("verify", ms_since(stage));
    report.timings.emplace_back("total", ms_since(total_start));
    return report;
  }
  throw Error(ErrorKind::TargetNotReached, "Morse sampling failed after " + std::to_string(options.redraw_budget) +
                                               " quadric redraws: " + last_failure);
}

std::optional<LpPoint> lp_interior_point(const Arrangement& arrangement, const SignVector& sigma, double box) {
  if (!(box > 0.0)) throw Error(ErrorKind::InvalidInput, "LP box bound must be positive");
  if (sigma.size() != arrangement.size()) throw Error(ErrorKind::InvalidInput, "sign vector length mismatch");
  const std::size_t n = arrangement.dim();
  const auto forms = unit_forms(arrangement);
  // variables y = x + B (so y >= 0) and t; maximize t
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const double s = sigma[i];
    std::vector<double> row(n + 1, 0.0);
    double shift = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = -s * forms[i].normal[j];
      shift += forms[i].normal[j];
    }
    row[n] = 1.0;
    A.push_back(std::move(row));
    b.push_back(-s * forms[i].offset - s * box * shift);
  }
  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<double> row(n + 1, 0.0);
    row[j] = 1.0;
    A.push_back(std::move(row));
    b.push_back(j < n ? 2.0 * box : 1.0);
  }
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  const LpSolution sol = simplex_maximize(A, b, c);
  if (sol.status != LpSolution::Status::Optimal || sol.objective <= kLpMarginMin) return std::nullopt;
  LpPoint out;
  out.margin = sol.objective;
  for (std::size_t j = 0; j < n; ++j) out.x.push_back(sol.z[j] - box);
  return out;
}

double initial_lp_box(const Arrangement& arrangement) {
  double box = 1.0;
  for (const auto& f : unit_forms(arrangement)) box = std::max(box, 1.0 + std::abs(f.offset));
  const IntersectionPoset poset = build_poset(arrangement);
  for (std::size_t i = 1; i < poset.size(); ++i) {
    if (!poset.covers[i].empty()) continue;  // only minimal flats
    for (const auto& c : poset.flats[i].point) box = std::max(box, 2.0 * std::abs(to_double(c)));
  }
  return box;
}

namespace {

SampleReport enumerate_with_box(const Arrangement& arrangement, double box) {
  const std::size_t k = arrangement.size();
  SampleReport report;
  report.method = SampleMethod::Lp;
  report.box = box;
  std::string signs;
  // depth-first over sign prefixes; an infeasible prefix prunes its subtree
  std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
    std::vector<Hyperplane> prefix(arrangement.hyperplanes().begin(),
                                   arrangement.hyperplanes().begin() + static_cast<std::ptrdiff_t>(depth));
    const Arrangement sub(arrangement.dim(), std::move(prefix));
    auto pt = lp_interior_point(sub, SignVector(signs), box);
    if (!pt) return;
    if (depth == k) {
      report.points.push_back(pt->x);
      report.sign_vectors.emplace_back(signs);
      report.residuals.push_back(pt->margin);
      return;
    }
    for (char s : {'+', '-'}) {
      signs.push_back(s);
      dfs(depth + 1);
      signs.pop_back();
    }
  };
  dfs(0);
  return report;
}

}  // namespace

SampleReport lp_enumerate_regions(const Arrangement& arrangement, double box) {
  if (arrangement.size() > kLpHyperplaneBudget)
    throw Error(ErrorKind::SubsetBudgetExceeded, "LP enumeration is limited to " +
                                                     std::to_string(kLpHyperplaneBudget) + " hyperplanes");
  const auto start = Clock::now();
  const std::size_t expected = region_count(arrangement);
  SampleReport report;
  if (box > 0.0) {
    report = enumerate_with_box(arrangement, box);
  } else {
    double b = initial_lp_box(arrangement);
    report = enumerate_with_box(arrangement, b);
    for (int grow = 0; grow < 8; ++grow) {
      SampleReport bigger = enumerate_with_box(arrangement, 10.0 * b);
      b *= 10.0;
      const bool stable = bigger.points.size() == report.points.size();
      report = std::move(bigger);
      if (stable) break;
    }
  }
  report.expected_count = expected;
  report.timings.emplace_back("total", ms_since(start));
  return report;
}

bool verify_reports_agree(const SampleReport& a, const SampleReport& b) {
  const std::set<SignVector> sa(a.sign_vectors.begin(), a.sign_vectors.end());
  const std::set<SignVector> sb(b.sign_vectors.begin(), b.sign_vectors.end());
  return sa == sb && sa.size() == a.sign_vectors.size() && sb.size() == b.sign_vectors.size();
}

std::vector<BenchRow> benchmark(const std::vector<Arrangement>& arrangements, const std::vector<SampleMethod>& methods,
                                std::size_t repetitions, const MorseOptions& options) {
  std::vector<BenchRow> rows;
  for (const auto& arrangement : arrangements) {
    const std::size_t regions = region_count(arrangement);
    for (SampleMethod method : methods)
      for (std::size_t rep = 0; rep < repetitions; ++rep) {
        BenchRow row{arrangement.dim(), arrangement.size(), regions, method, std::nullopt, std::nullopt};
        const auto start = Clock::now();
        try {
          if (method == SampleMethod::Morse) {
            MorseOptions opt = options;
            opt.seed = detail::derive_seed(options.seed, "bench", rep);
            const SampleReport r = morse_sample(arrangement, opt);
            row.retries = r.retries;
          } else {
            lp_enumerate_regions(arrangement);
            row.retries = 0;
          }
          row.ms = ms_since(start);
        } catch (const Error&) {
          row.ms.reset();
          row.retries.reset();
        }
        rows.push_back(row);
      }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "n,k,N,method,ms,retries\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.k << ',' << r.regions << ',' << to_string(r.method) << ',';
    if (r.ms) {
      os.setf(std::ios::fixed);
      os.precision(3);
      os << *r.ms;
    } else {
      os << "NA";
    }
    os << ',';
    if (r.retries)
      os << *r.retries;
    else
      os << "NA";
    os << '\n';
  }
  return os.str();
}

Arrangement random_essential_arrangement(std::size_t n, std::size_t k, std::uint64_t seed, int range) {
  if (k < n || n == 0) throw Error(ErrorKind::InvalidInput, "an essential arrangement needs k >= n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-range, range);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Hyperplane> hs;
    std::set<std::pair<std::vector<Rational>, Rational>> seen;
    while (hs.size() < k) {
      Hyperplane h;
      bool nonzero = false;
      for (std::size_t j = 0; j < n; ++j) {
        h.normal.emplace_back(coeff(rng));
        nonzero = nonzero || h.normal.back() != 0;
      }
      h.offset = coeff(rng);
      if (!nonzero) continue;
      const Hyperplane key = Arrangement::normalized(h);
      if (!seen.emplace(key.normal, key.offset).second) continue;
      hs.push_back(std::move(h));
    }
    Arrangement a(n, std::move(hs));
    if (rank_and_essential(a).essential) return a;
  }
  throw Error(ErrorKind::InvalidInput, "could not draw an essential arrangement");
}

}  // namespace hyperarr
