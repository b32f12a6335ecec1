#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hyperarr/error.hpp"
#include "hyperarr/tracker.hpp"
#include "random.hpp"

namespace hyperarr {

CVector ParameterPath::at(double s) const {
  CVector p = (1.0 - s) * gamma * from + s * to;
  if (detour.size() > 0) p += s * (1.0 - s) * detour;
  return p;
}

CVector ParameterPath::derivative(double s) const {
  CVector d = to - gamma * from;
  if (detour.size() > 0) d += (1.0 - 2.0 * s) * detour;
  return d;
}

ParameterPath ParameterPath::straight(CVector from, CVector to) {
  return ParameterPath{std::move(from), std::move(to), Complex(1.0, 0.0), CVector()};
}

ParameterPath ParameterPath::twisted(const ParametricSystem& system, CVector from, CVector to, std::uint64_t seed) {
  ParameterPath path = straight(std::move(from), std::move(to));
  if (system.parameter_homogeneous()) {
    const CVector g = random_complex_vector(1, seed);
    path.gamma = g[0] / std::abs(g[0]);
  } else {
    const double scale = std::max({1.0, path.from.norm(), path.to.norm()});
    path.detour = random_complex_vector(static_cast<std::size_t>(path.from.size()), seed) * scale;
  }
  return path;
}

ParameterHomotopy::ParameterHomotopy(const ParametricSystem& system, ParameterPath path)
    : system_(system), path_(std::move(path)) {
  const auto m = static_cast<Eigen::Index>(system.num_params());
  if (path_.from.size() != m || path_.to.size() != m)
    throw Error(ErrorKind::InvalidInput, "parameter path dimension mismatch");
}

void ParameterHomotopy::evaluate(const CVector& x, double s, CVector& h, CMatrix* hx, CVector* hs) const {
  if (hs) {
    CMatrix jp;
    system_.evaluate(x, path_.at(s), h, hx, &jp);
    *hs = jp * path_.derivative(s);
  } else {
    system_.evaluate(x, path_.at(s), h, hx, nullptr);
  }
}

SeedPair seed_pair(const ParametricSystem& system, std::uint64_t seed) {
  const std::size_t n = system.num_vars();
  const std::size_t m = system.num_params();
  if (m == 0) throw Error(ErrorKind::SeedFailure, "system has no parameters to solve for");
  for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
    const std::uint64_t s = detail::derive_seed(seed, "seed-pair", attempt);
    const CVector x = random_complex_vector(n, detail::derive_seed(s, "x"));
    if (!system.admissible(x)) continue;
    CVector f0;
    CMatrix jp;
    system.evaluate(x, CVector::Zero(static_cast<Eigen::Index>(m)), f0, nullptr, &jp);
    if (!f0.allFinite() || !jp.allFinite()) continue;
    // F(x; p) = f0 + Jp·p; pick p = particular + random null-space combination
    Eigen::JacobiSVD<CMatrix> svd(jp, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto sv = svd.singularValues();
    const double tol = 1e-10 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > tol) ++rank;
    const Eigen::Index null_dim = static_cast<Eigen::Index>(m) - rank;
    if (null_dim <= 0 && f0.norm() == 0.0) continue;
    CVector p = svd.solve(-f0);
    if (null_dim > 0) {
      const CVector coeffs = random_complex_vector(static_cast<std::size_t>(null_dim), detail::derive_seed(s, "null"));
      p += svd.matrixV().rightCols(null_dim) * coeffs;
    }
    if (f0.norm() == 0.0) p /= p.norm();
    CVector f;
    system.evaluate(x, p, f, nullptr, nullptr);
    const double scale = std::max(1.0, jp.cwiseAbs().maxCoeff() * p.cwiseAbs().maxCoeff());
    if (!f.allFinite() || f.cwiseAbs().maxCoeff() > 1e-12 * scale) continue;
    return SeedPair{x, p};
  }
  throw Error(ErrorKind::SeedFailure, "no admissible seed pair after 32 attempts");
}

namespace {

void emit(const TraceSink& trace, const nlohmann::ordered_json& event) {
  if (trace) trace(event.dump());
}

struct Loop {
  std::vector<ParameterPath> segments;
};

Loop make_loop(const ParametricSystem& system, const CVector& base, const MonodromyConfig& cfg, std::size_t index) {
  const auto m = static_cast<std::size_t>(base.size());
  const double r = cfg.loop_radius * std::max(1.0, base.norm());
  auto vertex = [&](const char* tag) {
    CVector xi = random_complex_vector(m, detail::derive_seed(cfg.seed, tag, index));
    return CVector(base + r * xi / xi.norm());
  };
  const CVector p1 = vertex("loop-a");
  const CVector p2 = vertex("loop-b");
  Loop loop;
  loop.segments.push_back(ParameterPath::twisted(system, base, p1, detail::derive_seed(cfg.seed, "seg0", index)));
  loop.segments.push_back(ParameterPath::twisted(system, p1, p2, detail::derive_seed(cfg.seed, "seg1", index)));
  loop.segments.push_back(ParameterPath::twisted(system, p2, base, detail::derive_seed(cfg.seed, "seg2", index)));
  return loop;
}

struct LoopOutcome {
  bool ok = false;
  CVector x;
  double residual = 0.0;
  PathStatus status = PathStatus::Success;
};

LoopOutcome run_loop(const ParametricSystem& system, const Loop& loop, const CVector& start, const CVector& base,
                     const MonodromyConfig& cfg) {
  LoopOutcome out;
  CVector x = start;
  for (const auto& seg : loop.segments) {
    const PathPoint pt = track_path(system, seg, x, cfg.tracker);
    if (pt.status != PathStatus::Success) {
      out.status = pt.status;
      return out;
    }
    x = pt.x;
  }
  auto refined = try_newton_refine(system, x, base);
  if (!refined || !system.admissible(refined->x)) {
    out.status = PathStatus::Singular;
    return out;
  }
  out.ok = true;
  out.x = refined->x;
  out.residual = refined->residual;
  return out;
}

}  // namespace

MonodromyResult monodromy_solve(const ParametricSystem& system, const MonodromyConfig& config) {
  return monodromy_solve(system, config, seed_pair(system, detail::derive_seed(config.seed, "start")));
}

MonodromyResult monodromy_solve(const ParametricSystem& system, const MonodromyConfig& cfg, const SeedPair& start) {
  if (cfg.max_loops < 1) throw Error(ErrorKind::InvalidInput, "max_loops must be at least 1");
  MonodromyResult result{SolutionSet(cfg.dedup_tol, detail::derive_seed(cfg.seed, "dedup")), start.params, 0, 0, 0,
                         false};
  const CVector& base = start.params;
  {
    auto refined = try_newton_refine(system, start.x, base);
    if (!refined) throw Error(ErrorKind::SeedFailure, "seed point does not refine");
    result.solutions.insert(refined->x, refined->residual);
  }
  auto reached = [&] { return cfg.target_count && result.solutions.size() >= *cfg.target_count; };

  std::vector<Loop> loops;
  std::vector<std::vector<bool>> done;  // done[solution][loop]
  std::size_t stalled = 0;
  while (!reached() && loops.size() < cfg.max_loops) {
    loops.push_back(make_loop(system, base, cfg, loops.size()));
    for (auto& row : done) row.push_back(false);
    const std::size_t before = result.solutions.size();
    emit(cfg.trace, {{"event", "loop"}, {"index", loops.size() - 1}, {"solutions", before}});

    while (!reached()) {
      done.resize(result.solutions.size(), std::vector<bool>(loops.size(), false));
      std::vector<std::pair<std::size_t, std::size_t>> tasks;
      for (std::size_t i = 0; i < done.size() && tasks.size() < cfg.batch_size; ++i)
        for (std::size_t l = 0; l < loops.size() && tasks.size() < cfg.batch_size; ++l)
          if (!done[i][l]) tasks.emplace_back(i, l);
      if (tasks.empty()) break;
      std::vector<LoopOutcome> outcomes(tasks.size());
      parallel_for(tasks.size(), cfg.threads, [&](std::size_t t) {
        const auto [i, l] = tasks[t];
        outcomes[t] = run_loop(system, loops[l], result.solutions[i], base, cfg);
      });
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        done[tasks[t].first][tasks[t].second] = true;
        ++result.paths_tracked;
        if (!outcomes[t].ok) {
          ++result.path_failures;
          emit(cfg.trace, {{"event", "path_failure"},
                           {"solution", tasks[t].first},
                           {"loop", tasks[t].second},
                           {"status", std::string(to_string(outcomes[t].status))}});
          continue;
        }
        if (result.solutions.insert(outcomes[t].x, outcomes[t].residual).second && reached()) break;
      }
    }
    stalled = result.solutions.size() == before ? stalled + 1 : 0;
    if (stalled >= cfg.stall_loops) break;
  }
  result.loops = loops.size();
  result.target_reached = cfg.target_count ? reached() : true;
  emit(cfg.trace, {{"event", "monodromy_done"},
                   {"solutions", result.solutions.size()},
                   {"loops", result.loops},
                   {"paths", result.paths_tracked},
                   {"failures", result.path_failures}});
  return result;
}

HomotopyResult parameter_homotopy(const ParametricSystem& system, const std::vector<CVector>& starts,
                                  const CVector& params_from, const CVector& params_to, const MonodromyConfig& cfg) {
  constexpr int kAttempts = 3;
  std::size_t last_count = 0;
  std::size_t last_failures = 0;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const ParameterPath path = ParameterPath::twisted(system, params_from, params_to,
                                                      detail::derive_seed(cfg.seed, "homotopy", attempt));
    HomotopyResult result{SolutionSet(cfg.dedup_tol, detail::derive_seed(cfg.seed, "endpoints")),
                          std::vector<PathPoint>(starts.size()), 0};
    parallel_for(starts.size(), cfg.threads,
                 [&](std::size_t i) { result.paths[i] = track_path(system, path, starts[i], cfg.tracker); });
    for (auto& pt : result.paths) {
      if (pt.status != PathStatus::Success) {
        ++result.failures;
        continue;
      }
      auto refined = try_newton_refine(system, pt.x, params_to);
      if (!refined || !system.admissible(refined->x)) {
        ++result.failures;
        continue;
      }
      pt.x = refined->x;
      pt.residual = refined->residual;
      result.solutions.insert(refined->x, refined->residual);
    }
    emit(cfg.trace, {{"event", "parameter_homotopy"},
                     {"attempt", attempt},
                     {"starts", starts.size()},
                     {"endpoints", result.solutions.size()},
                     {"failures", result.failures}});
    if (result.solutions.size() == starts.size()) return result;
    last_count = result.solutions.size();
    last_failures = result.failures;
  }
  throw Error(ErrorKind::PathLoss, std::to_string(last_count) + " distinct endpoints from " +
                                       std::to_string(starts.size()) + " starts (" + std::to_string(last_failures) +
                                       " path failures)");
}

}  // namespace hyperarr
