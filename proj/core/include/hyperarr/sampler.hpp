#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/polysys.hpp"
#include "hyperarr/tracker.hpp"

namespace hyperarr {

enum class SampleMethod { Morse, Lp };
std::string_view to_string(SampleMethod method);

/// One interior point per region, with its sign vector.
struct SampleReport {
  SampleMethod method = SampleMethod::Morse;
  std::size_t expected_count = 0;  // Zaslavsky region count
  std::vector<std::vector<double>> points;
  std::vector<SignVector> sign_vectors;
  /// Morse: max_j |∂_j ψ| / Σ_i |∂_j of the i-th log term| at the target
  /// parameters (relative residual). LP: optimal margin t*.
  std::vector<double> residuals;
  /// Morse: max-norm of ∇ψ itself, for reference.
  std::vector<double> gradient_norms;
  std::vector<std::pair<std::string, double>> timings;  // stage → milliseconds
  std::size_t retries = 0;

  // Morse diagnostics
  std::optional<QuadricSpec> quadric;
  std::vector<double> target_params;
  std::vector<double> hessian_max_eigenvalues;  // per point; negative means a strict local maximum
  double min_margin = 0.0;                      // min_i |f_i(p)| / ‖normal_i‖ over all points
  std::size_t nonreal = 0;

  // LP diagnostics
  double box = 0.0;
};

struct MorseOptions {
  std::uint64_t seed = 20240601;
  std::size_t threads = 1;
  std::size_t redraw_budget = 3;
  double residual_tol = 1e-10;
  double dedup_tol = 1e-6;
  double imag_tol = 1e-8;
  std::size_t max_loops = 64;
  TrackerOptions tracker;
  TraceSink trace;
};

/// Sampling by critical points of ψ = Σ log|f_i| − v log g with a generic
/// positive quadric g (one real critical point per region for essential A).
/// Throws NotEssential, TargetNotReached (after the redraw budget) or SignCollision.
SampleReport morse_sample(const Arrangement& arrangement, const MorseOptions& options = {});

/// Linear forms f_i = normal_i·x − offset_i.
std::vector<RationalPoly> arrangement_polynomials(const Arrangement& arrangement);

struct LpPoint {
  std::vector<double> x;
  double margin = 0.0;
};

/// Maximizes t subject to σ_i(â_i·x − b̂_i) >= t (unit normals), |x_j| <= B,
/// t <= 1. Returns the optimizer if t* > 1e−7.
std::optional<LpPoint> lp_interior_point(const Arrangement& arrangement, const SignVector& sigma, double box);
inline constexpr double kLpMarginMin = 1e-7;

/// Box size from which the adaptive rule starts: covers offsets and all vertices.
double initial_lp_box(const Arrangement& arrangement);

/// Every realizable sign vector by LP feasibility, pruning infeasible
/// prefixes. box <= 0 selects the adaptive rule: start at initial_lp_box and
/// multiply by 10 until the count stops changing. Throws SubsetBudgetExceeded if k > 20.
SampleReport lp_enumerate_regions(const Arrangement& arrangement, double box = 0.0);
inline constexpr std::size_t kLpHyperplaneBudget = 20;

/// True iff both reports realize the same set of sign vectors.
bool verify_reports_agree(const SampleReport& a, const SampleReport& b);

struct BenchRow {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t regions = 0;
  SampleMethod method = SampleMethod::Morse;
  std::optional<double> ms;           // empty on failure
  std::optional<std::size_t> retries;  // empty on failure
};

std::vector<BenchRow> benchmark(const std::vector<Arrangement>& arrangements, const std::vector<SampleMethod>& methods,
                                std::size_t repetitions, const MorseOptions& options = {});

/// "n,k,N,method,ms,retries" with NA for failed cells.
std::string bench_csv(const std::vector<BenchRow>& rows);

/// Random essential arrangement with integer data in [−range, range].
Arrangement random_essential_arrangement(std::size_t n, std::size_t k, std::uint64_t seed, int range = 10);

}  // namespace hyperarr
