#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperarr/polysys.hpp"

namespace hyperarr {

/// Receives one JSON object per diagnostic event.
using TraceSink = std::function<void(const std::string&)>;

enum class PathStatus { Tracking, Success, Diverged, Singular, StepUnderflow };
std::string_view to_string(PathStatus status);

struct TrackerOptions {
  double initial_step = 0.02;
  double max_step = 0.1;
  double min_step = 1e-12;
  double corrector_tol = 1e-9;  // relative to 1 + ‖x‖
  int max_corrector_iterations = 3;
  int growth_after = 4;
  double growth_factor = 1.5;
  double divergence_norm = 1e12;
  double singular_condition = 1e14;
  /// On step underflow the path is reported Singular if the condition
  /// estimate grew by more than this factor since the start of the path.
  double underflow_singular_growth = 1e4;
  std::size_t max_steps = 50000;
  int final_newton_iterations = 8;
};

struct PathPoint {
  CVector x;
  double t = 0.0;
  double step = 0.0;
  PathStatus status = PathStatus::Tracking;
  std::size_t steps = 0;
  double residual = 0.0;   // max-norm of H(x, t)
  double condition = 0.0;  // ‖Hx⁻¹‖·max(‖Hx‖, ‖Ht‖) at x
};

/// H(x, s) for s ∈ [0, 1].
class Homotopy {
 public:
  virtual ~Homotopy() = default;
  virtual std::size_t dim() const = 0;
  virtual void evaluate(const CVector& x, double s, CVector& h, CMatrix* hx, CVector* hs) const = 0;
};

/// p(s) = (1−s)·γ·p0 + s·p1 + s(1−s)·δ.
///
/// For parameter-homogeneous systems the γ factor alone is the gamma trick;
/// otherwise a complex detour δ plays that role.
struct ParameterPath {
  CVector from;
  CVector to;
  Complex gamma{1.0, 0.0};
  CVector detour;  // empty means none

  CVector at(double s) const;
  CVector derivative(double s) const;

  static ParameterPath straight(CVector from, CVector to);
  /// Random γ (homogeneous systems) or random detour (otherwise), drawn from seed.
  static ParameterPath twisted(const ParametricSystem& system, CVector from, CVector to, std::uint64_t seed);
};

class ParameterHomotopy final : public Homotopy {
 public:
  ParameterHomotopy(const ParametricSystem& system, ParameterPath path);

  std::size_t dim() const override { return system_.num_vars(); }
  void evaluate(const CVector& x, double s, CVector& h, CMatrix* hx, CVector* hs) const override;

 private:
  const ParametricSystem& system_;
  ParameterPath path_;
};

/// Predictor–corrector continuation from s = 0 to s = 1: RK4 on the
/// Davidenko equation, up to three Newton corrections, adaptive step.
PathPoint track_path(const Homotopy& homotopy, const CVector& start, const TrackerOptions& options = {});
PathPoint track_path(const ParametricSystem& system, const ParameterPath& path, const CVector& start,
                     const TrackerOptions& options = {});

struct NewtonResult {
  CVector x;
  double residual = 0.0;  // max-norm of F at x
  int iterations = 0;
};

/// Throws Error{SingularJacobian} or Error{NoConvergence}.
NewtonResult newton_refine(const ParametricSystem& system, const CVector& x, const CVector& params,
                           int max_iterations = 10, double tol = 1e-13);
std::optional<NewtonResult> try_newton_refine(const ParametricSystem& system, const CVector& x, const CVector& params,
                                              int max_iterations = 10, double tol = 1e-13);

/// Affine square system of complex polynomials, without parameters.
class PolynomialMap final : public ParametricSystem {
 public:
  explicit PolynomialMap(const std::vector<ComplexPoly>& equations);

  std::size_t num_vars() const override { return n_; }
  std::size_t num_params() const override { return 0; }
  void evaluate(const CVector& x, const CVector& p, CVector& f, CMatrix* jx, CMatrix* jp) const override;

 private:
  std::size_t n_;
  std::vector<CompiledPoly> equations_;
};

/// Points deduplicated under ‖x − y‖ <= tol·max(1, ‖x‖), indexed by a random
/// real projection so lookups only scan a narrow window.
class SolutionSet {
 public:
  explicit SolutionSet(double dedup_tol = 1e-6, std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

  /// Index of the member equal to x within tolerance, if any.
  std::optional<std::size_t> find(const CVector& x) const;
  /// Adds x unless present; returns its index and whether it was new.
  std::pair<std::size_t, bool> insert(const CVector& x, double residual = 0.0);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const CVector& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<CVector>& points() const noexcept { return points_; }
  const std::vector<double>& residuals() const noexcept { return residuals_; }
  double dedup_tol() const noexcept { return tol_; }

 private:
  double key(const CVector& x) const;

  double tol_;
  std::uint64_t seed_;
  CVector projection_;
  std::vector<CVector> points_;
  std::vector<double> residuals_;
  std::multimap<double, std::size_t> index_;
};

struct SeedPair {
  CVector x;
  CVector params;
};

/// Random complex x* off the divisor, then p in the null space of F(x*; ·).
/// Throws Error{SeedFailure} after 32 attempts.
SeedPair seed_pair(const ParametricSystem& system, std::uint64_t seed);

struct MonodromyConfig {
  std::optional<std::size_t> target_count;
  std::size_t max_loops = 64;
  /// Stop after this many consecutive loops without a new solution.
  std::size_t stall_loops = 8;
  double loop_radius = 1.0;  // relative to ‖p0‖
  std::uint64_t seed = 1;
  double residual_tol = 1e-10;
  double dedup_tol = 1e-6;
  double imag_tol = 1e-8;
  std::size_t threads = 1;
  /// Paths per parallel batch; results are merged in task order, so the
  /// outcome does not depend on the thread count.
  std::size_t batch_size = 64;
  TrackerOptions tracker;
  TraceSink trace;
};

struct MonodromyResult {
  SolutionSet solutions;
  CVector params;  // base parameters the solutions belong to
  std::size_t loops = 0;
  std::size_t paths_tracked = 0;
  std::size_t path_failures = 0;
  bool target_reached = false;
};

/// Monodromy solving by random triangle loops in parameter space.
/// When the target is not reached the partial set comes back with
/// target_reached = false; callers decide whether that is TargetNotReached.
MonodromyResult monodromy_solve(const ParametricSystem& system, const MonodromyConfig& config);
MonodromyResult monodromy_solve(const ParametricSystem& system, const MonodromyConfig& config, const SeedPair& start);

struct HomotopyResult {
  SolutionSet solutions;
  std::vector<PathPoint> paths;
  std::size_t failures = 0;
};

/// Tracks each start solution from params_from to params_to along a twisted
/// path and refines the endpoints. Throws Error{PathLoss} (with the failure
/// count in the message) if fewer distinct endpoints than starts come back.
HomotopyResult parameter_homotopy(const ParametricSystem& system, const std::vector<CVector>& starts,
                                  const CVector& params_from, const CVector& params_to, const MonodromyConfig& config);

struct TotalDegreeOptions {
  std::uint64_t seed = 1;
  double bezout_budget = 1e4;
  double dedup_tol = 1e-6;
  double infinity_tol = 1e-8;  // |w| / ‖(x, w)‖ below this is a point at infinity
  std::size_t threads = 1;
  TrackerOptions tracker;
};

struct TotalDegreeResult {
  SolutionSet solutions;      // finite, regular, refined
  std::size_t paths = 0;
  std::size_t at_infinity = 0;
  std::size_t failed = 0;     // diverged, singular or unrefinable endpoints
};

/// Homogenizes with an extra coordinate w in a random affine chart and
/// tracks from x_i^{d_i} − w^{d_i}. Throws Error{BezoutBudgetExceeded}.
TotalDegreeResult total_degree_solve(const std::vector<ComplexPoly>& equations, const TotalDegreeOptions& options = {});

struct RealClassification {
  std::vector<std::size_t> real;  // indices into the solution set
  std::size_t nonreal = 0;
  std::size_t nonreal_pairs = 0;
};

/// Real iff max_j |Im x_j| < imag_tol·max(1, ‖x‖∞). For real systems the
/// nonreal solutions must pair up under conjugation, else Error{ConjugationMismatch}.
RealClassification classify_real(const SolutionSet& sols, double imag_tol, bool real_system = true);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// Random complex vector with standard normal real and imaginary parts.
CVector random_complex_vector(std::size_t n, std::uint64_t seed);

}  // namespace hyperarr
