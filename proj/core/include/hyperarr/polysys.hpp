#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperarr/sparse_poly.hpp"

namespace hyperarr {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// g(x) = Σ (x_i − a_i)^2 + (Σ b_i x_i)^2 + 1, positive on R^n.
struct QuadricSpec {
  std::vector<Rational> a;
  std::vector<Rational> b;

  RationalPoly polynomial() const;
};

/// a, b uniform rationals with denominators <= 16 in [−2, 2], from a seeded mt19937_64.
QuadricSpec make_generic_quadric(std::size_t n, std::uint64_t seed);

/// Square polynomial system, linear in named parameters:
/// equation_j = constant_j(x) + Σ_m p_m · coefficient_{j,m}(x).
class PolySystem {
 public:
  struct Equation {
    RationalPoly constant;
    std::vector<RationalPoly> coefficients;  // one per parameter
  };

  PolySystem(std::size_t num_vars, std::vector<std::string> parameter_names, std::vector<Equation> equations);

  std::size_t num_vars() const noexcept { return num_vars_; }
  std::size_t num_params() const noexcept { return names_.size(); }
  std::size_t num_equations() const noexcept { return equations_.size(); }
  const std::vector<std::string>& parameter_names() const noexcept { return names_; }
  const std::vector<Equation>& equations() const noexcept { return equations_; }

  std::vector<RationalPoly> specialize(std::span<const Rational> params) const;
  std::vector<ComplexPoly> specialize(std::span<const Complex> params) const;

  /// Residual vector at x for the given parameters, and the Jacobian in x if requested.
  CVector evaluate(const CVector& x, const CVector& params, CMatrix* jacobian = nullptr) const;

  /// JSON text: {"variables":n,"parameters":[…],"equations":[{"constant":…,"coefficients":[…]}]}.
  std::string to_json() const;

 private:
  std::size_t num_vars_;
  std::vector<std::string> names_;
  std::vector<Equation> equations_;
};

/// ∇ψ for ψ = Σ u_i log f_i − v log g, cleared of denominators. Parameters u1..uk, v.
PolySystem build_critical_system(const std::vector<RationalPoly>& fs, const RationalPoly& g);

/// Several negative-weight hypersurfaces; parameters u1..uk, v1..vr.
PolySystem build_critical_system(const std::vector<RationalPoly>& fs, const std::vector<RationalPoly>& gs);

/// ʰf·x_0 in n+1 variables, x_0 first.
RationalPoly homogenize_divisor(const RationalPoly& f);

/// Polynomial compiled for repeated complex evaluation with gradient.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const ComplexPoly& p);

  std::size_t num_vars() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  /// Sum of coefficient moduli; a scale for relative tests.
  double weight() const noexcept { return weight_; }

  Complex value(const CVector& x) const;
  /// Writes ∂p/∂x_j into grad[0..n).
  Complex value_gradient(const CVector& x, Complex* grad) const;

 private:
  std::size_t n_ = 0;
  int degree_ = 0;
  double weight_ = 0.0;
  std::vector<Complex> coeffs_;
  std::vector<unsigned> exps_;  // row-major, n_ per term
  std::vector<unsigned> max_exp_;
  std::vector<std::size_t> power_offset_;
};

/// F(x; p) with p entering linearly. The tracker consumes this interface.
class ParametricSystem {
 public:
  virtual ~ParametricSystem() = default;
  virtual std::size_t num_vars() const = 0;
  virtual std::size_t num_params() const = 0;
  /// Fills f = F(x; p) and optionally ∂F/∂x (n×n) and ∂F/∂p (n×m).
  virtual void evaluate(const CVector& x, const CVector& p, CVector& f, CMatrix* jx, CMatrix* jp) const = 0;
  /// False if x sits on the divisor where the system is undefined or has spurious roots.
  virtual bool admissible(const CVector& /*x*/) const { return true; }
  /// True if F(x; λp) = λF(x; p), so rescaling parameters keeps the solutions.
  virtual bool parameter_homogeneous() const { return false; }
};

/// PolySystem evaluated in complex doubles, with an optional divisor filter
/// (min |h(x)| relative to the weight of h must exceed divisor_tol).
class CompiledPolySystem final : public ParametricSystem {
 public:
  explicit CompiledPolySystem(const PolySystem& system, const std::vector<RationalPoly>& divisors = {},
                              double divisor_tol = 1e-8);

  std::size_t num_vars() const override { return n_; }
  std::size_t num_params() const override { return m_; }
  void evaluate(const CVector& x, const CVector& p, CVector& f, CMatrix* jx, CMatrix* jp) const override;
  bool admissible(const CVector& x) const override;
  bool parameter_homogeneous() const override { return homogeneous_; }

 private:
  std::size_t n_;
  std::size_t m_;
  bool homogeneous_ = true;
  std::vector<CompiledPoly> constants_;
  std::vector<std::vector<CompiledPoly>> coefficients_;
  std::vector<CompiledPoly> divisors_;
  double divisor_tol_;
};

/// ∇ψ in rational-function form, ψ = Σ u_i log f_i − Σ v_l log g_l:
/// F_j = Σ u_i ∂_j f_i / f_i − Σ v_l ∂_j g_l / g_l. Its x-Jacobian is the Hessian of ψ.
class LogGradientSystem final : public ParametricSystem {
 public:
  LogGradientSystem(const std::vector<RationalPoly>& fs, const std::vector<RationalPoly>& gs,
                    double divisor_tol = 1e-8);

  std::size_t num_vars() const override { return n_; }
  std::size_t num_params() const override { return parts_.size(); }
  void evaluate(const CVector& x, const CVector& p, CVector& f, CMatrix* jx, CMatrix* jp) const override;
  bool admissible(const CVector& x) const override;
  bool parameter_homogeneous() const override { return true; }

  std::size_t num_positive() const noexcept { return k_; }
  /// ∇ψ and Hess ψ at x.
  CVector gradient(const CVector& x, const CVector& p) const;
  CMatrix hessian(const CVector& x, const CVector& p) const;
  /// max_j |F_j| / Σ_i |p_i ∂_j h_i / h_i|: the residual relative to the size of the terms it cancels.
  double relative_residual(const CVector& x, const CVector& p) const;
  /// Smallest relative divisor value min |h(x)| / (weight(h)·max(1,‖x‖∞)^deg h).
  double divisor_distance(const CVector& x) const;

 private:
  struct Part {
    CompiledPoly value;
    std::vector<CompiledPoly> hessian;  // row-major n×n, empty when degree <= 1
    bool linear = false;                // then h = constant + slope·x
    Complex constant;
    CVector slope;
  };
  Complex part_value_gradient(const Part& part, const CVector& x, CVector& grad) const;
  std::size_t n_;
  std::size_t k_;
  std::vector<Part> parts_;  // fs then gs
  double divisor_tol_;
};

}  // namespace hyperarr
