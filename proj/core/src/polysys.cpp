#include "hyperarr/polysys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

#include "hyperarr/error.hpp"

namespace hyperarr {

RationalPoly QuadricSpec::polynomial() const {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorKind::InvalidInput, "quadric vectors a and b differ in length");
  RationalPoly g = RationalPoly::constant(n, Rational(1));
  for (std::size_t i = 0; i < n; ++i) {
    const RationalPoly shifted = RationalPoly::variable(n, i) - RationalPoly::constant(n, a[i]);
    g += shifted * shifted;
  }
  const RationalPoly lin = RationalPoly::linear(std::span<const Rational>(b), Rational(0));
  g += lin * lin;
  return g;
}

QuadricSpec make_generic_quadric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&rng]() {
    const long q = std::uniform_int_distribution<long>(1, 16)(rng);
    const long p = std::uniform_int_distribution<long>(-2 * q, 2 * q)(rng);
    return Rational(p, q);
  };
  QuadricSpec spec;
  for (std::size_t i = 0; i < n; ++i) spec.a.push_back(draw());
  for (std::size_t i = 0; i < n; ++i) spec.b.push_back(draw());
  for (auto& r : spec.a) r.canonicalize();
  for (auto& r : spec.b) r.canonicalize();
  return spec;
}

PolySystem::PolySystem(std::size_t num_vars, std::vector<std::string> parameter_names, std::vector<Equation> equations)
    : num_vars_(num_vars), names_(std::move(parameter_names)), equations_(std::move(equations)) {
  for (const auto& eq : equations_) {
    if (eq.coefficients.size() != names_.size())
      throw Error(ErrorKind::InvalidInput, "equation needs one coefficient polynomial per parameter");
    if (eq.constant.num_vars() != num_vars_)
      throw Error(ErrorKind::InvalidInput, "equation variable count mismatch");
    for (const auto& c : eq.coefficients)
      if (c.num_vars() != num_vars_) throw Error(ErrorKind::InvalidInput, "equation variable count mismatch");
  }
}

std::vector<RationalPoly> PolySystem::specialize(std::span<const Rational> params) const {
  if (params.size() != names_.size()) throw Error(ErrorKind::InvalidInput, "wrong number of parameter values");
  std::vector<RationalPoly> out;
  for (const auto& eq : equations_) {
    RationalPoly p = eq.constant;
    for (std::size_t m = 0; m < params.size(); ++m) p += eq.coefficients[m] * params[m];
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ComplexPoly> PolySystem::specialize(std::span<const Complex> params) const {
  if (params.size() != names_.size()) throw Error(ErrorKind::InvalidInput, "wrong number of parameter values");
  std::vector<ComplexPoly> out;
  for (const auto& eq : equations_) {
    ComplexPoly p = to_complex(eq.constant);
    for (std::size_t m = 0; m < params.size(); ++m) p += to_complex(eq.coefficients[m]) * params[m];
    out.push_back(std::move(p));
  }
  return out;
}

CVector PolySystem::evaluate(const CVector& x, const CVector& params, CMatrix* jacobian) const {
  CompiledPolySystem compiled(*this);
  CVector f;
  compiled.evaluate(x, params, f, jacobian, nullptr);
  return f;
}

std::string PolySystem::to_json() const {
  nlohmann::ordered_json j;
  j["variables"] = num_vars_;
  j["parameters"] = names_;
  auto eqs = nlohmann::ordered_json::array();
  for (const auto& eq : equations_) {
    nlohmann::ordered_json e;
    e["constant"] = eq.constant.to_string();
    auto cs = nlohmann::ordered_json::array();
    for (const auto& c : eq.coefficients) cs.push_back(c.to_string());
    e["coefficients"] = cs;
    eqs.push_back(e);
  }
  j["equations"] = eqs;
  return j.dump(2);
}

PolySystem build_critical_system(const std::vector<RationalPoly>& fs, const std::vector<RationalPoly>& gs) {
  if (fs.empty()) throw Error(ErrorKind::InvalidInput, "critical system needs at least one f");
  const std::size_t n = fs[0].num_vars();
  for (const auto& p : fs)
    if (p.num_vars() != n) throw Error(ErrorKind::InvalidInput, "all polynomials must share the variable count");
  for (const auto& p : gs)
    if (p.num_vars() != n) throw Error(ErrorKind::InvalidInput, "all polynomials must share the variable count");

  // all = fs ++ gs; product of all but one, for each one
  std::vector<RationalPoly> all = fs;
  all.insert(all.end(), gs.begin(), gs.end());
  const std::size_t total = all.size();
  std::vector<RationalPoly> prefix(total + 1, RationalPoly::constant(n, Rational(1)));
  std::vector<RationalPoly> suffix(total + 1, RationalPoly::constant(n, Rational(1)));
  for (std::size_t i = 0; i < total; ++i) prefix[i + 1] = prefix[i] * all[i];
  for (std::size_t i = total; i-- > 0;) suffix[i] = suffix[i + 1] * all[i];

  std::vector<std::string> names;
  for (std::size_t i = 0; i < fs.size(); ++i) names.push_back("u" + std::to_string(i + 1));
  if (gs.size() == 1)
    names.emplace_back("v");
  else
    for (std::size_t l = 0; l < gs.size(); ++l) names.push_back("v" + std::to_string(l + 1));

  std::vector<PolySystem::Equation> eqs(n);
  for (std::size_t i = 0; i < total; ++i) {
    const RationalPoly others = prefix[i] * suffix[i + 1];
    const bool negative = i >= fs.size();
    for (std::size_t j = 0; j < n; ++j) {
      RationalPoly c = all[i].derivative(j) * others;
      if (negative) c = -c;
      eqs[j].coefficients.push_back(std::move(c));
    }
  }
  for (auto& eq : eqs) eq.constant = RationalPoly(n);
  return PolySystem(n, std::move(names), std::move(eqs));
}

PolySystem build_critical_system(const std::vector<RationalPoly>& fs, const RationalPoly& g) {
  return build_critical_system(fs, std::vector<RationalPoly>{g});
}

RationalPoly homogenize_divisor(const RationalPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::InvalidInput, "cannot homogenize the zero polynomial");
  const RationalPoly h = f.homogenize();
  return h * RationalPoly::variable(h.num_vars(), 0);
}

CompiledPoly::CompiledPoly(const ComplexPoly& p) : n_(p.num_vars()), max_exp_(p.num_vars(), 0) {
  degree_ = std::max(p.total_degree(), 0);
  for (const auto& [m, c] : p.terms()) {
    coeffs_.push_back(c);
    weight_ += std::abs(c);
    for (std::size_t j = 0; j < n_; ++j) {
      exps_.push_back(m[j]);
      max_exp_[j] = std::max(max_exp_[j], m[j]);
    }
  }
  power_offset_.assign(n_ + 1, 0);
  for (std::size_t j = 0; j < n_; ++j) power_offset_[j + 1] = power_offset_[j] + max_exp_[j] + 1;
}

Complex CompiledPoly::value(const CVector& x) const {
  Complex acc(0.0, 0.0);
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    Complex v = coeffs_[t];
    const unsigned* e = &exps_[t * n_];
    for (std::size_t j = 0; j < n_; ++j)
      for (unsigned r = 0; r < e[j]; ++r) v *= x[static_cast<Eigen::Index>(j)];
    acc += v;
  }
  return acc;
}

Complex CompiledPoly::value_gradient(const CVector& x, Complex* grad) const {
  std::fill(grad, grad + n_, Complex(0.0, 0.0));
  // powers[offset_[j] + e] = x_j^e, prefix/suffix products after them
  thread_local std::vector<Complex> scratch;
  const std::size_t np = power_offset_[n_];
  scratch.resize(np + 2 * (n_ + 1));
  Complex* powers = scratch.data();
  Complex* prefix = powers + np;
  Complex* suffix = prefix + n_ + 1;
  for (std::size_t j = 0; j < n_; ++j) {
    Complex* pj = powers + power_offset_[j];
    pj[0] = 1.0;
    for (unsigned e = 1; e <= max_exp_[j]; ++e) pj[e] = pj[e - 1] * x[static_cast<Eigen::Index>(j)];
  }
  Complex acc(0.0, 0.0);
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    const unsigned* e = &exps_[t * n_];
    prefix[0] = 1.0;
    for (std::size_t j = 0; j < n_; ++j) prefix[j + 1] = prefix[j] * powers[power_offset_[j] + e[j]];
    suffix[n_] = 1.0;
    for (std::size_t j = n_; j-- > 0;) suffix[j] = suffix[j + 1] * powers[power_offset_[j] + e[j]];
    acc += coeffs_[t] * prefix[n_];
    for (std::size_t j = 0; j < n_; ++j) {
      if (e[j] == 0) continue;
      grad[j] += coeffs_[t] * static_cast<double>(e[j]) * prefix[j] * powers[power_offset_[j] + e[j] - 1] * suffix[j + 1];
    }
  }
  return acc;
}

namespace {

double relative_value(const CompiledPoly& p, const CVector& x, Complex v) {
  const double scale = std::pow(std::max(1.0, x.cwiseAbs().maxCoeff()), p.degree());
  return std::abs(v) / (std::max(p.weight(), 1e-300) * scale);
}

}  // namespace

CompiledPolySystem::CompiledPolySystem(const PolySystem& system, const std::vector<RationalPoly>& divisors,
                                       double divisor_tol)
    : n_(system.num_vars()), m_(system.num_params()), divisor_tol_(divisor_tol) {
  if (system.num_equations() != n_) throw Error(ErrorKind::InvalidInput, "system is not square");
  for (const auto& eq : system.equations()) {
    constants_.emplace_back(to_complex(eq.constant));
    if (!eq.constant.is_zero()) homogeneous_ = false;
    std::vector<CompiledPoly> row;
    for (const auto& c : eq.coefficients) row.emplace_back(to_complex(c));
    coefficients_.push_back(std::move(row));
  }
  for (const auto& d : divisors) divisors_.emplace_back(to_complex(d));
}

void CompiledPolySystem::evaluate(const CVector& x, const CVector& p, CVector& f, CMatrix* jx, CMatrix* jp) const {
  const auto n = static_cast<Eigen::Index>(n_);
  f.resize(n);
  if (jx) jx->setZero(n, n);
  if (jp) jp->resize(n, static_cast<Eigen::Index>(m_));
  std::vector<Complex> grad(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    Complex v = constants_[j].value_gradient(x, grad.data());
    if (jx)
      for (std::size_t l = 0; l < n_; ++l) (*jx)(jj, static_cast<Eigen::Index>(l)) = grad[l];
    for (std::size_t m = 0; m < m_; ++m) {
      const Complex a = coefficients_[j][m].value_gradient(x, grad.data());
      const Complex pm = p[static_cast<Eigen::Index>(m)];
      v += pm * a;
      if (jp) (*jp)(jj, static_cast<Eigen::Index>(m)) = a;
      if (jx)
        for (std::size_t l = 0; l < n_; ++l) (*jx)(jj, static_cast<Eigen::Index>(l)) += pm * grad[l];
    }
    f[jj] = v;
  }
}

bool CompiledPolySystem::admissible(const CVector& x) const {
  for (const auto& d : divisors_)
    if (relative_value(d, x, d.value(x)) <= divisor_tol_) return false;
  return true;
}

LogGradientSystem::LogGradientSystem(const std::vector<RationalPoly>& fs, const std::vector<RationalPoly>& gs,
                                     double divisor_tol)
    : n_(fs.empty() ? 0 : fs[0].num_vars()), k_(fs.size()), divisor_tol_(divisor_tol) {
  if (fs.empty()) throw Error(ErrorKind::InvalidInput, "log-gradient system needs at least one f");
  std::vector<RationalPoly> all = fs;
  all.insert(all.end(), gs.begin(), gs.end());
  for (const auto& h : all) {
    if (h.num_vars() != n_) throw Error(ErrorKind::InvalidInput, "all polynomials must share the variable count");
    if (h.total_degree() < 1) throw Error(ErrorKind::InvalidInput, "log-gradient system needs non-constant polynomials");
    Part part{CompiledPoly(to_complex(h)), {}, false, Complex(0.0), CVector()};
    if (h.total_degree() == 1) {
      part.linear = true;
      part.constant = to_double(h.coefficient(Monomial(n_, 0)));
      part.slope = CVector::Zero(static_cast<Eigen::Index>(n_));
      for (std::size_t j = 0; j < n_; ++j) {
        Monomial m(n_, 0);
        m[j] = 1;
        part.slope[static_cast<Eigen::Index>(j)] = to_double(h.coefficient(m));
      }
    } else {
      const auto grad = h.gradient();
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t l = 0; l < n_; ++l) part.hessian.emplace_back(to_complex(grad[j].derivative(l)));
    }
    parts_.push_back(std::move(part));
  }
}

Complex LogGradientSystem::part_value_gradient(const Part& part, const CVector& x, CVector& grad) const {
  if (part.linear) {
    grad = part.slope;
    return part.constant + part.slope.cwiseProduct(x).sum();
  }
  return part.value.value_gradient(x, grad.data());
}

void LogGradientSystem::evaluate(const CVector& x, const CVector& p, CVector& f, CMatrix* jx, CMatrix* jp) const {
  const auto n = static_cast<Eigen::Index>(n_);
  f.setZero(n);
  if (jx) jx->setZero(n, n);
  if (jp) jp->resize(n, static_cast<Eigen::Index>(parts_.size()));
  CVector grad(n), dlog(n);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const Part& part = parts_[i];
    const Complex h = part_value_gradient(part, x, grad);
    const Complex inv = 1.0 / h;
    dlog = grad * inv;  // ∇h / h
    const Complex sign = i < k_ ? Complex(1.0) : Complex(-1.0);
    const Complex w = sign * p[ii];
    f += w * dlog;
    if (jp) jp->col(ii) = sign * dlog;
    if (jx) {
      // ∂_l(∂_j h / h) = ∂_jl h / h − (∂_j h/h)(∂_l h/h)
      jx->noalias() -= (w * dlog) * dlog.transpose();
      if (!part.hessian.empty()) {
        const Complex wi = w * inv;
        for (std::size_t j = 0; j < n_; ++j)
          for (std::size_t l = 0; l < n_; ++l)
            (*jx)(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) += wi * part.hessian[j * n_ + l].value(x);
      }
    }
  }
}

bool LogGradientSystem::admissible(const CVector& x) const { return divisor_distance(x) > divisor_tol_; }

double LogGradientSystem::divisor_distance(const CVector& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& part : parts_) best = std::min(best, relative_value(part.value, x, part.value.value(x)));
  return best;
}

double LogGradientSystem::relative_residual(const CVector& x, const CVector& p) const {
  const auto n = static_cast<Eigen::Index>(n_);
  CVector f = CVector::Zero(n);
  Eigen::VectorXd scale = Eigen::VectorXd::Zero(n);
  CVector grad(n);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const Complex h = part_value_gradient(parts_[i], x, grad);
    const Complex w = (i < k_ ? 1.0 : -1.0) * p[static_cast<Eigen::Index>(i)] / h;
    f += w * grad;
    scale += (w * grad).cwiseAbs();
  }
  double worst = 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    if (scale[j] > 0.0) worst = std::max(worst, std::abs(f[j]) / scale[j]);
  return worst;
}

CVector LogGradientSystem::gradient(const CVector& x, const CVector& p) const {
  CVector f;
  evaluate(x, p, f, nullptr, nullptr);
  return f;
}

CMatrix LogGradientSystem::hessian(const CVector& x, const CVector& p) const {
  CVector f;
  CMatrix jx;
  evaluate(x, p, f, &jx, nullptr);
  return jx;
}

}  // namespace hyperarr
