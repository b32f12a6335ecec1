#include "hyperarr/sparse_poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hyperarr/error.hpp"

namespace hyperarr {

namespace {

template <class Coeff>
bool is_zero_coeff(const Coeff& c) {
  if constexpr (std::is_same_v<Coeff, Complex>)
    return c == Complex(0.0, 0.0);
  else
    return c == 0;
}

template <class Coeff>
void add_term(std::map<Monomial, Coeff>& terms, const Monomial& m, const Coeff& c) {
  if (is_zero_coeff(c)) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (is_zero_coeff(it->second)) terms.erase(it);
  }
}

template <class Coeff>
Coeff from_unsigned(unsigned e) {
  if constexpr (std::is_same_v<Coeff, Complex>)
    return Complex(static_cast<double>(e), 0.0);
  else
    return Coeff(e);
}

std::string coeff_text(const Complex& c) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  return os.str();
}

}  // namespace

template <class Coeff>
SparsePoly<Coeff>::SparsePoly(std::size_t nvars, Terms terms) : n_(nvars) {
  for (auto& [m, c] : terms) {
    if (m.size() != n_) throw Error(ErrorKind::InvalidInput, "monomial length does not match variable count");
    add_term(terms_, m, c);
  }
}

template <class Coeff>
SparsePoly<Coeff> SparsePoly<Coeff>::constant(std::size_t nvars, const Coeff& c) {
  SparsePoly p(nvars);
  add_term(p.terms_, Monomial(nvars, 0), c);
  return p;
}

template <class Coeff>
SparsePoly<Coeff> SparsePoly<Coeff>::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw Error(ErrorKind::InvalidInput, "variable index out of range");
  SparsePoly p(nvars);
  Monomial m(nvars, 0);
  m[index] = 1;
  p.terms_.emplace(std::move(m), from_unsigned<Coeff>(1));
  return p;
}

template <class Coeff>
SparsePoly<Coeff> SparsePoly<Coeff>::linear(std::span<const Coeff> a, const Coeff& c) {
  SparsePoly p = constant(a.size(), c);
  for (std::size_t j = 0; j < a.size(); ++j) {
    Monomial m(a.size(), 0);
    m[j] = 1;
    add_term(p.terms_, m, a[j]);
  }
  return p;
}

template <class Coeff>
int SparsePoly<Coeff>::total_degree() const {
  int best = -1;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (unsigned e : m) d += static_cast<int>(e);
    best = std::max(best, d);
  }
  return best;
}

template <class Coeff>
int SparsePoly<Coeff>::degree_in(std::size_t var) const {
  int best = -1;
  for (const auto& [m, c] : terms_) best = std::max(best, static_cast<int>(m[var]));
  return best;
}

template <class Coeff>
bool SparsePoly<Coeff>::is_homogeneous() const {
  int deg = -1;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (unsigned e : m) d += static_cast<int>(e);
    if (deg >= 0 && d != deg) return false;
    deg = d;
  }
  return true;
}

template <class Coeff>
Coeff SparsePoly<Coeff>::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coeff(0) : it->second;
}

template <class Coeff>
SparsePoly<Coeff>& SparsePoly<Coeff>::operator+=(const SparsePoly& o) {
  if (o.n_ != n_) throw Error(ErrorKind::InvalidInput, "variable count mismatch in polynomial sum");
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, c);
  return *this;
}

template <class Coeff>
SparsePoly<Coeff>& SparsePoly<Coeff>::operator-=(const SparsePoly& o) {
  if (o.n_ != n_) throw Error(ErrorKind::InvalidInput, "variable count mismatch in polynomial difference");
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, Coeff(-c));
  return *this;
}

template <class Coeff>
SparsePoly<Coeff>& SparsePoly<Coeff>::operator*=(const Coeff& c) {
  if (is_zero_coeff(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

template <class Coeff>
SparsePoly<Coeff> SparsePoly<Coeff>::operator-() const {
  SparsePoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

template <class Coeff>
SparsePoly<Coeff> SparsePoly<Coeff>::times(const SparsePoly& o) const {
  if (o.n_ != n_) throw Error(ErrorKind::InvalidInput, "variable count mismatch in polynomial product");
  SparsePoly r(n_);
  Monomial m(n_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      for (std::size_t j = 0; j < n_; ++j) m[j] = ma[j] + mb[j];
      add_term(r.terms_, m, Coeff(ca * cb));
    }
  return r;
}

template <class Coeff>
SparsePoly<Coeff> SparsePoly<Coeff>::pow(unsigned e) const {
  SparsePoly result = constant(n_, from_unsigned<Coeff>(1));
  SparsePoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

template <class Coeff>
SparsePoly<Coeff> SparsePoly<Coeff>::derivative(std::size_t var) const {
  if (var >= n_) throw Error(ErrorKind::InvalidInput, "variable index out of range");
  SparsePoly r(n_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial dm = m;
    dm[var] -= 1;
    add_term(r.terms_, dm, Coeff(c * from_unsigned<Coeff>(m[var])));
  }
  return r;
}

template <class Coeff>
std::vector<SparsePoly<Coeff>> SparsePoly<Coeff>::gradient() const {
  std::vector<SparsePoly> g;
  g.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) g.push_back(derivative(j));
  return g;
}

template <class Coeff>
Coeff SparsePoly<Coeff>::evaluate(std::span<const Coeff> x) const {
  if (x.size() != n_) throw Error(ErrorKind::InvalidInput, "point dimension does not match variable count");
  Coeff acc = Coeff(0);
  for (const auto& [m, c] : terms_) {
    Coeff t = c;
    for (std::size_t j = 0; j < n_; ++j)
      for (unsigned e = 0; e < m[j]; ++e) t *= x[j];
    acc += t;
  }
  return acc;
}

template <class Coeff>
SparsePoly<Coeff> SparsePoly<Coeff>::compose_linear(const std::vector<std::vector<Coeff>>& M) const {
  if (M.size() != n_) throw Error(ErrorKind::InvalidInput, "substitution matrix needs one row per variable");
  const std::size_t m_out = n_ == 0 ? 0 : M[0].size();
  std::vector<std::vector<SparsePoly>> powers(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (M[j].size() != m_out) throw Error(ErrorKind::InvalidInput, "ragged substitution matrix");
    const SparsePoly lin = linear(std::span<const Coeff>(M[j]), Coeff(0));
    const int deg = std::max(degree_in(j), 0);
    powers[j].push_back(constant(m_out, from_unsigned<Coeff>(1)));
    for (int e = 1; e <= deg; ++e) powers[j].push_back(powers[j].back() * lin);
  }
  SparsePoly r(m_out);
  for (const auto& [m, c] : terms_) {
    SparsePoly t = constant(m_out, c);
    for (std::size_t j = 0; j < n_; ++j)
      if (m[j] > 0) t = t * powers[j][m[j]];
    r += t;
  }
  return r;
}

template <class Coeff>
SparsePoly<Coeff> SparsePoly<Coeff>::homogenize() const {
  const int deg = std::max(total_degree(), 0);
  SparsePoly r(n_ + 1);
  for (const auto& [m, c] : terms_) {
    Monomial hm(n_ + 1, 0);
    unsigned d = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      hm[j + 1] = m[j];
      d += m[j];
    }
    hm[0] = static_cast<unsigned>(deg) - d;
    add_term(r.terms_, hm, c);
  }
  return r;
}

template <class Coeff>
SparsePoly<Coeff> SparsePoly<Coeff>::extend_vars(std::size_t nvars) const {
  if (nvars < n_) throw Error(ErrorKind::InvalidInput, "cannot drop variables");
  SparsePoly r(nvars);
  for (const auto& [m, c] : terms_) {
    Monomial em = m;
    em.resize(nvars, 0);
    r.terms_.emplace(std::move(em), c);
  }
  return r;
}

template <class Coeff>
std::string SparsePoly<Coeff>::to_string(unsigned base) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest degree first, then reverse lexicographic exponent order
  std::vector<std::pair<Monomial, Coeff>> ordered(terms_.rbegin(), terms_.rend());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    unsigned da = 0, db = 0;
    for (unsigned e : a.first) da += e;
    for (unsigned e : b.first) db += e;
    return da > db;
  });
  for (const auto& [m, c] : ordered) {
    std::string mono;
    for (std::size_t j = 0; j < n_; ++j) {
      if (m[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(j + base);
      if (m[j] > 1) mono += "^" + std::to_string(m[j]);
    }
    if constexpr (std::is_same_v<Coeff, Rational>) {
      const bool neg = c < 0;
      const Rational a = neg ? Rational(-c) : c;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (mono.empty())
        os << hyperarr::to_string(a);
      else if (a == 1)
        os << mono;
      else
        os << hyperarr::to_string(a) << "*" << mono;
    } else {
      if (!first) os << " + ";
      os << coeff_text(c);
      if (!mono.empty()) os << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

template class SparsePoly<Rational>;
template class SparsePoly<Complex>;

ComplexPoly to_complex(const RationalPoly& p) {
  ComplexPoly::Terms terms;
  for (const auto& [m, c] : p.terms()) terms.emplace(m, Complex(to_double(c), 0.0));
  return ComplexPoly(p.num_vars(), std::move(terms));
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars, unsigned base) : s_(text), n_(nvars), base_(base) {}

  RationalPoly parse() {
    RationalPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, "at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalPoly expr() {
    RationalPoly acc = term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  RationalPoly term() {
    RationalPoly acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        RationalPoly d = unary();
        if (d.total_degree() > 0) {
          pos_ = at;
          fail("division by a non-constant");
        }
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc *= Rational(1) / d.terms().begin()->second;
      } else {
        return acc;
      }
    }
  }

  RationalPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalPoly power() {
    RationalPoly b = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      const auto digits = s_.substr(start, pos_ - start);
      if (digits.size() > 4) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(std::stoul(std::string(digits))));
    }
    return b;
  }

  RationalPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a variable index after 'x'");
      const unsigned long idx = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (idx < base_ || idx - base_ >= n_) {
        pos_ = start;
        fail("variable x" + std::to_string(idx) + " out of range");
      }
      return RationalPoly::variable(n_, idx - base_);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      try {
        return RationalPoly::constant(n_, parse_rational(s_.substr(start, pos_ - start)));
      } catch (const Error&) {
        pos_ = start;
        fail("malformed number");
      }
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t n_;
  unsigned base_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalPoly parse_poly(std::string_view text, std::size_t nvars, unsigned base) {
  return Parser(text, nvars, base).parse();
}

std::size_t count_variables(std::string_view text, unsigned base) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x') continue;
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1 || j - i > 8) continue;
    const unsigned long idx = std::stoul(std::string(text.substr(i + 1, j - i - 1)));
    if (idx >= base) n = std::max<std::size_t>(n, idx - base + 1);
  }
  return n;
}

}  // namespace hyperarr
