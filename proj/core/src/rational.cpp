#include "hyperarr/rational.hpp"

#include <cctype>
#include <limits>

#include "hyperarr/error.hpp"

namespace hyperarr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateHyperplane: return "DuplicateHyperplane";
    case ErrorKind::SubsetBudgetExceeded: return "SubsetBudgetExceeded";
    case ErrorKind::BezoutBudgetExceeded: return "BezoutBudgetExceeded";
    case ErrorKind::NotEssential: return "NotEssential";
    case ErrorKind::NotProductOfLinearForms: return "NotProductOfLinearForms";
    case ErrorKind::OnBoundary: return "OnBoundary";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::TargetNotReached: return "TargetNotReached";
    case ErrorKind::SeedFailure: return "SeedFailure";
    case ErrorKind::PathLoss: return "PathLoss";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::ConjugationMismatch: return "ConjugationMismatch";
    case ErrorKind::SignCollision: return "SignCollision";
    case ErrorKind::NumericFailure: return "NumericFailure";
    case ErrorKind::SliceDegenerate: return "SliceDegenerate";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) { return kind >= ErrorKind::TargetNotReached; }

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(ErrorKind::ParseError, "bad rational literal '" + std::string(whole) + "'");
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)), s);
    Integer den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(s) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip.front() == '-';
    if (!ip.empty() && (ip.front() == '-' || ip.front() == '+')) ip.remove_prefix(1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw Error(ErrorKind::ParseError, "bad decimal literal '" + std::string(s) + "'");
    Integer num(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
    Rational q(num, ipow(Integer(10), fp.size()));
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  return Rational(parse_integer(s, s));
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

long long to_int64(const Integer& z) {
  if (z > Integer(std::to_string(std::numeric_limits<long long>::max())) ||
      z < Integer(std::to_string(std::numeric_limits<long long>::min())))
    throw Error(ErrorKind::NumericFailure, "integer out of 64-bit range: " + z.get_str());
  return std::stoll(z.get_str());
}

}  // namespace hyperarr
