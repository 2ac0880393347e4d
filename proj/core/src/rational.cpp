#include "jacobi/rational.hpp"

#include <cctype>

#include "jacobi/errors.hpp"

namespace jacobi {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse_error";
    case ErrorKind::UndeclaredIdentifier: return "undeclared_identifier";
    case ErrorKind::ZeroDenominator: return "zero_denominator";
    case ErrorKind::UnknownVariable: return "unknown_variable";
    case ErrorKind::VanishingDenominator: return "vanishing_denominator";
    case ErrorKind::UnboundVariable: return "unbound_variable";
    case ErrorKind::InvalidSystem: return "invalid_system";
    case ErrorKind::NotSquare: return "not_square";
    case ErrorKind::OddDegree: return "odd_degree";
    case ErrorKind::NotFixedPoint: return "not_fixed_point";
    case ErrorKind::NonIsolatedFixedPoints: return "non_isolated_fixed_points";
    case ErrorKind::UnsupportedDimension: return "unsupported_dimension";
    case ErrorKind::AssumptionViolated: return "assumption_violated";
    case ErrorKind::DegenerateChain: return "degenerate_chain";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Numerical: return "numerical";
  }
  return "unknown";
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("malformed rational literal '" + std::string(text) + "'", 0);
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::ZeroDenominator, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
  // Stern-Brocot descent on the continued-fraction expansions.
  if (lo_in > hi_in) return simplest_between(hi_in, lo_in);
  if (lo_in <= 0 && hi_in >= 0) return Rational(0);
  if (hi_in < 0) return Rational(-simplest_between(-hi_in, -lo_in));
  Rational lo = lo_in, hi = hi_in;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // fl < lo < hi < fl + 1: recurse on reciprocals of the fractional parts.
  Rational inner = simplest_between(Rational(1) / (hi - fl), Rational(1) / (lo - fl));
  Rational result = Rational(fl) + Rational(1) / inner;
  result.canonicalize();
  return result;
}

std::size_t hash_value(const Rational& q) {
  const std::size_t a = mpz_get_ui(q.get_num_mpz_t()) ^ static_cast<std::size_t>(mpz_size(q.get_num_mpz_t()) << 1) ^
                        static_cast<std::size_t>(sgn(q) + 1);
  const std::size_t b = mpz_get_ui(q.get_den_mpz_t());
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

}  // namespace jacobi
