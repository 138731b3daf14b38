#include "hilbcalc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hilbcalc {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den =
      slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_literal(num) ||
      (slash != std::string_view::npos &&
       (!is_integer_literal(den) || den.front() == '-' || den.front() == '+')))
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  Rational q;
  q.get_num() = mpz_class(n, 10);
  q.get_den() = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den), 10);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational fraction(long p, long q) {
  if (q == 0) throw std::domain_error("fraction: zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

}  // namespace hilbcalc
