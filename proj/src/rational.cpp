#include "homeo/rational.hpp"

#include "homeo/error.hpp"

#include <string>

namespace homeo {

Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(q);
}

Rational ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(q);
}

Rational frac(const Rational& x) { return x - floor(x); }

Rational circle_norm(const Rational& t) {
  Rational f = frac(t);
  Rational g = 1 - f;
  return f < g ? f : g;
}

Rational pow2(int k) {
  Integer p;
  if (k >= 0) {
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k));
    return Rational(p);
  }
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-k));
  Rational r(Integer(1), p);
  r.canonicalize();
  return r;
}

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

Rational rational_gcd(const std::vector<Rational>& values) {
  Integer num = 0;
  Integer den = 1;
  for (const Rational& v : values) {
    Integer n = abs(v.get_num());
    Integer d = v.get_den();
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Integer(s, 10));
    }
    Integer n(s.substr(0, slash), 10);
    Integer d(s.substr(slash + 1), 10);
    if (d == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::ParseError, "not a rational: '" + s + "'");
  }
}

std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace homeo
