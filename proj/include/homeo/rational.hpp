#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace homeo {

using Rational = mpq_class;
using Integer = mpz_class;

// p/q in lowest terms; mpq_class(p, q) alone is not canonicalized.
Rational ratio(long p, long q);

Rational floor(const Rational& x);
Rational ceil(const Rational& x);
// x - floor(x), always in [0, 1).
Rational frac(const Rational& x);
// Arc-length distance from t to the nearest integer, in [0, 1/2].
Rational circle_norm(const Rational& t);
// 2^k for any integer k.
Rational pow2(int k);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
Rational abs(const Rational& a);
// Largest rational r such that every argument is an integer multiple of r.
Rational rational_gcd(const std::vector<Rational>& values);

// Accepts "p/q", "p" and "-p/q".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);

}  // namespace homeo
