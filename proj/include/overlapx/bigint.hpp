#pragma once

#include <gmpxx.h>

#include <string>

#include "overlapx/errors.hpp"

namespace overlapx {

// All counts, products and bounds are exact. Sizes like 2^n * n^sigma
// overflow 64-bit words already near n = 50, so everything order-decisive
// runs on arbitrary-precision integers and rationals.
using BigInt = mpz_class;
using Rational = mpq_class;

// Rational in lowest terms with a positive denominator.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// binom(n, <= m) = sum_{t=0}^{m} C(n, t)
inline BigInt binomial_sum(unsigned long n, unsigned long m) {
  BigInt total = 0;
  BigInt term = 1;  // C(n, 0)
  for (unsigned long t = 0;; ++t) {
    total += term;
    if (t >= m || t >= n) break;
    term = term * static_cast<unsigned long>(n - t) / (t + 1);
  }
  return total;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Rational rational_pow(const Rational& base, unsigned long e) {
  Rational r = 1;
  Rational b = base;
  unsigned long k = e;
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(); }

inline std::string to_decimal(const Rational& v) { return v.get_str(); }

}  // namespace overlapx
