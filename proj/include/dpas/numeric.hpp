#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dpas {

using Int = mpz_class;
using Rat = mpq_class;

// gmpxx has no long long constructors; these helpers are lossless on LP64
inline Int to_int(long long v) { return Int(static_cast<long>(v)); }
inline Rat to_rat(long long num, long long den = 1) {
  Rat r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

inline long long to_ll(const Int& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer too large for machine word: " + z.get_str());
  return z.get_si();
}

inline Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int ipow(long long base, unsigned long e) { return ipow(to_int(base), e); }

// q^e for integer e of either sign.
inline Rat qpow(const Rat& q, long long e) {
  if (e >= 0) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    r.canonicalize();
    return r;
  }
  Rat inv = 1 / q;
  return qpow(inv, -e);
}

inline Int igcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}
inline Int ilcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }
inline long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

// floor/ceil division for possibly negative numerators
inline long long fdiv(long long a, long long b) {
  long long q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}
inline long long cdiv(long long a, long long b) { return -fdiv(-a, b); }
inline long long mod_floor(long long a, long long b) { return a - fdiv(a, b) * b; }

// p-adic valuation of a nonzero integer
inline long long padic_val(Int n, const Int& p) {
  if (n == 0) throw std::invalid_argument("padic_val(0)");
  if (n < 0) n = -n;
  long long v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return v;
}
inline long long padic_val(const Int& n, long long p) { return padic_val(n, to_int(p)); }
inline long long padic_val(long long n, long long p) { return padic_val(to_int(n), to_int(p)); }

// exact rationals serialized as "num/den" (den omitted when 1)
inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

}  // namespace dpas
