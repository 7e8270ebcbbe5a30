#pragma once

#include <optional>
#include <string>

#include "dpas/error.hpp"
#include "dpas/numeric.hpp"
#include "dpas/padic/element.hpp"

namespace dpas::padic {

// exponent of the residue ring RF_n over Q_p:  RF_n = Z/p^(v_p(n)+1),
// because n*M = p^(v_p(n)+1) Z_p
inline int rf_exponent(long long n, long long p) { return static_cast<int>(padic_val(n, p)) + 1; }

// An element of RF_{n,Q_p} = Z/p^k with k = v_p(n)+1.
struct RFElem {
  long long p = 2;
  long long n = 1;  // ring tag
  int k = 1;        // modulus exponent
  Int val = 0;      // 0 <= val < p^k

  RFElem() = default;
  RFElem(long long p_, long long n_, Int v) : p(p_), n(n_), k(rf_exponent(n_, p_)) {
    Int mod = modulus();
    val = v % mod;
    if (val < 0) val += mod;
  }

  Int modulus() const { return ipow(p, static_cast<unsigned long>(k)); }

  bool operator==(const RFElem& o) const { return p == o.p && n == o.n && val == o.val; }
  bool operator!=(const RFElem& o) const { return !(*this == o); }

  friend RFElem operator+(const RFElem& a, const RFElem& b) {
    a.check(b);
    return RFElem(a.p, a.n, a.val + b.val);
  }
  friend RFElem operator-(const RFElem& a, const RFElem& b) {
    a.check(b);
    return RFElem(a.p, a.n, a.val - b.val);
  }
  friend RFElem operator*(const RFElem& a, const RFElem& b) {
    a.check(b);
    return RFElem(a.p, a.n, a.val * b.val);
  }

  void check(const RFElem& o) const {
    if (p != o.p || n != o.n)
      throw SortError("residue ring mismatch: rf[" + std::to_string(n) + "] vs rf[" + std::to_string(o.n) + "]");
  }

  std::string str() const { return val.get_str() + " in Z/" + std::to_string(p) + "^" + std::to_string(k); }
};

// res_{m,n}: RF_m -> RF_n for n | m (reduction mod p^(v_p(n)+1))
inline RFElem res_mn(long long m, long long n, const RFElem& x) {
  if (x.n != m) throw SortError("res source ring mismatch");
  if (m % n != 0) throw SortError("res[m->n] needs n | m");
  return RFElem(x.p, n, x.val);
}

// res_n: Q_p -> RF_n, the projection on O extended by zero outside
inline RFElem res_n(long long n, const PadicElement& x) {
  long long p = x.prime();
  int k = rf_exponent(n, p);
  switch (x.state()) {
    case PadicElement::State::Zero:
      return RFElem(p, n, 0);
    case PadicElement::State::BigO:
      if (x.ord_at_least(k)) return RFElem(p, n, 0);
      throw InsufficientPrecision("res_" + std::to_string(n) + " undetermined");
    case PadicElement::State::Known: {
      long long v = x.ord().v;
      if (v < 0) return RFElem(p, n, 0);
      if (v >= k) return RFElem(p, n, 0);
      Int u = x.unit_mod(static_cast<int>(k - v));
      return RFElem(p, n, u * ipow(p, static_cast<unsigned long>(v)));
    }
  }
  throw EvalError("bad state");
}

// ac_n: sends 0 to 0 and nonzero x to x * p^(-ord x) mod (n M)
inline RFElem ac_n(long long n, const PadicElement& x) {
  long long p = x.prime();
  int k = rf_exponent(n, p);
  switch (x.state()) {
    case PadicElement::State::Zero:
      return RFElem(p, n, 0);
    case PadicElement::State::BigO:
      throw InsufficientPrecision("ac_" + std::to_string(n) + " undetermined (element may be zero)");
    case PadicElement::State::Known:
      return RFElem(p, n, x.unit_mod(k));
  }
  throw EvalError("bad state");
}

// cross_n: VG_inf -> RF_n sends finite g >= 0 to p^g mod p^k and everything
// else (negative g, +infinity) to 0; p^g vanishes on its own once g >= k.
inline RFElem cross_n(long long n, const VGVal& g, long long p) {
  int k = rf_exponent(n, p);
  if (g.is_inf || g.v < 0 || g.v >= k) return RFElem(p, n, 0);
  return RFElem(p, n, ipow(p, static_cast<unsigned long>(g.v)));
}

// A_n: the res_n-image of elements with ac_n = 1, i.e. {p^j mod p^k} + {0}
inline bool a_member(const RFElem& x) {
  if (x.val == 0) return true;
  Int pw = 1;
  for (int j = 0; j < x.k; ++j) {
    if (x.val == pw) return true;
    pw *= to_int(x.p);
  }
  return false;
}

// decodes xi = cross_n(g): the exponent g in [0, k-1] if xi is a pure p-power,
// nullopt for xi = 0 (exponent >= k) ; anything else is outside the lattice
struct CrossDecode {
  bool in_lattice = false;
  std::optional<long long> exponent;  // empty means "any g >= k (or -inf side)"
};

inline CrossDecode cross_decode(const RFElem& x) {
  CrossDecode d;
  if (x.val == 0) {
    d.in_lattice = true;
    return d;
  }
  Int pw = 1;
  for (int j = 0; j < x.k; ++j) {
    if (x.val == pw) {
      d.in_lattice = true;
      d.exponent = j;
      return d;
    }
    pw *= to_int(x.p);
  }
  return d;
}

}  // namespace dpas::padic
