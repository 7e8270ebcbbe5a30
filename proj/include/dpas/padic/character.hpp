#pragma once

#include <functional>
#include <vector>

#include "dpas/error.hpp"
#include "dpas/numeric.hpp"
#include "dpas/padic/cyclotomic.hpp"
#include "dpas/padic/element.hpp"
#include "dpas/padic/residue.hpp"

namespace dpas::padic {

// The fixed additive character psi(x) = exp(2 pi i frac_p(x/p)): trivial on
// the maximal ideal, nontrivial on the valuation ring. frac_p is the p-adic
// fractional part.
class Character {
 public:
  explicit Character(long long p) : p_(p) {}

  long long prime() const { return p_; }

  // psi of an exact rational argument
  CycNum operator()(const Rat& x) const {
    if (x == 0) return CycNum(Rat(1));
    long long v = padic_val(x.get_num(), to_int(p_)) - padic_val(x.get_den(), to_int(p_));
    if (v >= 1) return CycNum(Rat(1));
    // x = u * p^v with u a unit; psi(x) = zeta_{p^(1-v)}^(u mod p^(1-v))
    int k = static_cast<int>(1 - v);
    Int mod = ipow(p_, static_cast<unsigned long>(k));
    Rat u = x * qpow(to_rat(p_), -v);
    Int num = u.get_num() % mod, den = u.get_den() % mod;
    if (num < 0) num += mod;
    if (den < 0) den += mod;
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw EvalError("character argument denominator not a unit");
    Int e = (num * dinv) % mod;
    return CycNum::root_of_unity(p_, k, to_ll(e));
  }

  CycNum operator()(const PadicElement& x) const {
    switch (x.state()) {
      case PadicElement::State::Zero:
        return CycNum(Rat(1));
      case PadicElement::State::BigO:
        if (x.ord_at_least(1)) return CycNum(Rat(1));
        throw InsufficientPrecision("character undetermined at O-term");
      case PadicElement::State::Known: {
        long long v = x.ord().v;
        if (v >= 1) return CycNum(Rat(1));
        int k = static_cast<int>(1 - v);
        Int u = x.unit_mod(k);
        return CycNum::root_of_unity(p_, k, to_ll(u % ipow(p_, static_cast<unsigned long>(k))));
      }
    }
    throw EvalError("bad state");
  }

  // psi(h + e/N) for e in RF_N: any integer lift e' of e gives the same value
  CycNum with_rf_shift(const Rat& h, const RFElem& e, long long N) const {
    if (e.p != p_) throw EvalError("character/residue prime mismatch");
    return (*this)(h + Rat(e.val) / to_rat(N));
  }

 private:
  long long p_;
};

// Exact exponential sum over a finite product of residue classes:
//   sum over x in prod Z/m_i of psi(h(x)/N),
// with h given as a callback producing the numerator exactly.
inline CycNum char_sum(const Character& psi, const std::vector<long long>& moduli, long long N,
                       const std::function<Int(const std::vector<long long>&)>& h_num) {
  std::vector<long long> x(moduli.size(), 0);
  CycNum acc{Rat(0)};
  while (true) {
    acc += psi(Rat(h_num(x)) / to_rat(N));
    size_t i = 0;
    for (; i < x.size(); ++i) {
      if (++x[i] < moduli[i]) break;
      x[i] = 0;
    }
    if (i == x.size()) break;
  }
  return acc;
}

}  // namespace dpas::padic
