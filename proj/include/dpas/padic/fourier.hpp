#pragma once

#include <map>
#include <vector>

#include "dpas/error.hpp"
#include "dpas/numeric.hpp"
#include "dpas/padic/character.hpp"
#include "dpas/padic/cyclotomic.hpp"

namespace dpas::padic {

// A finitely described function on K^d: supported on the box (p^lo O)^d,
// constant on cosets of (p^level O)^d. A coset is indexed by its
// representative tuple r with coordinate value r_i * p^lo, 0 <= r_i < p^(level-lo).
class StepFunction {
 public:
  StepFunction(long long p, int d, long long lo, long long level) : p_(p), d_(d), lo_(lo), level_(level) {
    if (level <= lo) throw Error("step function level must exceed the box valuation");
  }

  long long prime() const { return p_; }
  int dim() const { return d_; }
  long long box_valuation() const { return lo_; }
  long long level() const { return level_; }
  long long reps_per_dim() const {
    long long r = 1;
    for (long long i = lo_; i < level_; ++i) r *= p_;
    return r;
  }

  void set(const std::vector<long long>& rep, const CycNum& v) {
    check_rep(rep);
    if (v.is_zero())
      values_.erase(rep);
    else
      values_[rep] = v;
  }

  CycNum at_rep(const std::vector<long long>& rep) const {
    check_rep(rep);
    auto it = values_.find(rep);
    return it == values_.end() ? CycNum(Rat(0)) : it->second;
  }

  // value at an exact rational point (zero outside the box)
  CycNum at_point(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != d_) throw Error("dimension mismatch");
    std::vector<long long> rep(d_);
    for (int i = 0; i < d_; ++i) {
      Rat scaled = x[i] * qpow(to_rat(p_), -lo_);  // coordinates in units of p^lo
      // must be a p-integral rational; its residue mod p^(level-lo) is the rep
      Int num = scaled.get_num(), den = scaled.get_den();
      if (padic_val(den, p_) > 0) return CycNum(Rat(0));  // below the box valuation
      Int mod = ipow(p_, static_cast<unsigned long>(level_ - lo_));
      Int dinv;
      if (mpz_invert(dinv.get_mpz_t(), Int(den % mod).get_mpz_t(), mod.get_mpz_t()) == 0)
        throw EvalError("point not p-adically comparable with the box");
      Int r = ((num % mod) * dinv) % mod;
      if (r < 0) r += mod;
      rep[i] = to_ll(r);
    }
    return at_rep(rep);
  }

  bool is_zero() const { return values_.empty(); }

  // exact integral: each coset has measure p^(-level) per dimension
  CycNum integral() const {
    CycNum acc{Rat(0)};
    for (const auto& [rep, v] : values_) acc += v;
    return acc * CycNum(qpow(to_rat(p_), -level_ * d_));
  }

  const std::map<std::vector<long long>, CycNum>& entries() const { return values_; }

  // pointwise scaling
  StepFunction scaled(const Rat& c) const {
    StepFunction r = *this;
    for (auto& [rep, v] : r.values_) v *= CycNum(c);
    return r;
  }

 private:
  void check_rep(const std::vector<long long>& rep) const {
    if (static_cast<int>(rep.size()) != d_) throw Error("dimension mismatch");
    long long span = reps_per_dim();
    for (long long r : rep)
      if (r < 0 || r >= span) throw Error("coset representative out of range");
  }

  long long p_;
  int d_;
  long long lo_, level_;
  std::map<std::vector<long long>, CycNum> values_;
};

// F(f)(z) = integral of f(y) psi(y . z) dy, computed exactly coset by coset.
// For input constant on cosets of p^level inside (p^lo O)^d the transform is
// supported on (p^(1-level) O)^d and constant on cosets of p^(1-lo).
inline StepFunction fourier_step(const StepFunction& f, const Character& psi) {
  long long p = f.prime();
  int d = f.dim();
  long long out_lo = 1 - f.level();
  long long out_level = 1 - f.box_valuation();
  StepFunction out(p, d, out_lo, out_level);
  if (f.is_zero()) return out;

  long long out_span = out.reps_per_dim();
  Rat coset_measure = qpow(to_rat(p), -f.level() * d);

  std::vector<long long> zrep(d, 0);
  while (true) {
    // z coordinate value: zrep_i * p^(out_lo)
    CycNum acc{Rat(0)};
    for (const auto& [yrep, v] : f.entries()) {
      // y . z = sum_i yrep_i p^lo * zrep_i p^out_lo
      Rat dot = 0;
      for (int i = 0; i < d; ++i)
        dot += to_rat(yrep[i]) * to_rat(zrep[i]) * qpow(to_rat(p), f.box_valuation() + out_lo);
      acc += v * psi(dot);
    }
    acc *= CycNum(coset_measure);
    if (!acc.is_zero()) out.set(zrep, acc);

    int i = 0;
    for (; i < d; ++i) {
      if (++zrep[i] < out_span) break;
      zrep[i] = 0;
    }
    if (i == d) break;
  }
  return out;
}

}  // namespace dpas::padic
