#pragma once

#include <string>

#include "dpas/error.hpp"
#include "dpas/numeric.hpp"

namespace dpas::padic {

// A value-group value: an integer or +infinity (the valuation of 0).
struct VGVal {
  bool is_inf = false;
  long long v = 0;

  static VGVal inf() { return {true, 0}; }
  static VGVal fin(long long v) { return {false, v}; }

  bool operator==(const VGVal& o) const { return is_inf == o.is_inf && (is_inf || v == o.v); }
  bool operator!=(const VGVal& o) const { return !(*this == o); }
  // +infinity is maximal
  bool operator<(const VGVal& o) const {
    if (is_inf) return false;
    if (o.is_inf) return true;
    return v < o.v;
  }
  bool operator<=(const VGVal& o) const { return *this < o || *this == o; }

  std::string str() const { return is_inf ? "+inf" : std::to_string(v); }
};

// An element of Q_p known to finite precision: either exactly zero, or
// p^v * (u + O(p^prec)) with u a unit, or O(p^k) with nothing else known.
class PadicElement {
 public:
  enum class State { Zero, Known, BigO };

  static PadicElement zero(long long p) {
    PadicElement x;
    x.p_ = p;
    x.state_ = State::Zero;
    return x;
  }

  static PadicElement big_o(long long p, long long k) {
    PadicElement x;
    x.p_ = p;
    x.state_ = State::BigO;
    x.v_ = k;
    return x;
  }

  static PadicElement from_rational(long long p, const Rat& r, int prec) {
    if (r == 0) return zero(p);
    Int num = r.get_num(), den = r.get_den();
    long long vn = num == 0 ? 0 : padic_val(num, p);
    long long vd = padic_val(den, p);
    Int pn = ipow(p, static_cast<unsigned long>(vn));
    Int pd = ipow(p, static_cast<unsigned long>(vd));
    Int un = num / pn, ud = den / pd;
    Int mod = ipow(p, static_cast<unsigned long>(prec));
    Int uinv;
    if (mpz_invert(uinv.get_mpz_t(), ud.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw EvalError("denominator unit not invertible (bad precision)");
    Int u = ((un % mod) * uinv) % mod;
    if (u < 0) u += mod;
    PadicElement x;
    x.p_ = p;
    x.state_ = State::Known;
    x.v_ = vn - vd;
    x.unit_ = u;
    x.prec_ = prec;
    return x;
  }

  static PadicElement from_int(long long p, const Int& n, int prec) { return from_rational(p, Rat(n), prec); }

  long long prime() const { return p_; }
  State state() const { return state_; }
  int precision() const { return prec_; }

  VGVal ord() const {
    switch (state_) {
      case State::Zero:
        return VGVal::inf();
      case State::Known:
        return VGVal::fin(v_);
      case State::BigO:
        throw InsufficientPrecision("ord undetermined for O(p^" + std::to_string(v_) + ")");
    }
    throw EvalError("bad state");
  }

  // valuation is known to be at least this
  long long ord_lower_bound() const { return state_ == State::Known ? v_ : v_; }
  bool ord_at_least(long long k) const {
    if (state_ == State::Zero) return true;
    return v_ >= k;  // Known: exact valuation; BigO: the bound
  }

  // unit part modulo p^k; requires prec >= k
  Int unit_mod(int k) const {
    if (state_ != State::Known) throw EvalError("no unit part");
    if (prec_ < k)
      throw InsufficientPrecision("unit known mod p^" + std::to_string(prec_) + ", need p^" + std::to_string(k));
    return unit_ % ipow(p_, static_cast<unsigned long>(k));
  }

  PadicElement operator-() const {
    if (state_ != State::Known) return *this;
    PadicElement r = *this;
    Int mod = ipow(p_, static_cast<unsigned long>(prec_));
    r.unit_ = (mod - unit_) % mod;
    return r;
  }

  friend PadicElement operator+(const PadicElement& a, const PadicElement& b) {
    a.check_same(b);
    if (a.state_ == State::Zero) return b;
    if (b.state_ == State::Zero) return a;
    if (a.state_ == State::BigO && b.state_ == State::BigO) return big_o(a.p_, std::min(a.v_, b.v_));
    if (a.state_ == State::BigO) return b + a;
    if (b.state_ == State::BigO) {
      // a known, b = O(p^k)
      if (a.v_ < b.v_) {
        int m = static_cast<int>(std::min<long long>(a.prec_, b.v_ - a.v_));
        return make_known(a.p_, a.v_, a.unit_, m);
      }
      return big_o(a.p_, b.v_);
    }
    // both known
    const PadicElement& lo = a.v_ <= b.v_ ? a : b;
    const PadicElement& hi = a.v_ <= b.v_ ? b : a;
    long long shift = hi.v_ - lo.v_;
    long long m = std::min<long long>(lo.prec_, shift + hi.prec_);
    Int mod = ipow(lo.p_, static_cast<unsigned long>(m));
    Int w = (lo.unit_ + ipow(lo.p_, static_cast<unsigned long>(shift)) * hi.unit_) % mod;
    if (w == 0) return big_o(lo.p_, lo.v_ + m);
    long long s = padic_val(w, lo.p_);
    if (s >= m) return big_o(lo.p_, lo.v_ + m);
    Int u = w / ipow(lo.p_, static_cast<unsigned long>(s));
    return make_known(lo.p_, lo.v_ + s, u, static_cast<int>(m - s));
  }

  friend PadicElement operator-(const PadicElement& a, const PadicElement& b) { return a + (-b); }

  friend PadicElement operator*(const PadicElement& a, const PadicElement& b) {
    a.check_same(b);
    if (a.state_ == State::Zero || b.state_ == State::Zero) return zero(a.p_);
    if (a.state_ == State::BigO || b.state_ == State::BigO) {
      long long va = a.v_, vb = b.v_;  // exact or lower bound, sum is a lower bound
      return big_o(a.p_, va + vb);
    }
    int m = std::min(a.prec_, b.prec_);
    Int mod = ipow(a.p_, static_cast<unsigned long>(m));
    return make_known(a.p_, a.v_ + b.v_, (a.unit_ * b.unit_) % mod, m);
  }

  std::string str() const {
    switch (state_) {
      case State::Zero:
        return "0";
      case State::BigO:
        return "O(" + std::to_string(p_) + "^" + std::to_string(v_) + ")";
      case State::Known:
        return unit_.get_str() + "*" + std::to_string(p_) + "^" + std::to_string(v_) + " + O(" + std::to_string(p_) +
               "^" + std::to_string(v_ + prec_) + ")";
    }
    return "?";
  }

 private:
  static PadicElement make_known(long long p, long long v, Int u, int prec) {
    PadicElement x;
    x.p_ = p;
    x.state_ = State::Known;
    x.v_ = v;
    x.unit_ = std::move(u);
    x.prec_ = prec;
    return x;
  }
  void check_same(const PadicElement& o) const {
    if (p_ != o.p_) throw EvalError("mixing primes p=" + std::to_string(p_) + " and p=" + std::to_string(o.p_));
  }

  long long p_ = 2;
  State state_ = State::Zero;
  long long v_ = 0;  // valuation (Known) or O-bound (BigO)
  Int unit_ = 0;
  int prec_ = 0;
};

}  // namespace dpas::padic
