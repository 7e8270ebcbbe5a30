#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "dpas/error.hpp"
#include "dpas/numeric.hpp"

namespace dpas::padic {

// Elements of Q(zeta_M) for M a prime power p^k (M = 1 gives the rationals),
// stored as coefficient vectors on the basis 1, z, ..., z^(phi(M)-1) after
// reduction modulo the cyclotomic polynomial
//   Phi_{p^k}(X) = sum_{j<p} X^(j p^(k-1)).
class CycNum {
 public:
  CycNum() : p_(1), k_(0), c_(1, Rat(0)) {}
  explicit CycNum(const Rat& r) : p_(1), k_(0), c_(1, r) {}

  // zeta_{p^k}^e scaled by a rational
  static CycNum root_of_unity(long long p, int k, long long e, const Rat& scale = Rat(1)) {
    while (k > 0 && e % p == 0) {  // reduce the conductor when possible
      e /= p;
      --k;
    }
    if (k == 0) return CycNum(scale);
    CycNum z;
    z.p_ = p;
    z.k_ = k;
    long long M = ll_pow(p, k);
    e = mod_floor(e, M);
    z.c_.assign(static_cast<size_t>(phi(p, k)), Rat(0));
    std::vector<Rat> poly(static_cast<size_t>(e) + 1, Rat(0));
    poly[static_cast<size_t>(e)] = scale;
    z.c_ = reduce(p, k, poly);
    return z;
  }

  long long conductor() const { return k_ == 0 ? 1 : ll_pow(p_, k_); }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  Rat rational_value() const {
    if (!is_rational()) throw EvalError("cyclotomic number is not rational: " + str());
    return c_[0];
  }

  friend CycNum operator+(const CycNum& a, const CycNum& b) {
    auto [x, y] = align(a, b);
    for (size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x.normalized();
  }
  friend CycNum operator-(const CycNum& a, const CycNum& b) {
    auto [x, y] = align(a, b);
    for (size_t i = 0; i < y.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x.normalized();
  }
  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    auto [x, y] = align(a, b);
    if (x.k_ == 0) return CycNum(x.c_[0] * y.c_[0]);
    std::vector<Rat> prod(x.c_.size() + y.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (size_t j = 0; j < y.c_.size(); ++j) {
        if (y.c_[j] == 0) continue;
        prod[i + j] += x.c_[i] * y.c_[j];
      }
    }
    CycNum r;
    r.p_ = x.p_;
    r.k_ = x.k_;
    r.c_ = reduce(x.p_, x.k_, prod);
    return r.normalized();
  }
  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

  bool operator==(const CycNum& o) const {
    auto [x, y] = align(*this, o);
    return x.c_ == y.c_;
  }
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  // complex conjugate: zeta^e -> zeta^(M-e)
  CycNum conj() const {
    if (k_ == 0) return *this;
    long long M = ll_pow(p_, k_);
    std::vector<Rat> poly(static_cast<size_t>(M), Rat(0));
    // c_[i] zeta^i -> c_[i] zeta^(M-i)
    poly[0] = c_[0];
    for (size_t i = 1; i < c_.size(); ++i) poly[static_cast<size_t>(M - static_cast<long long>(i))] = c_[i];
    CycNum r;
    r.p_ = p_;
    r.k_ = k_;
    r.c_ = reduce(p_, k_, poly);
    return r.normalized();
  }

  // |z|^2 = z * conj(z); rational for the sums this toolkit produces checks
  CycNum norm_squared() const { return *this * conj(); }

  std::complex<double> to_complex() const {
    if (k_ == 0) return {c_[0].get_d(), 0.0};
    long long M = ll_pow(p_, k_);
    std::complex<double> r = 0;
    for (size_t i = 0; i < c_.size(); ++i) {
      double ang = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(M);
      r += c_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return r;
  }

  std::string str() const {
    if (is_rational()) return rat_to_string(c_[0]);
    std::string s = "(";
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (s.size() > 1) s += " + ";
      s += rat_to_string(c_[i]);
      if (i > 0) s += "*z" + std::to_string(conductor()) + "^" + std::to_string(i);
    }
    if (s.size() == 1) s += "0";
    return s + ")";
  }

  // serialization: (conductor, coefficient vector)
  std::vector<Rat> coefficients() const { return c_; }

 private:
  static long long ll_pow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
  }
  static long long phi(long long p, int k) { return ll_pow(p, k - 1) * (p - 1); }

  // reduction of a polynomial in zeta modulo Phi_{p^k}; exponents first taken
  // mod M = p^k, then division by the sparse monic cyclotomic polynomial
  static std::vector<Rat> reduce(long long p, int k, std::vector<Rat> poly) {
    long long M = ll_pow(p, k);
    long long deg_phi = phi(p, k);
    long long step = ll_pow(p, k - 1);
    if (static_cast<long long>(poly.size()) > M) {
      std::vector<Rat> folded(static_cast<size_t>(M), Rat(0));
      for (size_t i = 0; i < poly.size(); ++i) folded[i % static_cast<size_t>(M)] += poly[i];
      poly = std::move(folded);
    }
    if (static_cast<long long>(poly.size()) < deg_phi) poly.resize(static_cast<size_t>(deg_phi), Rat(0));
    // long division: X^deg_phi = -(X^((p-2)step) + ... + X^step + 1) ... shifted
    for (long long d = static_cast<long long>(poly.size()) - 1; d >= deg_phi; --d) {
      Rat lead = poly[static_cast<size_t>(d)];
      if (lead == 0) continue;
      poly[static_cast<size_t>(d)] = 0;
      long long base = d - deg_phi;
      for (long long j = 0; j < p - 1; ++j) poly[static_cast<size_t>(base + j * step)] -= lead;
    }
    poly.resize(static_cast<size_t>(deg_phi));
    return poly;
  }

  // brings two numbers to a common conductor
  static std::pair<CycNum, CycNum> align(const CycNum& a, const CycNum& b) {
    if (a.k_ == b.k_ && (a.k_ == 0 || a.p_ == b.p_)) return {a, b};
    if (a.k_ > 0 && b.k_ > 0 && a.p_ != b.p_)
      throw EvalError("mixing roots of unity of coprime conductors is not supported");
    const CycNum& hi = a.k_ >= b.k_ ? a : b;
    const CycNum& lo = a.k_ >= b.k_ ? b : a;
    CycNum lifted = lo.embed(hi.p_, hi.k_);
    return a.k_ >= b.k_ ? std::make_pair(hi, lifted) : std::make_pair(lifted, hi);
  }

  // embeds Q(zeta_{p^k}) into Q(zeta_{p^K}): zeta_{p^k} = zeta_{p^K}^(p^(K-k))
  CycNum embed(long long p, int K) const {
    if (k_ == 0) {
      CycNum r;
      r.p_ = p;
      r.k_ = K;
      r.c_.assign(static_cast<size_t>(phi(p, K)), Rat(0));
      r.c_[0] = c_[0];
      return r;
    }
    long long stretch = ll_pow(p, K - k_);
    std::vector<Rat> poly(static_cast<size_t>((c_.size() - 1) * stretch + 1), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) poly[i * static_cast<size_t>(stretch)] = c_[i];
    CycNum r;
    r.p_ = p;
    r.k_ = K;
    r.c_ = reduce(p, K, std::move(poly));
    return r;
  }

  CycNum& normalized() {
    if (k_ == 0) return *this;
    // drop to the rationals when all higher coefficients vanish
    if (is_rational()) {
      Rat v = c_[0];
      p_ = 1;
      k_ = 0;
      c_.assign(1, v);
    }
    return *this;
  }

  long long p_;
  int k_;
  std::vector<Rat> c_;
};

}  // namespace dpas::padic
