#pragma once

#include <map>
#include <string>

#include "dpas/ast.hpp"
#include "dpas/error.hpp"
#include "dpas/numeric.hpp"

namespace dpas {

// ---------------------------------------------------------------------------
// Integer linear combination of variables, ord(n) constants and a constant
// term. The normalized view of a VG term inside the Presburger algorithms.
// ---------------------------------------------------------------------------

struct LinTerm {
  long long constant = 0;
  std::map<std::string, long long> coeff;
  std::map<long long, long long> ordc;  // ord(n) -> coefficient

  void add_var(const std::string& v, long long k) {
    if (k == 0) return;
    auto [it, fresh] = coeff.try_emplace(v, 0);
    it->second += k;
    if (it->second == 0) coeff.erase(it);
  }
  void add_ord(long long n, long long k) {
    if (k == 0 || n == 1) return;
    auto [it, fresh] = ordc.try_emplace(n, 0);
    it->second += k;
    if (it->second == 0) ordc.erase(it);
  }

  LinTerm& operator+=(const LinTerm& o) {
    constant += o.constant;
    for (auto& [v, k] : o.coeff) add_var(v, k);
    for (auto& [n, k] : o.ordc) add_ord(n, k);
    return *this;
  }
  LinTerm& operator-=(const LinTerm& o) {
    constant -= o.constant;
    for (auto& [v, k] : o.coeff) add_var(v, -k);
    for (auto& [n, k] : o.ordc) add_ord(n, -k);
    return *this;
  }
  LinTerm& operator*=(long long s) {
    if (s == 0) return *this = LinTerm{};
    constant *= s;
    for (auto& [v, k] : coeff) k *= s;
    for (auto& [n, k] : ordc) k *= s;
    return *this;
  }
  friend LinTerm operator+(LinTerm a, const LinTerm& b) { return a += b; }
  friend LinTerm operator-(LinTerm a, const LinTerm& b) { return a -= b; }
  friend LinTerm operator*(long long s, LinTerm a) { return a *= s; }

  bool operator==(const LinTerm& o) const = default;
  bool operator<(const LinTerm& o) const {
    if (constant != o.constant) return constant < o.constant;
    if (coeff != o.coeff) return coeff < o.coeff;
    return ordc < o.ordc;
  }

  long long coeff_of(const std::string& v) const {
    auto it = coeff.find(v);
    return it == coeff.end() ? 0 : it->second;
  }
  bool is_constant() const { return coeff.empty() && ordc.empty(); }
  bool mentions(const std::string& v) const { return coeff.count(v) != 0; }

  LinTerm without(const std::string& v) const {
    LinTerm r = *this;
    r.coeff.erase(v);
    return r;
  }

  // evaluates with integer variable values and ord(n) = v_p(n) for the prime p
  long long eval(const std::map<std::string, long long>& assign, long long p) const {
    long long r = constant;
    for (auto& [v, k] : coeff) {
      auto it = assign.find(v);
      if (it == assign.end()) throw UnboundVariable("unbound variable '" + v + "'");
      r += k * it->second;
    }
    for (auto& [n, k] : ordc) r += k * padic_val(n, p);
    return r;
  }
};

inline LinTerm lin_of(const VGTermPtr& t) {
  switch (t->kind) {
    case VGTerm::Kind::Int: {
      LinTerm r;
      r.constant = t->value;
      return r;
    }
    case VGTerm::Kind::OrdConst: {
      LinTerm r;
      r.add_ord(t->value, 1);
      return r;
    }
    case VGTerm::Kind::Inf:
      throw NotPresburger("+infinity does not occur in Presburger terms");
    case VGTerm::Kind::Var: {
      LinTerm r;
      r.add_var(t->name, 1);
      return r;
    }
    case VGTerm::Kind::Add:
      return lin_of(t->a) + lin_of(t->b);
    case VGTerm::Kind::Sub:
      return lin_of(t->a) - lin_of(t->b);
    case VGTerm::Kind::Scale: {
      LinTerm r = lin_of(t->a);
      r *= t->value;
      return r;
    }
  }
  throw NotPresburger("bad term");
}

inline VGTermPtr vg_of(const LinTerm& l) {
  VGTermPtr acc;
  auto push = [&acc](long long k, VGTermPtr base) {
    if (k == 0) return;
    VGTermPtr piece = (k == 1 && base) ? base : base ? VGTerm::scale(k, base) : VGTerm::lit(k);
    if (!acc)
      acc = piece;
    else
      acc = VGTerm::add(acc, piece);
  };
  for (const auto& [v, k] : l.coeff) push(k, VGTerm::var(v));
  for (const auto& [n, k] : l.ordc) push(k, VGTerm::ord(n));
  if (l.constant != 0 || !acc) push(l.constant, nullptr);
  return acc;
}

// ---------------------------------------------------------------------------
// Rational linear map gamma(pars) + r0 + sum r_i x_i.  On its domain lattice
// all values are integers even when the r_i are fractions.
// ---------------------------------------------------------------------------

struct LinForm {
  Rat constant = 0;
  std::map<std::string, Rat> coeff;
  std::map<long long, Rat> ordc;

  LinForm() = default;
  explicit LinForm(const Rat& c) : constant(c) {}
  explicit LinForm(const LinTerm& l) {
    constant = to_rat(l.constant);
    for (auto& [v, k] : l.coeff) coeff[v] = to_rat(k);
    for (auto& [n, k] : l.ordc) ordc[n] = to_rat(k);
  }

  static LinForm var(const std::string& v) {
    LinForm f;
    f.coeff[v] = 1;
    return f;
  }
  static LinForm ordsym(long long n) {
    LinForm f;
    if (n != 1) f.ordc[n] = 1;
    return f;
  }

  void drop_zeros() {
    for (auto it = coeff.begin(); it != coeff.end();)
      it = it->second == 0 ? coeff.erase(it) : std::next(it);
    for (auto it = ordc.begin(); it != ordc.end();)
      it = it->second == 0 ? ordc.erase(it) : std::next(it);
  }

  LinForm& operator+=(const LinForm& o) {
    constant += o.constant;
    for (auto& [v, k] : o.coeff) coeff[v] += k;
    for (auto& [n, k] : o.ordc) ordc[n] += k;
    drop_zeros();
    return *this;
  }
  LinForm& operator-=(const LinForm& o) {
    constant -= o.constant;
    for (auto& [v, k] : o.coeff) coeff[v] -= k;
    for (auto& [n, k] : o.ordc) ordc[n] -= k;
    drop_zeros();
    return *this;
  }
  LinForm& operator*=(const Rat& s) {
    if (s == 0) return *this = LinForm{};
    constant *= s;
    for (auto& [v, k] : coeff) k *= s;
    for (auto& [n, k] : ordc) k *= s;
    return *this;
  }
  friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
  friend LinForm operator-(LinForm a, const LinForm& b) { return a -= b; }
  friend LinForm operator*(const Rat& s, LinForm a) { return a *= s; }

  bool operator==(const LinForm& o) const = default;
  bool operator<(const LinForm& o) const {
    if (constant != o.constant) return constant < o.constant;
    if (coeff != o.coeff) return coeff < o.coeff;
    return ordc < o.ordc;
  }

  bool is_constant() const { return coeff.empty() && ordc.empty(); }
  bool is_zero() const { return is_constant() && constant == 0; }
  bool mentions(const std::string& v) const {
    auto it = coeff.find(v);
    return it != coeff.end() && it->second != 0;
  }
  Rat coeff_of(const std::string& v) const {
    auto it = coeff.find(v);
    return it == coeff.end() ? Rat(0) : it->second;
  }

  // composition: replace variable v by the map g
  LinForm subst(const std::string& v, const LinForm& g) const {
    LinForm r = *this;
    auto it = r.coeff.find(v);
    if (it == r.coeff.end()) return r;
    Rat k = it->second;
    r.coeff.erase(it);
    LinForm scaled = g;
    scaled *= k;
    r += scaled;
    return r;
  }

  Rat eval(const std::map<std::string, Rat>& assign, long long p) const {
    Rat r = constant;
    for (auto& [v, k] : coeff) {
      auto it = assign.find(v);
      if (it == assign.end()) throw UnboundVariable("unbound variable '" + v + "'");
      r += k * it->second;
    }
    for (auto& [n, k] : ordc) r += k * to_rat(padic_val(n, p));
    return r;
  }

  std::string str() const {
    std::string s;
    auto app = [&s](const Rat& k, const std::string& base) {
      if (k == 0) return;
      if (!s.empty()) s += " + ";
      if (base.empty()) {
        s += rat_to_string(k);
      } else if (k == 1) {
        s += base;
      } else {
        s += rat_to_string(k) + "*" + base;
      }
    };
    for (auto& [v, k] : coeff) app(k, v);
    for (auto& [n, k] : ordc) app(k, "ord(" + std::to_string(n) + ")");
    if (constant != 0 || s.empty()) app(constant, "");
    return s;
  }
};

}  // namespace dpas
