#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "dpas/error.hpp"
#include "dpas/numeric.hpp"

namespace dpas::padic {

// Sparse multivariate polynomial with integer coefficients.
struct IntPoly {
  std::vector<std::string> vars;                       // coordinate order
  std::vector<std::pair<std::vector<int>, Int>> terms;  // exponent tuple -> coefficient

  int arity() const { return static_cast<int>(vars.size()); }

  Int eval(const std::vector<Int>& x) const {
    Int acc = 0;
    for (const auto& [exps, c] : terms) {
      Int t = c;
      for (size_t i = 0; i < exps.size(); ++i)
        for (int e = 0; e < exps[i]; ++e) t *= x[i];
      acc += t;
    }
    return acc;
  }

  // evaluation modulo M in machine words; valid while M^2 fits in __int128
  long long eval_mod(const std::vector<long long>& x, long long M) const {
    unsigned long long acc = 0;
    for (const auto& [exps, c] : terms) {
      long long cm = to_ll(c % to_int(M));
      if (cm < 0) cm += M;
      unsigned long long t = static_cast<unsigned long long>(cm);
      for (size_t i = 0; i < exps.size(); ++i)
        for (int e = 0; e < exps[i]; ++e)
          t = static_cast<unsigned long long>((static_cast<unsigned __int128>(t) * static_cast<unsigned long long>(x[i])) %
                                              static_cast<unsigned long long>(M));
      acc = (acc + t) % static_cast<unsigned long long>(M);
    }
    return static_cast<long long>(acc);
  }

  std::string str() const {
    std::string s;
    for (const auto& [exps, c] : terms) {
      std::string mono;
      for (size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars[i];
        if (exps[i] > 1) mono += "^" + std::to_string(exps[i]);
      }
      std::string piece = c.get_str();
      if (mono.size()) piece = (c == 1 ? "" : c == -1 ? "-" : c.get_str() + "*") + mono;
      if (!s.empty() && piece[0] != '-') s += "+";
      s += piece;
    }
    return s.empty() ? "0" : s;
  }
};

// Parses "x^2 - y^3", "x*y", "2*x^2+3", ... Variables are collected in order
// of first appearance.
class PolyParser {
 public:
  static IntPoly parse(const std::string& text) {
    PolyParser p(text);
    IntPoly poly;
    auto terms = p.sum(poly);
    p.skip_ws();
    if (p.i_ != p.s_.size()) throw SyntaxError("trailing input in polynomial", 1, static_cast<int>(p.i_) + 1);
    // merge duplicate monomials
    std::map<std::vector<int>, Int> merged;
    for (auto& [e, c] : terms) {
      std::vector<int> exps = e;
      exps.resize(poly.vars.size(), 0);
      merged[exps] += c;
    }
    for (auto& [e, c] : merged)
      if (c != 0) poly.terms.emplace_back(e, c);
    return poly;
  }

 private:
  explicit PolyParser(std::string s) : s_(std::move(s)) {}

  using Terms = std::vector<std::pair<std::vector<int>, Int>>;

  void skip_ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
  }
  bool eat(char c) {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Terms sum(IntPoly& poly) {
    Terms acc = product(poly, eat('-'));
    while (true) {
      skip_ws();
      if (eat('+')) {
        Terms t = product(poly, false);
        acc.insert(acc.end(), t.begin(), t.end());
      } else if (eat('-')) {
        Terms t = product(poly, true);
        acc.insert(acc.end(), t.begin(), t.end());
      } else {
        break;
      }
    }
    return acc;
  }

  Terms product(IntPoly& poly, bool negate) {
    Terms acc = factor(poly);
    while (true) {
      skip_ws();
      if (eat('*')) {
        Terms rhs = factor(poly);
        Terms prod;
        for (const auto& [ea, ca] : acc)
          for (const auto& [eb, cb] : rhs) {
            std::vector<int> e = ea;
            e.resize(std::max(ea.size(), eb.size()), 0);
            for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
            prod.emplace_back(e, ca * cb);
          }
        acc = std::move(prod);
      } else {
        break;
      }
    }
    if (negate)
      for (auto& [e, c] : acc) c = -c;
    return acc;
  }

  Terms factor(IntPoly& poly) {
    skip_ws();
    if (i_ >= s_.size()) throw SyntaxError("expected polynomial factor", 1, static_cast<int>(i_) + 1);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Terms t = sum(poly);
      if (!eat(')')) throw SyntaxError("expected ')'", 1, static_cast<int>(i_) + 1);
      return maybe_power(poly, t);
    }
    if (c >= '0' && c <= '9') {
      size_t j = i_;
      while (j < s_.size() && s_[j] >= '0' && s_[j] <= '9') ++j;
      Int v(s_.substr(i_, j - i_));
      i_ = j;
      return {{std::vector<int>{}, v}};
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      size_t j = i_;
      while (j < s_.size() && ((s_[j] >= 'a' && s_[j] <= 'z') || (s_[j] >= 'A' && s_[j] <= 'Z') ||
                               (s_[j] >= '0' && s_[j] <= '9') || s_[j] == '_'))
        ++j;
      std::string name = s_.substr(i_, j - i_);
      i_ = j;
      size_t idx = 0;
      for (; idx < poly.vars.size(); ++idx)
        if (poly.vars[idx] == name) break;
      if (idx == poly.vars.size()) poly.vars.push_back(name);
      std::vector<int> exps(idx + 1, 0);
      exps[idx] = 1;
      Terms t{{exps, Int(1)}};
      return maybe_power(poly, t);
    }
    throw SyntaxError(std::string("unexpected character '") + c + "' in polynomial", 1, static_cast<int>(i_) + 1);
  }

  Terms maybe_power(IntPoly& poly, Terms base) {
    skip_ws();
    if (!eat('^')) return base;
    skip_ws();
    size_t j = i_;
    while (j < s_.size() && s_[j] >= '0' && s_[j] <= '9') ++j;
    if (j == i_) throw SyntaxError("expected exponent", 1, static_cast<int>(i_) + 1);
    int e = std::stoi(s_.substr(i_, j - i_));
    i_ = j;
    Terms acc{{std::vector<int>{}, Int(1)}};
    for (int rep = 0; rep < e; ++rep) {
      Terms prod;
      for (const auto& [ea, ca] : acc)
        for (const auto& [eb, cb] : base) {
          std::vector<int> ex = ea;
          ex.resize(std::max(ea.size(), eb.size()), 0);
          for (size_t i = 0; i < eb.size(); ++i) ex[i] += eb[i];
          prod.emplace_back(ex, ca * cb);
        }
      acc = std::move(prod);
    }
    return acc;
  }

  std::string s_;
  size_t i_ = 0;
};

inline IntPoly parse_poly(const std::string& text) { return PolyParser::parse(text); }

}  // namespace dpas::padic
