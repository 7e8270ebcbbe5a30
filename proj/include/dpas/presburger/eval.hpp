#pragma once

#include <map>
#include <string>
#include <vector>

#include "dpas/ast.hpp"
#include "dpas/error.hpp"
#include "dpas/linear.hpp"
#include "dpas/padic/model.hpp"
#include "dpas/printer.hpp"
#include "dpas/typecheck.hpp"

namespace dpas::presburger {

using padic::VGVal;

// Rejects anything outside the pure value-group fragment.
inline void require_presburger(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::VGCmp:
    case Formula::Kind::VGCong:
      return;
    case Formula::Kind::RFEq:
    case Formula::Kind::AMem:
    case Formula::Kind::Pred:
    case Formula::Kind::CellCond:
      throw NotPresburger("residue-ring atom in Presburger context: " + print(f));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      if (f->var_sort.kind == SortKind::RF)
        throw NotPresburger("residue-ring quantifier in Presburger context");
      [[fallthrough]];
    default:
      for (const auto& k : f->kids) require_presburger(k);
  }
}

// standard satisfaction over Z with +infinity maximal; ord(n) = v_p(n)
inline bool eval_assignment(const FormulaPtr& f, const std::map<std::string, VGVal>& sigma, long long p,
                            long long quant_lo = -64, long long quant_hi = 64) {
  padic::Model M;
  M.p = p;
  M.vg_lo = quant_lo;
  M.vg_hi = quant_hi;
  padic::Assignment env;
  for (const auto& [k, v] : sigma) env[k] = v;
  return padic::eval_formula_model(f, env, M);
}

// A window large enough to decide the quantifiers of f over assignments with
// |values| <= radius: any satisfiable bounded-quantifier instance has a
// witness within max-term-magnitude + lcm of divisors (Cooper's bound).
inline long long quantifier_window(const FormulaPtr& f, long long radius, long long p) {
  long long max_mag = 1, lcm_div = 1, max_coef = 1;
  struct Walk {
    long long p;
    long long* max_mag;
    long long* lcm_div;
    long long* max_coef;
    void term(const VGTermPtr& t) {
      LinTerm l = lin_of(t);
      long long mag = std::abs(l.constant);
      for (auto& [n, k] : l.ordc) mag += std::abs(k) * padic_val(n, p);
      *max_mag = std::max(*max_mag, mag);
      for (auto& [v, k] : l.coeff) *max_coef = std::max(*max_coef, std::abs(k));
    }
    void operator()(const FormulaPtr& g) {
      if (g->kind == Formula::Kind::VGCmp || g->kind == Formula::Kind::VGCong) {
        term(g->vga);
        term(g->vgb);
        if (g->kind == Formula::Kind::VGCong) *lcm_div = lcm_ll(*lcm_div, g->d);
      }
      for (const auto& k : g->kids) (*this)(k);
    }
  } walk{p, &max_mag, &lcm_div, &max_coef};
  walk(f);
  // one elimination round can scale divisors by the coefficient lcm; this is
  // a crude but safe over-approximation for the formula sizes in the corpus
  long long vars = static_cast<long long>(all_var_names(f).size());
  return max_coef * (radius * (vars + 1) + max_mag) + max_coef * lcm_div * max_coef + lcm_div + 2;
}

// Exactly the satisfying integer points of f in the box (inclusive bounds).
// Quantifiers are decided over a derived window that covers all witnesses
// for assignments inside the box.
inline std::vector<std::map<std::string, long long>> enumerate_box(
    const FormulaPtr& f, const std::vector<std::pair<std::string, std::pair<long long, long long>>>& box, long long p,
    unsigned long long budget = 20'000'000ULL) {
  require_presburger(f);
  unsigned long long points = 1;
  long long radius = 1;
  for (const auto& [name, range] : box) {
    if (range.second < range.first) return {};
    points *= static_cast<unsigned long long>(range.second - range.first + 1);
    if (points > budget) throw BoxTooLarge("box holds more than " + std::to_string(budget) + " points");
    radius = std::max({radius, std::abs(range.first), std::abs(range.second)});
  }
  long long w = quantifier_window(f, radius, p);

  std::vector<std::map<std::string, long long>> out;
  std::vector<long long> cur(box.size());
  for (size_t i = 0; i < box.size(); ++i) cur[i] = box[i].second.first;
  while (true) {
    std::map<std::string, VGVal> sigma;
    for (size_t i = 0; i < box.size(); ++i) sigma[box[i].first] = VGVal::fin(cur[i]);
    if (eval_assignment(f, sigma, p, -w, w)) {
      std::map<std::string, long long> pt;
      for (size_t i = 0; i < box.size(); ++i) pt[box[i].first] = cur[i];
      out.push_back(std::move(pt));
    }
    size_t i = 0;
    for (; i < box.size(); ++i) {
      if (++cur[i] <= box[i].second.second) break;
      cur[i] = box[i].second.first;
    }
    if (i == box.size()) break;
  }
  return out;
}

}  // namespace dpas::presburger
