#pragma once

// Deterministic random-formula corpora shared by the unit and acceptance
// suites.

#include <random>
#include <string>
#include <vector>

#include "dpas/ast.hpp"
#include "dpas/linear.hpp"

namespace corpus {

using namespace dpas;

inline bool has_quantifier(const FormulaPtr& f) {
  if (f->is_quantifier()) return true;
  for (const auto& k : f->kids)
    if (has_quantifier(k)) return true;
  return false;
}

inline bool has_vg_quantifier(const FormulaPtr& f) {
  if (f->is_quantifier() && f->var_sort.kind != SortKind::RF) return true;
  for (const auto& k : f->kids)
    if (has_vg_quantifier(k)) return true;
  return false;
}

// Random Presburger formulas: <= max_quant quantifiers, |coefficients| <= 5,
// free variables drawn from `frees`, optional ord(n) constants.
class PresGen {
 public:
  PresGen(unsigned seed, std::vector<std::string> frees, bool with_ord = true)
      : rng_(seed), frees_(std::move(frees)), with_ord_(with_ord) {}

  FormulaPtr formula(int max_quant) {
    quant_left_ = max_quant;
    return build(2 + static_cast<int>(rng_() % 2));
  }

 private:
  std::mt19937 rng_;
  std::vector<std::string> frees_;
  bool with_ord_;
  int quant_left_ = 0;
  int qdepth_ = 0;

  long long small(long long lo, long long hi) { return lo + static_cast<long long>(rng_() % (hi - lo + 1)); }

  VGTermPtr term(const std::vector<std::string>& scope) {
    // linear term: sum of up to 3 scaled variables plus constant (+ ord(n))
    VGTermPtr acc = VGTerm::lit(small(-5, 5));
    int parts = 1 + static_cast<int>(rng_() % 3);
    for (int i = 0; i < parts; ++i) {
      if (scope.empty()) break;
      const std::string& v = scope[rng_() % scope.size()];
      long long k = small(-5, 5);
      if (k == 0) k = 1;
      acc = VGTerm::add(acc, k == 1 ? VGTerm::var(v) : VGTerm::scale(k, VGTerm::var(v)));
    }
    if (with_ord_ && rng_() % 4 == 0) {
      long long pool[] = {2, 3, 4, 6, 8, 9};
      acc = VGTerm::add(acc, VGTerm::ord(pool[rng_() % 6]));
    }
    return acc;
  }

  FormulaPtr atom(const std::vector<std::string>& scope) {
    if (rng_() % 4 == 0) return Formula::vg_cong(2 + static_cast<long long>(rng_() % 3), term(scope), term(scope));
    CmpOp op = static_cast<CmpOp>(rng_() % 3);
    return Formula::vg_cmp(op, term(scope), term(scope));
  }

  FormulaPtr build(int depth) {
    std::vector<std::string> scope = frees_;
    for (int i = 0; i < qdepth_; ++i) scope.push_back("q" + std::to_string(i));
    if (depth == 0) return atom(scope);
    switch (rng_() % 6) {
      case 0:
        return Formula::land(build(depth - 1), build(depth - 1));
      case 1:
        return Formula::lor(build(depth - 1), build(depth - 1));
      case 2:
        return Formula::lnot(build(depth - 1));
      case 3:
      case 4:
        if (quant_left_ > 0) {
          --quant_left_;
          ++qdepth_;
          std::string qv = "q" + std::to_string(qdepth_ - 1);
          auto body = build(depth - 1);
          --qdepth_;
          return Formula::quant(rng_() % 2 ? Formula::Kind::Exists : Formula::Kind::Forall, qv, Sort::vg(), body);
        }
        return atom(scope);
      default:
        return atom(scope);
    }
  }
};

}  // namespace corpus
