#pragma once

#include <vector>

#include "dpas/ast.hpp"

namespace dpas {

enum class NormalMode { NNF, DNF };

namespace detail {

inline FormulaPtr negate_atom(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
      return Formula::truth(false);
    case Formula::Kind::False:
      return Formula::truth(true);
    case Formula::Kind::VGCmp:
      // ~(a < b) -> b <= a,  ~(a <= b) -> b < a,  ~(a = b) -> a < b \/ b < a
      if (f->cmp == CmpOp::Lt) return Formula::vg_cmp(CmpOp::Le, f->vgb, f->vga);
      if (f->cmp == CmpOp::Le) return Formula::vg_cmp(CmpOp::Lt, f->vgb, f->vga);
      return Formula::lor(Formula::vg_cmp(CmpOp::Lt, f->vga, f->vgb), Formula::vg_cmp(CmpOp::Lt, f->vgb, f->vga));
    default:
      // congruences and residue-ring atoms stay as negated literals
      return Formula::lnot(f);
  }
}

inline FormulaPtr to_nnf(const FormulaPtr& f, bool neg) {
  switch (f->kind) {
    case Formula::Kind::Not:
      return to_nnf(f->kids[0], !neg);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool is_and = (f->kind == Formula::Kind::And) != neg;
      return Formula::binary(is_and ? Formula::Kind::And : Formula::Kind::Or, to_nnf(f->kids[0], neg),
                             to_nnf(f->kids[1], neg));
    }
    case Formula::Kind::Implies:
      // a -> b == ~a \/ b
      return neg ? Formula::land(to_nnf(f->kids[0], false), to_nnf(f->kids[1], true))
                 : Formula::lor(to_nnf(f->kids[0], true), to_nnf(f->kids[1], false));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool ex = (f->kind == Formula::Kind::Exists) != neg;
      return Formula::quant(ex ? Formula::Kind::Exists : Formula::Kind::Forall, f->name, f->var_sort,
                            to_nnf(f->kids[0], neg));
    }
    default:
      return neg ? negate_atom(f) : f;
  }
}

// Distributes conjunction over disjunction below the quantifier-free level.
// Quantified subformulas are treated as opaque literals.
inline void dnf_clauses(const FormulaPtr& f, std::vector<std::vector<FormulaPtr>>& out) {
  if (f->kind == Formula::Kind::Or) {
    dnf_clauses(f->kids[0], out);
    dnf_clauses(f->kids[1], out);
    return;
  }
  if (f->kind == Formula::Kind::And) {
    std::vector<std::vector<FormulaPtr>> left, right;
    dnf_clauses(f->kids[0], left);
    dnf_clauses(f->kids[1], right);
    for (const auto& l : left)
      for (const auto& r : right) {
        std::vector<FormulaPtr> c = l;
        c.insert(c.end(), r.begin(), r.end());
        out.push_back(std::move(c));
      }
    return;
  }
  out.push_back({f});
}

}  // namespace detail

// Negation normal form; negations pushed to atoms, comparisons flipped.
inline FormulaPtr nnf(const FormulaPtr& f) { return detail::to_nnf(f, false); }

// Disjunctive normal form of the propositional skeleton (NNF first).
// Quantified subformulas are kept as blocks.
inline std::vector<std::vector<FormulaPtr>> dnf(const FormulaPtr& f) {
  std::vector<std::vector<FormulaPtr>> out;
  detail::dnf_clauses(nnf(f), out);
  return out;
}

inline FormulaPtr normal_form(const FormulaPtr& f, NormalMode mode) {
  if (mode == NormalMode::NNF) return nnf(f);
  auto clauses = dnf(f);
  std::vector<FormulaPtr> djs;
  djs.reserve(clauses.size());
  for (const auto& c : clauses) djs.push_back(conj_all(c));
  return disj_all(djs);
}

// Light simplification: boolean constant folding and ground integer atoms.
inline FormulaPtr simplify(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::VGCmp:
    case Formula::Kind::VGCong: {
      // fold when both sides are pure integer literals
      auto ground = [](const VGTermPtr& t, long long* v) {
        struct Eval {
          bool operator()(const VGTermPtr& t, long long* v) const {
            switch (t->kind) {
              case VGTerm::Kind::Int:
                *v = t->value;
                return true;
              case VGTerm::Kind::Add: {
                long long a, b;
                if (!(*this)(t->a, &a) || !(*this)(t->b, &b)) return false;
                *v = a + b;
                return true;
              }
              case VGTerm::Kind::Sub: {
                long long a, b;
                if (!(*this)(t->a, &a) || !(*this)(t->b, &b)) return false;
                *v = a - b;
                return true;
              }
              case VGTerm::Kind::Scale: {
                long long a;
                if (!(*this)(t->a, &a)) return false;
                *v = t->value * a;
                return true;
              }
              default:
                return false;
            }
          }
        };
        return Eval{}(t, v);
      };
      long long a, b;
      if (ground(f->vga, &a) && ground(f->vgb, &b)) {
        if (f->kind == Formula::Kind::VGCong) return Formula::truth(((a - b) % f->d + f->d) % f->d == 0);
        switch (f->cmp) {
          case CmpOp::Eq:
            return Formula::truth(a == b);
          case CmpOp::Lt:
            return Formula::truth(a < b);
          case CmpOp::Le:
            return Formula::truth(a <= b);
        }
      }
      return f;
    }
    case Formula::Kind::Not: {
      auto k = simplify(f->kids[0]);
      if (k->kind == Formula::Kind::True) return Formula::truth(false);
      if (k->kind == Formula::Kind::False) return Formula::truth(true);
      return Formula::lnot(k);
    }
    case Formula::Kind::And: {
      auto a = simplify(f->kids[0]), b = simplify(f->kids[1]);
      if (a->kind == Formula::Kind::False || b->kind == Formula::Kind::False) return Formula::truth(false);
      if (a->kind == Formula::Kind::True) return b;
      if (b->kind == Formula::Kind::True) return a;
      return Formula::land(a, b);
    }
    case Formula::Kind::Or: {
      auto a = simplify(f->kids[0]), b = simplify(f->kids[1]);
      if (a->kind == Formula::Kind::True || b->kind == Formula::Kind::True) return Formula::truth(true);
      if (a->kind == Formula::Kind::False) return b;
      if (b->kind == Formula::Kind::False) return a;
      return Formula::lor(a, b);
    }
    case Formula::Kind::Implies: {
      auto a = simplify(f->kids[0]), b = simplify(f->kids[1]);
      if (a->kind == Formula::Kind::False || b->kind == Formula::Kind::True) return Formula::truth(true);
      if (a->kind == Formula::Kind::True) return b;
      return Formula::implies(a, b);
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      auto k = simplify(f->kids[0]);
      if (k->kind == Formula::Kind::True || k->kind == Formula::Kind::False) return k;
      return Formula::quant(f->kind, f->name, f->var_sort, k);
    }
    default:
      return f;
  }
}

}  // namespace dpas
