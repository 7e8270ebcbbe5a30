#pragma once

#include <set>
#include <string>

#include "dpas/ast.hpp"
#include "dpas/error.hpp"
#include "dpas/typecheck.hpp"

namespace dpas {

namespace detail {

inline VGTermPtr subst_vg_in_vg(const VGTermPtr& t, const std::string& var, const VGTermPtr& rep) {
  if (!t) return t;
  switch (t->kind) {
    case VGTerm::Kind::Var:
      return t->name == var ? rep : t;
    case VGTerm::Kind::Add:
      return VGTerm::add(subst_vg_in_vg(t->a, var, rep), subst_vg_in_vg(t->b, var, rep));
    case VGTerm::Kind::Sub:
      return VGTerm::sub(subst_vg_in_vg(t->a, var, rep), subst_vg_in_vg(t->b, var, rep));
    case VGTerm::Kind::Scale:
      return VGTerm::scale(t->value, subst_vg_in_vg(t->a, var, rep));
    default:
      return t;
  }
}

inline RFTermPtr subst_vg_in_rf(const RFTermPtr& t, const std::string& var, const VGTermPtr& rep) {
  if (!t) return t;
  switch (t->kind) {
    case RFTerm::Kind::Var:
      if (t->name == var) throw SortError("substituting a value-group term for residue-ring variable '" + var + "'");
      return t;
    case RFTerm::Kind::Cross:
      return RFTerm::cross(t->n, subst_vg_in_vg(t->vg, var, rep));
    case RFTerm::Kind::Add:
    case RFTerm::Kind::Sub:
    case RFTerm::Kind::Mul:
      return RFTerm::binop(t->kind, subst_vg_in_rf(t->args[0], var, rep), subst_vg_in_rf(t->args[1], var, rep));
    case RFTerm::Kind::Res:
      return RFTerm::res(t->m, t->n, subst_vg_in_rf(t->args[0], var, rep));
    case RFTerm::Kind::Builtin: {
      std::vector<RFTermPtr> args;
      for (const auto& a : t->args) args.push_back(subst_vg_in_rf(a, var, rep));
      return RFTerm::builtin(t->op, t->ints, std::move(args), t->n);
    }
    default:
      return t;
  }
}

inline RFTermPtr subst_rf_in_rf(const RFTermPtr& t, const std::string& var, const RFTermPtr& rep) {
  if (!t) return t;
  switch (t->kind) {
    case RFTerm::Kind::Var:
      return t->name == var ? rep : t;
    case RFTerm::Kind::Cross: {
      std::set<std::string> fv;
      free_vars(t->vg, {}, fv);
      if (fv.count(var)) throw SortError("substituting a residue-ring term for value-group variable '" + var + "'");
      return t;
    }
    case RFTerm::Kind::Add:
    case RFTerm::Kind::Sub:
    case RFTerm::Kind::Mul:
      return RFTerm::binop(t->kind, subst_rf_in_rf(t->args[0], var, rep), subst_rf_in_rf(t->args[1], var, rep));
    case RFTerm::Kind::Res:
      return RFTerm::res(t->m, t->n, subst_rf_in_rf(t->args[0], var, rep));
    case RFTerm::Kind::Builtin: {
      std::vector<RFTermPtr> args;
      for (const auto& a : t->args) args.push_back(subst_rf_in_rf(a, var, rep));
      return RFTerm::builtin(t->op, t->ints, std::move(args), t->n);
    }
    default:
      return t;
  }
}

inline FormulaPtr rename_free_var(const FormulaPtr& f, const std::string& from, const std::string& to, Sort s);

template <typename Term, typename SubVG, typename SubRF>
FormulaPtr subst_formula(const FormulaPtr& f, const std::string& var, const Term& rep, const std::set<std::string>& rep_vars,
                         SubVG sub_vg, SubRF sub_rf) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::VGCmp:
      return Formula::vg_cmp(f->cmp, sub_vg(f->vga, var, rep), sub_vg(f->vgb, var, rep));
    case Formula::Kind::VGCong:
      return Formula::vg_cong(f->d, sub_vg(f->vga, var, rep), sub_vg(f->vgb, var, rep));
    case Formula::Kind::RFEq:
      return Formula::rf_eq(sub_rf(f->rfs[0], var, rep), sub_rf(f->rfs[1], var, rep));
    case Formula::Kind::AMem:
      return Formula::a_mem(f->n, sub_rf(f->rfs[0], var, rep));
    case Formula::Kind::Pred:
    case Formula::Kind::CellCond: {
      std::vector<RFTermPtr> args;
      for (const auto& a : f->rfs) args.push_back(sub_rf(a, var, rep));
      if (f->kind == Formula::Kind::Pred) return Formula::pred(f->name, std::move(args));
      return Formula::cell_cond(f->ints, std::move(args));
    }
    case Formula::Kind::Not:
      return Formula::lnot(subst_formula(f->kids[0], var, rep, rep_vars, sub_vg, sub_rf));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return Formula::binary(f->kind, subst_formula(f->kids[0], var, rep, rep_vars, sub_vg, sub_rf),
                             subst_formula(f->kids[1], var, rep, rep_vars, sub_vg, sub_rf));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      if (f->name == var) return f;  // occurrences below are bound
      FormulaPtr body = f->kids[0];
      std::string bname = f->name;
      if (rep_vars.count(bname)) {
        // the binder would capture a variable of the replacement: rename it
        std::set<std::string> taken = all_var_names(body);
        taken.insert(rep_vars.begin(), rep_vars.end());
        taken.insert(var);
        std::string fresh = fresh_name(bname, taken);
        body = rename_free_var(body, bname, fresh, f->var_sort);
        bname = fresh;
      }
      return Formula::quant(f->kind, bname, f->var_sort,
                            subst_formula(body, var, rep, rep_vars, sub_vg, sub_rf));
    }
  }
  throw SortError("bad formula");
}

inline FormulaPtr rename_free_var(const FormulaPtr& f, const std::string& from, const std::string& to, Sort s) {
  if (s.kind == SortKind::RF) {
    auto sub_vg = [](const VGTermPtr& t, const std::string&, const RFTermPtr&) { return t; };
    return subst_formula(f, from, RFTerm::var(to), std::set<std::string>{to}, sub_vg, subst_rf_in_rf);
  }
  return subst_formula(f, from, VGTerm::var(to), std::set<std::string>{to}, subst_vg_in_vg, subst_vg_in_rf);
}

}  // namespace detail

// Capture-avoiding substitution of a value-group term for a free variable.
inline FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const VGTermPtr& term) {
  std::set<std::string> rv;
  free_vars(term, {}, rv);
  return detail::subst_formula(f, var, term, rv, detail::subst_vg_in_vg, detail::subst_vg_in_rf);
}

// Capture-avoiding substitution of a residue-ring term for a free variable.
inline FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const RFTermPtr& term) {
  std::set<std::string> rv;
  free_vars(term, {}, rv);
  auto sub_vg = [](const VGTermPtr& t, const std::string& v, const RFTermPtr&) -> VGTermPtr {
    if (!t) return t;
    std::set<std::string> fv;
    free_vars(t, {}, fv);
    if (fv.count(v)) throw SortError("substituting a residue-ring term for value-group variable '" + v + "'");
    return t;
  };
  return detail::subst_formula(f, var, term, rv, sub_vg, detail::subst_rf_in_rf);
}

}  // namespace dpas
