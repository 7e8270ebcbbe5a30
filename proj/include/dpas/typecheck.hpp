#pragma once

#include <set>
#include <string>

#include "dpas/ast.hpp"
#include "dpas/error.hpp"
#include "dpas/printer.hpp"

namespace dpas {

// Sort of a value-group term. Mixing VG and VGInf yields VGInf.
inline Sort sort_of(const VGTermPtr& t, const SortContext& ctx) {
  switch (t->kind) {
    case VGTerm::Kind::Int:
    case VGTerm::Kind::OrdConst:
      return Sort::vg();
    case VGTerm::Kind::Inf:
      return Sort::vginf();
    case VGTerm::Kind::Var: {
      auto it = ctx.find(t->name);
      if (it == ctx.end()) throw UnboundVariable("unbound variable '" + t->name + "'");
      if (!it->second.is_vg_like())
        throw SortError("variable '" + t->name + "' of sort " + it->second.str() + " used as a value-group term");
      return it->second;
    }
    case VGTerm::Kind::Add:
    case VGTerm::Kind::Sub: {
      Sort a = sort_of(t->a, ctx), b = sort_of(t->b, ctx);
      return (a.kind == SortKind::VGInf || b.kind == SortKind::VGInf) ? Sort::vginf() : Sort::vg();
    }
    case VGTerm::Kind::Scale:
      return sort_of(t->a, ctx);
  }
  throw SortError("bad term");
}

namespace detail {

// Rebuilds an RF term with every integer literal carrying its modulus tag.
// expected = 0 means the sort must be inferable from the term itself.
inline RFTermPtr annotate_rf(const RFTermPtr& t, int expected, const SortContext& ctx, int* result_n) {
  switch (t->kind) {
    case RFTerm::Kind::Var: {
      auto it = ctx.find(t->name);
      if (it == ctx.end()) throw UnboundVariable("unbound variable '" + t->name + "'");
      if (it->second.kind != SortKind::RF)
        throw SortError("variable '" + t->name + "' of sort " + it->second.str() + " used as a residue-ring term");
      if (expected && it->second.n != expected)
        throw SortError("variable '" + t->name + "' has sort rf[" + std::to_string(it->second.n) + "], expected rf[" +
                        std::to_string(expected) + "]");
      *result_n = it->second.n;
      return t;
    }
    case RFTerm::Kind::Lit: {
      int n = t->n ? t->n : expected;
      if (t->n && expected && t->n != expected)
        throw SortError("literal of sort rf[" + std::to_string(t->n) + "] where rf[" + std::to_string(expected) +
                        "] expected");
      *result_n = n;  // may still be 0; the caller resolves or rejects
      if (n == t->n) return t;
      return RFTerm::lit(t->value, n);
    }
    case RFTerm::Kind::Add:
    case RFTerm::Kind::Sub:
    case RFTerm::Kind::Mul: {
      int na = 0, nb = 0;
      auto a = annotate_rf(t->args[0], expected, ctx, &na);
      auto b = annotate_rf(t->args[1], expected ? expected : na, ctx, &nb);
      if (!na && nb) a = annotate_rf(t->args[0], nb, ctx, &na);
      if (na && nb && na != nb)
        throw SortError("ring operation mixes rf[" + std::to_string(na) + "] and rf[" + std::to_string(nb) + "] in " +
                        print(t));
      *result_n = na ? na : nb;
      return RFTerm::binop(t->kind, a, b);
    }
    case RFTerm::Kind::Res: {
      if (expected && t->n != expected)
        throw SortError("res[" + std::to_string(t->m) + "->" + std::to_string(t->n) + "] where rf[" +
                        std::to_string(expected) + "] expected");
      int inner = 0;
      auto a = annotate_rf(t->args[0], t->m, ctx, &inner);
      *result_n = t->n;
      return RFTerm::res(t->m, t->n, a);
    }
    case RFTerm::Kind::Cross: {
      if (expected && t->n != expected)
        throw SortError("cross[" + std::to_string(t->n) + "] where rf[" + std::to_string(expected) + "] expected");
      sort_of(t->vg, ctx);  // argument must be a value-group term
      *result_n = t->n;
      return t;
    }
    case RFTerm::Kind::Builtin: {
      if (expected && t->n != expected)
        throw SortError("builtin of sort rf[" + std::to_string(t->n) + "] where rf[" + std::to_string(expected) +
                        "] expected");
      std::vector<RFTermPtr> args;
      if (t->op == RFBuiltin::RootRes) {
        if (t->ints.size() != 3 || t->args.size() != 1) throw SortError("@rootres expects [a,m,n] and one argument");
        int inner = 0;
        args.push_back(annotate_rf(t->args[0], static_cast<int>(t->ints[1]), ctx, &inner));
      } else {
        if (t->ints.size() != 3 || t->args.size() != 2) throw SortError("@combine expects [b,v,n] and two arguments");
        for (const auto& arg : t->args) {
          int inner = 0;
          auto a = annotate_rf(arg, 0, ctx, &inner);
          if (!inner) throw SortError("cannot infer sort of builtin argument " + print(arg));
          args.push_back(a);
        }
      }
      *result_n = t->n;
      return RFTerm::builtin(t->op, t->ints, std::move(args), t->n);
    }
  }
  throw SortError("bad term");
}

}  // namespace detail

// Sort of an RF term in a context (literal-only trees have no sort of their own).
inline Sort sort_of(const RFTermPtr& t, const SortContext& ctx) {
  int n = 0;
  detail::annotate_rf(t, 0, ctx, &n);
  if (!n) throw SortError("cannot infer residue-ring sort of " + print(t));
  return Sort::rf(n);
}

// Checks sorts throughout and returns the formula with every residue-ring
// literal annotated with its modulus.
inline FormulaPtr typecheck(const FormulaPtr& f, const SortContext& ctx) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::VGCmp:
    case Formula::Kind::VGCong:
      sort_of(f->vga, ctx);
      sort_of(f->vgb, ctx);
      return f;
    case Formula::Kind::RFEq: {
      int na = 0, nb = 0;
      auto a = detail::annotate_rf(f->rfs[0], 0, ctx, &na);
      auto b = detail::annotate_rf(f->rfs[1], na, ctx, &nb);
      if (!na && nb) a = detail::annotate_rf(f->rfs[0], nb, ctx, &na);
      if (!na && !nb) throw SortError("cannot infer residue-ring sort in equation " + print(f));
      if (na != nb)
        throw SortError("equation connects rf[" + std::to_string(na) + "] and rf[" + std::to_string(nb) + "]");
      return Formula::rf_eq(a, b);
    }
    case Formula::Kind::AMem: {
      int n = 0;
      auto a = detail::annotate_rf(f->rfs[0], f->n, ctx, &n);
      return Formula::a_mem(f->n, a);
    }
    case Formula::Kind::Pred:
    case Formula::Kind::CellCond: {
      std::vector<RFTermPtr> args;
      for (const auto& arg : f->rfs) {
        int n = 0;
        auto a = detail::annotate_rf(arg, 0, ctx, &n);
        if (!n) throw SortError("cannot infer sort of predicate argument " + print(arg));
        args.push_back(a);
      }
      if (f->kind == Formula::Kind::Pred) return Formula::pred(f->name, std::move(args));
      return Formula::cell_cond(f->ints, std::move(args));
    }
    case Formula::Kind::Not:
      return Formula::lnot(typecheck(f->kids[0], ctx));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return Formula::binary(f->kind, typecheck(f->kids[0], ctx), typecheck(f->kids[1], ctx));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      SortContext inner = ctx;
      inner[f->name] = f->var_sort;
      return Formula::quant(f->kind, f->name, f->var_sort, typecheck(f->kids[0], inner));
    }
  }
  throw SortError("bad formula");
}

// names of all variables occurring free
inline void free_vars(const VGTermPtr& t, const std::set<std::string>& bound, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == VGTerm::Kind::Var) {
    if (!bound.count(t->name)) out.insert(t->name);
    return;
  }
  free_vars(t->a, bound, out);
  free_vars(t->b, bound, out);
}

inline void free_vars(const RFTermPtr& t, const std::set<std::string>& bound, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == RFTerm::Kind::Var) {
    if (!bound.count(t->name)) out.insert(t->name);
    return;
  }
  free_vars(t->vg, bound, out);
  for (const auto& a : t->args) free_vars(a, bound, out);
}

inline void free_vars(const FormulaPtr& f, std::set<std::string> bound, std::set<std::string>& out) {
  free_vars(f->vga, bound, out);
  free_vars(f->vgb, bound, out);
  for (const auto& t : f->rfs) free_vars(t, bound, out);
  if (f->is_quantifier()) bound.insert(f->name);
  for (const auto& k : f->kids) free_vars(k, bound, out);
}

inline std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  free_vars(f, {}, out);
  return out;
}

inline std::set<std::string> all_var_names(const FormulaPtr& f) {
  std::set<std::string> out;
  free_vars(f, {}, out);
  // bound names too
  struct Walk {
    std::set<std::string>& out;
    void operator()(const FormulaPtr& g) {
      if (g->is_quantifier()) out.insert(g->name);
      for (const auto& k : g->kids) (*this)(k);
    }
  } walk{out};
  walk(f);
  return out;
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  std::string cand = base + "'";
  while (taken.count(cand)) cand += "'";
  return cand;
}

}  // namespace dpas
