#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "dpas/ast.hpp"
#include "dpas/error.hpp"
#include "dpas/padic/element.hpp"
#include "dpas/padic/residue.hpp"

namespace dpas::padic {

// An assignment value: a value-group element, a residue-ring element, or an
// opaque valued-field element (coerced to ord(x) in VG positions and to
// ac_n(x) in RF positions, matching how VF-derived parameters enter formulas).
using Value = std::variant<VGVal, RFElem, PadicElement>;
using Assignment = std::map<std::string, Value>;

struct Model {
  long long p = 2;
  int precision = 8;
  // enumeration window for value-group quantifiers; formulas fed to the model
  // checker are built so that their quantifiers are decided inside the window
  long long vg_lo = -8, vg_hi = 12;
  std::map<std::string, std::function<bool(const std::vector<RFElem>&)>> preds;
};

namespace detail_model {

inline VGVal eval_vg(const VGTermPtr& t, const Assignment& env, const Model& M) {
  switch (t->kind) {
    case VGTerm::Kind::Int:
      return VGVal::fin(t->value);
    case VGTerm::Kind::OrdConst:
      return VGVal::fin(padic_val(t->value, M.p));
    case VGTerm::Kind::Inf:
      return VGVal::inf();
    case VGTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) throw UnboundVariable("unbound variable '" + t->name + "'");
      if (std::holds_alternative<VGVal>(it->second)) return std::get<VGVal>(it->second);
      if (std::holds_alternative<PadicElement>(it->second)) return std::get<PadicElement>(it->second).ord();
      throw SortError("residue-ring value used in value-group position: " + t->name);
    }
    case VGTerm::Kind::Add: {
      VGVal a = eval_vg(t->a, env, M), b = eval_vg(t->b, env, M);
      if (a.is_inf || b.is_inf) return VGVal::inf();
      return VGVal::fin(a.v + b.v);
    }
    case VGTerm::Kind::Sub: {
      VGVal a = eval_vg(t->a, env, M), b = eval_vg(t->b, env, M);
      if (b.is_inf) throw EvalError("subtracting +inf");
      if (a.is_inf) return VGVal::inf();
      return VGVal::fin(a.v - b.v);
    }
    case VGTerm::Kind::Scale: {
      VGVal a = eval_vg(t->a, env, M);
      if (a.is_inf) {
        if (t->value > 0) return VGVal::inf();
        if (t->value == 0) return VGVal::fin(0);
        throw EvalError("negative multiple of +inf");
      }
      return VGVal::fin(t->value * a.v);
    }
  }
  throw EvalError("bad term");
}

inline long long infer_ring(const RFTermPtr& t, const Assignment& env) {
  switch (t->kind) {
    case RFTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it != env.end() && std::holds_alternative<RFElem>(it->second)) return std::get<RFElem>(it->second).n;
      return 0;
    }
    case RFTerm::Kind::Lit:
      return t->n;
    case RFTerm::Kind::Add:
    case RFTerm::Kind::Sub:
    case RFTerm::Kind::Mul: {
      long long n = infer_ring(t->args[0], env);
      return n ? n : infer_ring(t->args[1], env);
    }
    case RFTerm::Kind::Res:
    case RFTerm::Kind::Cross:
    case RFTerm::Kind::Builtin:
      return t->n;
  }
  return 0;
}

inline RFElem eval_rf(const RFTermPtr& t, long long expected, const Assignment& env, const Model& M) {
  switch (t->kind) {
    case RFTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) throw UnboundVariable("unbound variable '" + t->name + "'");
      if (std::holds_alternative<RFElem>(it->second)) {
        const RFElem& e = std::get<RFElem>(it->second);
        if (expected && e.n != expected)
          throw SortError("variable '" + t->name + "' lives in rf[" + std::to_string(e.n) + "], expected rf[" +
                          std::to_string(expected) + "]");
        return e;
      }
      if (std::holds_alternative<PadicElement>(it->second)) {
        if (!expected) throw SortError("cannot coerce valued-field value without a target ring: " + t->name);
        return ac_n(expected, std::get<PadicElement>(it->second));
      }
      throw SortError("value-group value used in residue-ring position: " + t->name);
    }
    case RFTerm::Kind::Lit: {
      long long n = t->n ? t->n : expected;
      if (!n) throw SortError("untyped residue-ring literal");
      return RFElem(M.p, n, to_int(t->value));
    }
    case RFTerm::Kind::Add:
      return eval_rf(t->args[0], expected, env, M) + eval_rf(t->args[1], expected, env, M);
    case RFTerm::Kind::Sub:
      return eval_rf(t->args[0], expected, env, M) - eval_rf(t->args[1], expected, env, M);
    case RFTerm::Kind::Mul: {
      long long n = expected ? expected : infer_ring(t, env);
      return eval_rf(t->args[0], n, env, M) * eval_rf(t->args[1], n, env, M);
    }
    case RFTerm::Kind::Res:
      return res_mn(t->m, t->n, eval_rf(t->args[0], t->m, env, M));
    case RFTerm::Kind::Cross:
      return cross_n(t->n, eval_vg(t->vg, env, M), M.p);
    case RFTerm::Kind::Builtin: {
      if (t->op == RFBuiltin::RootRes) {
        // [a, m, n]: decode the exponent along the cross lattice of RF_m,
        // divide by a, rebuild in RF_n
        long long a = t->ints[0], m = t->ints[1], n = t->ints[2];
        RFElem x = eval_rf(t->args[0], m, env, M);
        auto d = cross_decode(x);
        if (!d.in_lattice) return RFElem(M.p, n, 0);
        if (!d.exponent) return RFElem(M.p, n, 0);  // exponent at least k_m, the root is past k_n
        if (*d.exponent % a != 0) return RFElem(M.p, n, 0);
        return cross_n(n, VGVal::fin(*d.exponent / a), M.p);
      }
      // Combine [b, v, n]: cross_n(b * gu + gw - v)
      long long b = t->ints[0], v = t->ints[1], n = t->ints[2];
      RFElem u = eval_rf(t->args[0], 0, env, M);
      RFElem w = eval_rf(t->args[1], 0, env, M);
      auto du = cross_decode(u), dw = cross_decode(w);
      if (!du.in_lattice || !dw.in_lattice || !du.exponent || !dw.exponent) return RFElem(M.p, n, 0);
      return cross_n(n, VGVal::fin(b * *du.exponent + *dw.exponent - v), M.p);
    }
  }
  throw EvalError("bad term");
}

}  // namespace detail_model

// Exact truth evaluation in the Q_p model. Value-group quantifiers range over
// the model's window (the corpora fed to the checker bound them there);
// residue-ring quantifiers are enumerated exhaustively.
inline bool eval_formula_model(const FormulaPtr& f, const Assignment& env, const Model& M) {
  using namespace detail_model;
  switch (f->kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::VGCmp: {
      VGVal a = eval_vg(f->vga, env, M), b = eval_vg(f->vgb, env, M);
      switch (f->cmp) {
        case CmpOp::Eq:
          return a == b;
        case CmpOp::Lt:
          return a < b;
        case CmpOp::Le:
          return a <= b;
      }
      return false;
    }
    case Formula::Kind::VGCong: {
      VGVal a = eval_vg(f->vga, env, M), b = eval_vg(f->vgb, env, M);
      if (a.is_inf || b.is_inf) throw EvalError("congruence on +inf");
      return mod_floor(a.v - b.v, f->d) == 0;
    }
    case Formula::Kind::RFEq: {
      long long n = infer_ring(f->rfs[0], env);
      if (!n) n = infer_ring(f->rfs[1], env);
      if (!n) throw EvalError("cannot infer ring of equation");
      return eval_rf(f->rfs[0], n, env, M) == eval_rf(f->rfs[1], n, env, M);
    }
    case Formula::Kind::AMem:
      return a_member(eval_rf(f->rfs[0], f->n, env, M));
    case Formula::Kind::Pred: {
      auto it = M.preds.find(f->name);
      if (it == M.preds.end()) throw EvalError("no model semantics for predicate Phi." + f->name);
      std::vector<RFElem> args;
      for (const auto& a : f->rfs) args.push_back(eval_rf(a, 0, env, M));
      return it->second(args);
    }
    case Formula::Kind::CellCond: {
      // [c, l, r, n](u, w1, w2): with y, b1, b2 the decoded exponents of u
      // along cross_n and of w1, w2 along cross_{n^c}:
      //   b1 <= c*y <= b2  and  y = r mod l
      long long c = f->ints[0], l = f->ints[1], r = f->ints[2];
      RFElem u = eval_rf(f->rfs[0], 0, env, M);
      RFElem w1 = eval_rf(f->rfs[1], 0, env, M);
      RFElem w2 = eval_rf(f->rfs[2], 0, env, M);
      auto du = cross_decode(u), d1 = cross_decode(w1), d2 = cross_decode(w2);
      if (!du.in_lattice || !du.exponent) return false;
      if (!d1.in_lattice || !d1.exponent || !d2.in_lattice || !d2.exponent) return false;
      long long y = *du.exponent;
      return *d1.exponent <= c * y && c * y <= *d2.exponent && mod_floor(y - r, l) == 0;
    }
    case Formula::Kind::Not:
      return !eval_formula_model(f->kids[0], env, M);
    case Formula::Kind::And:
      return eval_formula_model(f->kids[0], env, M) && eval_formula_model(f->kids[1], env, M);
    case Formula::Kind::Or:
      return eval_formula_model(f->kids[0], env, M) || eval_formula_model(f->kids[1], env, M);
    case Formula::Kind::Implies:
      return !eval_formula_model(f->kids[0], env, M) || eval_formula_model(f->kids[1], env, M);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool want = f->kind == Formula::Kind::Exists;
      Assignment inner = env;
      if (f->var_sort.kind == SortKind::RF) {
        long long n = f->var_sort.n;
        Int mod = ipow(M.p, static_cast<unsigned long>(rf_exponent(n, M.p)));
        for (Int v = 0; v < mod; ++v) {
          inner[f->name] = RFElem(M.p, n, v);
          if (eval_formula_model(f->kids[0], inner, M) == want) return want;
        }
        return !want;
      }
      for (long long v = M.vg_lo; v <= M.vg_hi; ++v) {
        inner[f->name] = VGVal::fin(v);
        if (eval_formula_model(f->kids[0], inner, M) == want) return want;
      }
      if (f->var_sort.kind == SortKind::VGInf) {
        inner[f->name] = VGVal::inf();
        if (eval_formula_model(f->kids[0], inner, M) == want) return want;
      }
      return !want;
    }
  }
  throw EvalError("bad formula");
}

inline RFElem eval_rf_term_model(const RFTermPtr& t, const Assignment& env, const Model& M, long long expected = 0) {
  return detail_model::eval_rf(t, expected, env, M);
}

inline VGVal eval_vg_term_model(const VGTermPtr& t, const Assignment& env, const Model& M) {
  return detail_model::eval_vg(t, env, M);
}

}  // namespace dpas::padic
