#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dpas/error.hpp"

namespace dpas {

// ---------------------------------------------------------------------------
// Sorts
// ---------------------------------------------------------------------------

enum class SortKind { VG, VGInf, RF, Bool };

struct Sort {
  SortKind kind = SortKind::VG;
  int n = 0;  // modulus tag for RF sorts, n >= 1

  static Sort vg() { return {SortKind::VG, 0}; }
  static Sort vginf() { return {SortKind::VGInf, 0}; }
  static Sort rf(int n) {
    if (n < 1) throw SortError("RF sort needs n >= 1");
    return {SortKind::RF, n};
  }

  bool is_vg_like() const { return kind == SortKind::VG || kind == SortKind::VGInf; }
  bool operator==(const Sort& o) const { return kind == o.kind && n == o.n; }
  bool operator!=(const Sort& o) const { return !(*this == o); }
  bool operator<(const Sort& o) const { return kind != o.kind ? kind < o.kind : n < o.n; }

  std::string str() const {
    switch (kind) {
      case SortKind::VG: return "vg";
      case SortKind::VGInf: return "vginf";
      case SortKind::RF: return "rf[" + std::to_string(n) + "]";
      case SortKind::Bool: return "bool";
    }
    return "?";
  }
};

using SortContext = std::map<std::string, Sort>;

// ---------------------------------------------------------------------------
// Value-group terms: linear expressions over variables, integer literals and
// the symbolic constants ord(n), plus the VGInf constant +oo.
// ---------------------------------------------------------------------------

struct VGTerm;
using VGTermPtr = std::shared_ptr<const VGTerm>;

struct VGTerm {
  enum class Kind { Int, OrdConst, Inf, Var, Add, Sub, Scale };

  Kind kind;
  long long value = 0;  // Int payload, OrdConst n, Scale factor
  std::string name;     // Var payload
  VGTermPtr a, b;

  static VGTermPtr lit(long long v) {
    auto t = std::make_shared<VGTerm>();
    t->kind = Kind::Int;
    t->value = v;
    return t;
  }
  static VGTermPtr ord(long long n) {
    if (n < 1) throw SortError("ord(n) needs n >= 1");
    if (n == 1) return lit(0);  // ord(1) = 0 in every model
    auto t = std::make_shared<VGTerm>();
    t->kind = Kind::OrdConst;
    t->value = n;
    return t;
  }
  static VGTermPtr inf() {
    auto t = std::make_shared<VGTerm>();
    t->kind = Kind::Inf;
    return t;
  }
  static VGTermPtr var(std::string name) {
    auto t = std::make_shared<VGTerm>();
    t->kind = Kind::Var;
    t->name = std::move(name);
    return t;
  }
  static VGTermPtr add(VGTermPtr x, VGTermPtr y) {
    auto t = std::make_shared<VGTerm>();
    t->kind = Kind::Add;
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
  }
  static VGTermPtr sub(VGTermPtr x, VGTermPtr y) {
    auto t = std::make_shared<VGTerm>();
    t->kind = Kind::Sub;
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
  }
  static VGTermPtr scale(long long k, VGTermPtr x) {
    auto t = std::make_shared<VGTerm>();
    t->kind = Kind::Scale;
    t->value = k;
    t->a = std::move(x);
    return t;
  }
};

// ---------------------------------------------------------------------------
// Residue-ring terms.
//
// Besides the ring operations, res/cross maps and literals, a term may apply
// one of a fixed family of residue-ring function symbols whose semantics are
// supplied by the model (the toolkit's quantifier elimination emits them):
//   RootRes[a,m,n](t)  -- a-th root inside A_m, then res_{m,n}
//   Combine[b,v,n](u,w) -- decodes exponents gu, gw of u, w along the cross
//                          lattice and returns cross_n(b*gu + gw - v)
// ---------------------------------------------------------------------------

struct RFTerm;
using RFTermPtr = std::shared_ptr<const RFTerm>;

enum class RFBuiltin { RootRes, Combine };

struct RFTerm {
  enum class Kind { Var, Lit, Add, Sub, Mul, Res, Cross, Builtin };

  Kind kind;
  std::string name;           // Var
  long long value = 0;        // Lit payload
  int n = 0;                  // sort tag: Lit/Cross/Res target/Builtin result
  int m = 0;                  // Res source
  RFBuiltin op{};             // Builtin
  std::vector<long long> ints;  // Builtin parameters
  std::vector<RFTermPtr> args;
  VGTermPtr vg;  // Cross argument

  static RFTermPtr var(std::string name) {
    auto t = std::make_shared<RFTerm>();
    t->kind = Kind::Var;
    t->name = std::move(name);
    return t;
  }
  static RFTermPtr lit(long long v, int n) {
    auto t = std::make_shared<RFTerm>();
    t->kind = Kind::Lit;
    t->value = v;
    t->n = n;
    return t;
  }
  static RFTermPtr binop(Kind k, RFTermPtr x, RFTermPtr y) {
    auto t = std::make_shared<RFTerm>();
    t->kind = k;
    t->args = {std::move(x), std::move(y)};
    return t;
  }
  static RFTermPtr add(RFTermPtr x, RFTermPtr y) { return binop(Kind::Add, std::move(x), std::move(y)); }
  static RFTermPtr sub(RFTermPtr x, RFTermPtr y) { return binop(Kind::Sub, std::move(x), std::move(y)); }
  static RFTermPtr mul(RFTermPtr x, RFTermPtr y) { return binop(Kind::Mul, std::move(x), std::move(y)); }
  static RFTermPtr res(int m, int n, RFTermPtr x) {
    if (n < 1 || m < 1 || m % n != 0) throw SortError("res[m->n] needs n | m");
    auto t = std::make_shared<RFTerm>();
    t->kind = Kind::Res;
    t->m = m;
    t->n = n;
    t->args = {std::move(x)};
    return t;
  }
  static RFTermPtr cross(int n, VGTermPtr x) {
    if (n < 1) throw SortError("cross[n] needs n >= 1");
    auto t = std::make_shared<RFTerm>();
    t->kind = Kind::Cross;
    t->n = n;
    t->vg = std::move(x);
    return t;
  }
  static RFTermPtr builtin(RFBuiltin op, std::vector<long long> ints, std::vector<RFTermPtr> args, int result_n) {
    auto t = std::make_shared<RFTerm>();
    t->kind = Kind::Builtin;
    t->op = op;
    t->ints = std::move(ints);
    t->args = std::move(args);
    t->n = result_n;
    return t;
  }
};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

enum class CmpOp { Eq, Lt, Le };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    True,
    False,
    VGCmp,     // a op b over VG terms
    VGCong,    // a = b mod d, d >= 2
    RFEq,      // ra = rb, equal RF sorts
    AMem,      // A[n](ra)
    Pred,      // named residue-ring predicate Phi.name(args)
    CellCond,  // builtin predicate: decoded cell membership (see vgqe)
    Not,
    And,
    Or,
    Implies,
    Exists,
    Forall
  };

  Kind kind;
  CmpOp cmp{};
  long long d = 0;           // congruence modulus
  int n = 0;                 // AMem modulus tag
  VGTermPtr vga, vgb;        // VGCmp / VGCong operands
  std::vector<RFTermPtr> rfs;  // RFEq operands / predicate args
  std::string name;          // Pred name / quantified variable
  Sort var_sort;             // quantifier variable sort
  std::vector<long long> ints;  // CellCond parameters (c, l, r, n)
  std::vector<FormulaPtr> kids;

  static FormulaPtr truth(bool b) {
    auto f = std::make_shared<Formula>();
    f->kind = b ? Kind::True : Kind::False;
    return f;
  }
  static FormulaPtr vg_cmp(CmpOp op, VGTermPtr a, VGTermPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::VGCmp;
    f->cmp = op;
    f->vga = std::move(a);
    f->vgb = std::move(b);
    return f;
  }
  static FormulaPtr vg_cong(long long d, VGTermPtr a, VGTermPtr b) {
    if (d < 2) throw SortError("congruence modulus must be >= 2");
    auto f = std::make_shared<Formula>();
    f->kind = Kind::VGCong;
    f->d = d;
    f->vga = std::move(a);
    f->vgb = std::move(b);
    return f;
  }
  static FormulaPtr rf_eq(RFTermPtr a, RFTermPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::RFEq;
    f->rfs = {std::move(a), std::move(b)};
    return f;
  }
  static FormulaPtr a_mem(int n, RFTermPtr a) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::AMem;
    f->n = n;
    f->rfs = {std::move(a)};
    return f;
  }
  static FormulaPtr pred(std::string name, std::vector<RFTermPtr> args) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Pred;
    f->name = std::move(name);
    f->rfs = std::move(args);
    return f;
  }
  static FormulaPtr cell_cond(std::vector<long long> params, std::vector<RFTermPtr> args) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::CellCond;
    f->ints = std::move(params);
    f->rfs = std::move(args);
    return f;
  }
  static FormulaPtr lnot(FormulaPtr g) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Not;
    f->kids = {std::move(g)};
    return f;
  }
  static FormulaPtr binary(Kind k, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->kids = {std::move(a), std::move(b)};
    return f;
  }
  static FormulaPtr land(FormulaPtr a, FormulaPtr b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return binary(Kind::Or, std::move(a), std::move(b)); }
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return binary(Kind::Implies, std::move(a), std::move(b)); }
  static FormulaPtr quant(Kind k, std::string var, Sort s, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->name = std::move(var);
    f->var_sort = s;
    f->kids = {std::move(body)};
    return f;
  }
  static FormulaPtr exists(std::string var, Sort s, FormulaPtr body) {
    return quant(Kind::Exists, std::move(var), s, std::move(body));
  }
  static FormulaPtr forall(std::string var, Sort s, FormulaPtr body) {
    return quant(Kind::Forall, std::move(var), s, std::move(body));
  }

  bool is_atom() const {
    switch (kind) {
      case Kind::True:
      case Kind::False:
      case Kind::VGCmp:
      case Kind::VGCong:
      case Kind::RFEq:
      case Kind::AMem:
      case Kind::Pred:
      case Kind::CellCond:
        return true;
      default:
        return false;
    }
  }
  bool is_quantifier() const { return kind == Kind::Exists || kind == Kind::Forall; }
};

// Conjunction / disjunction over a list, with the usual empty conventions.
inline FormulaPtr conj_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return Formula::truth(true);
  FormulaPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = Formula::land(acc, fs[i]);
  return acc;
}
inline FormulaPtr disj_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return Formula::truth(false);
  FormulaPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = Formula::lor(acc, fs[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

inline bool equal(const VGTermPtr& x, const VGTermPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind) return false;
  switch (x->kind) {
    case VGTerm::Kind::Int:
    case VGTerm::Kind::OrdConst:
      return x->value == y->value;
    case VGTerm::Kind::Inf:
      return true;
    case VGTerm::Kind::Var:
      return x->name == y->name;
    case VGTerm::Kind::Add:
    case VGTerm::Kind::Sub:
      return equal(x->a, y->a) && equal(x->b, y->b);
    case VGTerm::Kind::Scale:
      return x->value == y->value && equal(x->a, y->a);
  }
  return false;
}

inline bool equal(const RFTermPtr& x, const RFTermPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind) return false;
  if (x->kind == RFTerm::Kind::Lit) {
    // an unresolved literal (tag 0) matches a resolved one of any modulus
    return x->value == y->value && (x->n == 0 || y->n == 0 || x->n == y->n);
  }
  if (x->n != y->n || x->m != y->m || x->value != y->value || x->name != y->name) return false;
  if (x->kind == RFTerm::Kind::Builtin && (x->op != y->op || x->ints != y->ints)) return false;
  if (x->kind == RFTerm::Kind::Cross) return equal(x->vg, y->vg);
  if (x->args.size() != y->args.size()) return false;
  for (size_t i = 0; i < x->args.size(); ++i)
    if (!equal(x->args[i], y->args[i])) return false;
  return true;
}

inline bool equal(const FormulaPtr& x, const FormulaPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind) return false;
  if (x->cmp != y->cmp || x->d != y->d || x->n != y->n || x->name != y->name) return false;
  if (x->is_quantifier() && x->var_sort != y->var_sort) return false;
  if (x->ints != y->ints) return false;
  if (!equal(x->vga, y->vga) || !equal(x->vgb, y->vgb)) return false;
  if (x->rfs.size() != y->rfs.size() || x->kids.size() != y->kids.size()) return false;
  for (size_t i = 0; i < x->rfs.size(); ++i)
    if (!equal(x->rfs[i], y->rfs[i])) return false;
  for (size_t i = 0; i < x->kids.size(); ++i)
    if (!equal(x->kids[i], y->kids[i])) return false;
  return true;
}

}  // namespace dpas
