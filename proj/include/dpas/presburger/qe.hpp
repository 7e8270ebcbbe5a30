#pragma once

#include <vector>

#include "dpas/ast.hpp"
#include "dpas/error.hpp"
#include "dpas/linear.hpp"
#include "dpas/nnf.hpp"
#include "dpas/presburger/eval.hpp"

namespace dpas::presburger {

namespace detail_qe {

// rewrites negated congruences ~(a = b mod d) into a positive disjunction
inline FormulaPtr expand_negated_congruences(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Not: {
      const FormulaPtr& k = f->kids[0];
      if (k->kind == Formula::Kind::VGCong) {
        std::vector<FormulaPtr> djs;
        for (long long r = 1; r < k->d; ++r)
          djs.push_back(Formula::vg_cong(k->d, k->vga, VGTerm::add(k->vgb, VGTerm::lit(r))));
        return disj_all(djs);
      }
      return Formula::lnot(expand_negated_congruences(k));
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return Formula::binary(f->kind, expand_negated_congruences(f->kids[0]),
                             expand_negated_congruences(f->kids[1]));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return Formula::quant(f->kind, f->name, f->var_sort, expand_negated_congruences(f->kids[0]));
    default:
      return f;
  }
}

// an atom of the matrix, pre-digested against the eliminated variable
struct YAtom {
  enum class Kind { Lower, Upper, Cong, Free };
  Kind kind = Kind::Free;
  LinTerm bound;     // Lower:  bound < y'   /  Upper:  y' < bound
  long long d = 0;   // Cong:  y' = bound mod d
  FormulaPtr orig;   // Free: atom without y
};

// skeleton of the matrix with y-atoms replaced by placeholders
struct Matrix {
  std::vector<YAtom> atoms;
  FormulaPtr skeleton;  // placeholders are Pred nodes "qe#i"
};

inline FormulaPtr placeholder(size_t i) { return Formula::pred("qe#" + std::to_string(i), {}); }

// decomposes the quantifier-free body; every y-comparison is normalized to
// strict bounds on y' = delta * y, congruences to  y' = t mod d
inline Matrix build_matrix(const FormulaPtr& f, const std::string& y, long long delta) {
  Matrix mx;
  struct Build {
    Matrix& mx;
    const std::string& y;
    long long delta;

    FormulaPtr operator()(const FormulaPtr& g) {
      switch (g->kind) {
        case Formula::Kind::VGCmp: {
          LinTerm diff = lin_of(g->vga) - lin_of(g->vgb);  // diff  op  0
          long long c = diff.coeff_of(y);
          if (c == 0) return g;
          LinTerm rest = diff.without(y);
          long long m = delta / std::abs(c);
          rest *= m;
          // scaled atom: sign(c) y' + rest  op  0
          if (g->cmp == CmpOp::Eq) {
            // y' = -rest (c>0) or y' = rest (c<0): two strict bounds
            LinTerm t = rest;
            if (c > 0) t *= -1;
            YAtom lo{YAtom::Kind::Lower, t - unit(), 0, nullptr};
            YAtom hi{YAtom::Kind::Upper, t + unit(), 0, nullptr};
            mx.atoms.push_back(lo);
            FormulaPtr pl = placeholder(mx.atoms.size() - 1);
            mx.atoms.push_back(hi);
            FormulaPtr ph = placeholder(mx.atoms.size() - 1);
            return Formula::land(pl, ph);
          }
          bool strict = g->cmp == CmpOp::Lt;
          if (c > 0) {
            // y' < -rest (strict) / y' <= -rest -> y' < -rest + 1
            LinTerm t = rest;
            t *= -1;
            if (!strict) t += unit();
            mx.atoms.push_back({YAtom::Kind::Upper, t, 0, nullptr});
          } else {
            // rest < y'  (strict) / rest <= y' -> rest - 1 < y'
            LinTerm t = rest;
            if (!strict) t -= unit();
            mx.atoms.push_back({YAtom::Kind::Lower, t, 0, nullptr});
          }
          return placeholder(mx.atoms.size() - 1);
        }
        case Formula::Kind::VGCong: {
          LinTerm diff = lin_of(g->vga) - lin_of(g->vgb);
          long long c = diff.coeff_of(y);
          if (c == 0) return g;
          LinTerm rest = diff.without(y);
          long long m = delta / std::abs(c);
          rest *= m;
          // sign(c) y' + rest = 0 mod m*d  ->  y' = -sign(c) rest mod m*d
          LinTerm t = rest;
          t *= (c > 0) ? -1 : 1;
          mx.atoms.push_back({YAtom::Kind::Cong, t, m * g->d, nullptr});
          return placeholder(mx.atoms.size() - 1);
        }
        case Formula::Kind::And:
        case Formula::Kind::Or:
          return Formula::binary(g->kind, (*this)(g->kids[0]), (*this)(g->kids[1]));
        case Formula::Kind::Not:
          return Formula::lnot((*this)(g->kids[0]));
        default:
          return g;
      }
    }
    static LinTerm unit() {
      LinTerm one;
      one.constant = 1;
      return one;
    }
  } build{mx, y, delta};
  mx.skeleton = build(f);
  return mx;
}

// substitutes a candidate term for y' into the skeleton
inline FormulaPtr instantiate(const Matrix& mx, const LinTerm& cand, bool minus_infinity) {
  struct Inst {
    const Matrix& mx;
    const LinTerm& cand;
    bool minf;
    FormulaPtr operator()(const FormulaPtr& g) const {
      if (g->kind == Formula::Kind::Pred && g->name.rfind("qe#", 0) == 0) {
        const YAtom& a = mx.atoms[static_cast<size_t>(std::stoll(g->name.substr(3)))];
        switch (a.kind) {
          case YAtom::Kind::Lower:
            if (minf) return Formula::truth(false);
            return Formula::vg_cmp(CmpOp::Lt, vg_of(a.bound), vg_of(cand));
          case YAtom::Kind::Upper:
            if (minf) return Formula::truth(true);
            return Formula::vg_cmp(CmpOp::Lt, vg_of(cand), vg_of(a.bound));
          case YAtom::Kind::Cong:
            return Formula::vg_cong(a.d, vg_of(cand), vg_of(a.bound));
          default:
            return g;
        }
      }
      if (g->kids.empty()) return g;
      if (g->kind == Formula::Kind::Not) return Formula::lnot((*this)(g->kids[0]));
      return Formula::binary(g->kind, (*this)(g->kids[0]), (*this)(g->kids[1]));
    }
  } inst{mx, cand, minus_infinity};
  return inst(mx.skeleton);
}

inline bool mentions_var(const FormulaPtr& f, const std::string& y) { return free_vars(f).count(y) != 0; }

// eliminates a single existential over a quantifier-free matrix
inline FormulaPtr eliminate_one(const FormulaPtr& body, const std::string& y) {
  // NNF first (it may surface fresh negated congruences), then make those positive
  FormulaPtr matrix_in = expand_negated_congruences(nnf(body));
  if (!mentions_var(matrix_in, y)) return matrix_in;

  // delta = lcm of |coefficients| of y
  long long delta = 1;
  struct Coef {
    const std::string& y;
    long long* delta;
    void operator()(const FormulaPtr& g) {
      if (g->kind == Formula::Kind::VGCmp || g->kind == Formula::Kind::VGCong) {
        LinTerm diff = lin_of(g->vga) - lin_of(g->vgb);
        long long c = diff.coeff_of(y);
        if (c != 0) *delta = lcm_ll(*delta, std::abs(c));
      }
      for (const auto& k : g->kids) (*this)(k);
    }
  } coef{y, &delta};
  coef(matrix_in);

  Matrix mx = build_matrix(matrix_in, y, delta);
  // divisibility from the substitution y' = delta y
  long long D = delta;
  for (const auto& a : mx.atoms)
    if (a.kind == YAtom::Kind::Cong) D = lcm_ll(D, a.d);

  std::vector<LinTerm> lowers;
  for (const auto& a : mx.atoms)
    if (a.kind == YAtom::Kind::Lower) lowers.push_back(a.bound);

  // y' must also satisfy y' = 0 mod delta: add as a congruence atom applied
  // to every candidate below
  auto with_stride = [&](const FormulaPtr& g, const LinTerm& cand) {
    if (delta == 1) return g;
    LinTerm zero;
    return Formula::land(g, Formula::vg_cong(delta, vg_of(cand), vg_of(zero)));
  };

  std::vector<FormulaPtr> djs;
  for (long long j = 1; j <= D; ++j) {
    LinTerm cj;
    cj.constant = j;
    djs.push_back(with_stride(instantiate(mx, cj, true), cj));
    for (const auto& b : lowers) {
      LinTerm cand = b;
      cand += cj;
      djs.push_back(with_stride(instantiate(mx, cand, false), cand));
    }
  }
  return simplify(disj_all(djs));
}

}  // namespace detail_qe

// Cooper-style quantifier elimination for the Presburger fragment with the
// symbolic constants ord(n) carried through as uninterpreted constants. The
// result is equivalent over Z for every valuation of the ord constants
// induced by a prime.
inline FormulaPtr pres_qe(const FormulaPtr& f) {
  require_presburger(f);
  switch (f->kind) {
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return Formula::binary(f->kind, pres_qe(f->kids[0]), pres_qe(f->kids[1]));
    case Formula::Kind::Not:
      return Formula::lnot(pres_qe(f->kids[0]));
    case Formula::Kind::Exists: {
      FormulaPtr body = pres_qe(f->kids[0]);
      return detail_qe::eliminate_one(body, f->name);
    }
    case Formula::Kind::Forall: {
      FormulaPtr body = pres_qe(f->kids[0]);
      return simplify(Formula::lnot(detail_qe::eliminate_one(nnf(Formula::lnot(body)), f->name)));
    }
    default:
      return f;
  }
}

}  // namespace dpas::presburger
