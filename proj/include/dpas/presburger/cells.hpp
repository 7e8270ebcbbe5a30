#pragma once

#include <optional>
#include <vector>

#include "dpas/ast.hpp"
#include "dpas/error.hpp"
#include "dpas/linear.hpp"
#include "dpas/nnf.hpp"
#include "dpas/presburger/qe.hpp"

namespace dpas::presburger {

// One cell of a parametric decomposition along a designated variable y:
//   guard(z)  /\  lower(z) <= c*y <= upper(z)  /\  y = r mod l
// with either bound optional.
struct PresCell {
  FormulaPtr guard;
  std::optional<LinTerm> lower, upper;
  long long c = 1;
  long long l = 1;
  long long r = 0;

  FormulaPtr to_formula(const std::string& y) const {
    std::vector<FormulaPtr> parts;
    if (guard && guard->kind != Formula::Kind::True) parts.push_back(guard);
    LinTerm cy;
    cy.add_var(y, c);
    if (lower) parts.push_back(Formula::vg_cmp(CmpOp::Le, vg_of(*lower), vg_of(cy)));
    if (upper) parts.push_back(Formula::vg_cmp(CmpOp::Le, vg_of(cy), vg_of(*upper)));
    if (l > 1) {
      LinTerm yy;
      yy.add_var(y, 1);
      LinTerm rr;
      rr.constant = r;
      parts.push_back(Formula::vg_cong(l, vg_of(yy), vg_of(rr)));
    }
    return conj_all(parts);
  }
};

namespace detail_cells {

inline LinTerm one() {
  LinTerm l;
  l.constant = 1;
  return l;
}

// conjunction literals, with y-free parts separated from y-atoms
struct SplitConjunct {
  std::vector<FormulaPtr> guard;
  std::vector<LinTerm> lowers;  // t <= c*y
  std::vector<LinTerm> uppers;  // c*y <= t
  std::vector<std::tuple<long long, LinTerm, long long>> congs;  // cy*y = t mod d
  long long c = 1;
};

inline SplitConjunct split_conjunct(const std::vector<FormulaPtr>& lits, const std::string& y) {
  SplitConjunct s;
  // comparisons normalized as  coef*y + rest (cmp) 0
  std::vector<std::tuple<long long, LinTerm, CmpOp>> raw;
  for (const auto& lit : lits) {
    if (lit->kind == Formula::Kind::True) continue;
    if (!free_vars(lit).count(y)) {
      s.guard.push_back(lit);
      continue;
    }
    if (lit->kind == Formula::Kind::VGCmp) {
      LinTerm diff = lin_of(lit->vga) - lin_of(lit->vgb);
      long long cy = diff.coeff_of(y);
      if (cy == 0) {
        s.guard.push_back(lit);  // y cancels syntactically
        continue;
      }
      raw.push_back({cy, diff.without(y), lit->cmp});
    } else if (lit->kind == Formula::Kind::VGCong) {
      LinTerm diff = lin_of(lit->vga) - lin_of(lit->vgb);
      long long cy = diff.coeff_of(y);
      if (cy == 0) {
        s.guard.push_back(lit);
        continue;
      }
      LinTerm rest = diff.without(y);
      rest *= -1;  // cy*y = rest mod d
      s.congs.push_back({cy, rest, lit->d});
    } else {
      throw NotPresburger("unsupported literal in cell decomposition: " + print(lit));
    }
  }
  for (const auto& [coef, rest, op] : raw) s.c = lcm_ll(s.c, std::abs(coef));
  for (const auto& [coef, rest, op] : raw) {
    long long m = s.c / std::abs(coef);
    LinTerm scaled = rest;
    scaled *= m;
    if (coef > 0) {
      // c*y <= -scaled (Le) / < (Lt) / = (both)
      LinTerm t = scaled;
      t *= -1;
      if (op == CmpOp::Lt) t -= one();
      s.uppers.push_back(t);
      if (op == CmpOp::Eq) s.lowers.push_back(t);
    } else {
      // scaled <= c*y
      LinTerm t = scaled;
      if (op == CmpOp::Lt) t += one();
      s.lowers.push_back(t);
      if (op == CmpOp::Eq) s.uppers.push_back(t);
    }
  }
  return s;
}

}  // namespace detail_cells

// Decomposes the solution set of a quantifier-free Presburger formula in the
// designated variable y, fiberwise over the remaining variables, into
// disjoint cells covering it.
inline std::vector<PresCell> pres_cells(const FormulaPtr& f, const std::string& y) {
  require_presburger(f);
  FormulaPtr base = detail_qe::expand_negated_congruences(nnf(f));

  // disjoint disjuncts: D1, D2 & ~D1, ...
  std::vector<std::vector<FormulaPtr>> conjuncts;
  {
    auto cl = dnf(base);
    std::vector<FormulaPtr> prior;
    for (const auto& c : cl) {
      FormulaPtr cur = conj_all(c);
      for (const auto& ng : prior) cur = Formula::land(cur, ng);
      for (auto& piece : dnf(detail_qe::expand_negated_congruences(nnf(cur)))) conjuncts.push_back(piece);
      prior.push_back(Formula::lnot(conj_all(c)));
    }
  }

  std::vector<PresCell> cells;
  for (const auto& lits : conjuncts) {
    bool dead = false;
    for (const auto& l : lits)
      if (l->kind == Formula::Kind::False) dead = true;
    if (dead) continue;
    auto s = detail_cells::split_conjunct(lits, y);

    // congruence system on y: enumerate residues modulo L = lcm of moduli;
    // the compatibility conditions on the parametric right-hand sides become
    // guards of the produced cells
    long long L = 1;
    for (auto& [cy, t, d] : s.congs) L = lcm_ll(L, d);

    for (long long r = 0; r < L; ++r) {
      std::vector<FormulaPtr> guard = s.guard;
      for (auto& [cy, t, d] : s.congs) {
        LinTerm lhs;
        lhs.constant = cy * r;
        guard.push_back(Formula::vg_cong(d, vg_of(lhs), vg_of(t)));
      }
      // bound selection: which lower is active (max), which upper (min)
      size_t nl = std::max<size_t>(s.lowers.size(), 1), nu = std::max<size_t>(s.uppers.size(), 1);
      for (size_t i = 0; i < nl; ++i) {
        for (size_t j = 0; j < nu; ++j) {
          std::vector<FormulaPtr> g2 = guard;
          std::optional<LinTerm> lo, up;
          if (!s.lowers.empty()) {
            lo = s.lowers[i].first;
            for (size_t i2 = 0; i2 < s.lowers.size(); ++i2) {
              if (i2 == i) continue;
              // active max, ties resolved toward the smaller index
              g2.push_back(i2 < i ? Formula::vg_cmp(CmpOp::Lt, vg_of(s.lowers[i2].first), vg_of(*lo))
                                  : Formula::vg_cmp(CmpOp::Le, vg_of(s.lowers[i2].first), vg_of(*lo)));
            }
          }
          if (!s.uppers.empty()) {
            up = s.uppers[j];
            for (size_t j2 = 0; j2 < s.uppers.size(); ++j2) {
              if (j2 == j) continue;
              g2.push_back(j2 < j ? Formula::vg_cmp(CmpOp::Lt, vg_of(*up), vg_of(s.uppers[j2]))
                                  : Formula::vg_cmp(CmpOp::Le, vg_of(*up), vg_of(s.uppers[j2])));
            }
          }
          PresCell cell;
          cell.guard = simplify(conj_all(g2));
          if (cell.guard->kind == Formula::Kind::False) continue;
          cell.lower = lo;
          cell.upper = up;
          cell.c = s.c;
          cell.l = L;
          cell.r = r;
          cells.push_back(std::move(cell));
        }
      }
    }
  }

  // deterministic order: by stride, residue, then printed bounds
  std::stable_sort(cells.begin(), cells.end(), [](const PresCell& a, const PresCell& b) {
    if (a.l != b.l) return a.l < b.l;
    if (a.r != b.r) return a.r < b.r;
    auto key = [](const PresCell& c) {
      std::string s = c.lower ? print(vg_of(*c.lower)) : "";
      s += "|" + (c.upper ? print(vg_of(*c.upper)) : "");
      return s;
    };
    return key(a) < key(b);
  });
  return cells;
}

}  // namespace dpas::presburger
