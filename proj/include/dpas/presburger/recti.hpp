#pragma once

#include <map>
#include <string>
#include <vector>

#include "dpas/ast.hpp"
#include "dpas/error.hpp"
#include "dpas/linear.hpp"
#include "dpas/presburger/cells.hpp"

namespace dpas::presburger {

// Clears denominators of a rational-coefficient comparison a (op) b and
// returns the integer atom. Valid on the integer lattice where both sides
// take integer values.
inline FormulaPtr linform_atom(CmpOp op, const LinForm& a, const LinForm& b) {
  LinForm diff = a - b;
  Int den = 1;
  auto fold = [&den](const Rat& r) { den = ilcm(den, r.get_den()); };
  fold(diff.constant);
  for (auto& [v, k] : diff.coeff) fold(k);
  for (auto& [n, k] : diff.ordc) fold(k);
  LinTerm ia, ib;
  auto push = [&](const Rat& r, const std::string* var, long long ordn) {
    Rat scaled = r * Rat(den);
    long long k = to_ll(scaled.get_num());
    if (var)
      ia.add_var(*var, k);
    else if (ordn)
      ia.add_ord(ordn, k);
    else
      ia.constant += k;
  };
  push(diff.constant, nullptr, 0);
  for (auto& [v, k] : diff.coeff) push(k, &v, 0);
  for (auto& [n, k] : diff.ordc) push(k, nullptr, n);
  return Formula::vg_cmp(op, vg_of(ia), vg_of(ib));
}

// substitutes variables through a map of linear forms
inline LinForm subst_all(const LinForm& f, const std::map<std::string, LinForm>& env) {
  LinForm r = f;
  for (const auto& [v, g] : env) r = r.subst(v, g);
  return r;
}

// One piece of a rectilinearization: on the region `part` (in the original
// coordinates), the map rho sends the fiber bijectively onto
// Lambda x N^ell, where Lambda is carved out by `lambda` over the bounded
// coordinates and the parameters.
struct RectiPiece {
  FormulaPtr part;
  std::map<std::string, LinForm> rho;      // new coordinate -> form in original coordinates
  std::map<std::string, LinForm> rho_inv;  // original coordinate -> form in new coordinates
  FormulaPtr lambda;
  std::vector<std::string> bounded;      // new coordinate names carving Lambda
  std::vector<std::string> free_coords;  // new coordinate names ranging over N
  int ell() const { return static_cast<int>(free_coords.size()); }
};

namespace detail_recti {

struct Chain {
  FormulaPtr param_guard;                              // innermost guard: parameters only
  std::vector<std::pair<std::string, PresCell>> cells;  // per coordinate, outermost first
};

inline void chains_rec(const FormulaPtr& g, std::vector<std::string> coords, std::vector<Chain>& out) {
  if (coords.empty()) {
    out.push_back({g, {}});
    return;
  }
  std::string y = coords.back();
  coords.pop_back();
  for (const auto& cell : pres_cells(g, y)) {
    // a cell with no bounds at all splits into two half-infinite ones
    std::vector<PresCell> variants;
    if (!cell.lower && !cell.upper) {
      PresCell up = cell, down = cell;
      LinTerm anchor;
      anchor.constant = cell.c * cell.r;
      up.lower = anchor;
      LinTerm anchor2;
      anchor2.constant = cell.c * (cell.r - cell.l);
      down.upper = anchor2;
      variants = {up, down};
    } else {
      variants = {cell};
    }
    for (const auto& v : variants) {
      size_t before = out.size();
      chains_rec(v.guard ? v.guard : Formula::truth(true), coords, out);
      for (size_t i = before; i < out.size(); ++i) out[i].cells.push_back({y, v});
    }
  }
}

}  // namespace detail_recti

// Partitions the solution set of X (over the listed value-group coordinates;
// every other free variable is a parameter) into pieces each in linear
// bijection with Lambda x N^ell.
inline std::vector<RectiPiece> rectilinearize(const FormulaPtr& X, const std::vector<std::string>& coords) {
  require_presburger(X);
  std::set<std::string> taken = all_var_names(X);
  for (const auto& c : coords) taken.insert(c);
  std::vector<detail_recti::Chain> chains;
  detail_recti::chains_rec(X, coords, chains);

  std::vector<RectiPiece> pieces;
  for (const auto& chain : chains) {
    if (chain.param_guard->kind == Formula::Kind::False) continue;
    // case splits on the bound residues produce a worklist of partial builds
    struct Build {
      RectiPiece piece;
      bool dead = false;
    };
    std::vector<Build> work(1);
    work[0].piece.part = chain.param_guard;
    work[0].piece.lambda = Formula::truth(true);

    // cells are stored outermost (last coordinate) first; process from the
    // innermost so bounds only reference already-transformed coordinates
    for (auto it = chain.cells.rbegin(); it != chain.cells.rend(); ++it) {
      const std::string& y = it->first;
      const PresCell& cell = it->second;
      long long A = cell.c * cell.l;
      std::vector<Build> next;
      std::string u = fresh_name("u_" + y, taken);
      taken.insert(u);
      for (const auto& b : work) {
        if (b.dead) continue;

        auto push_build = [&](const FormulaPtr& extra_part, const LinForm& rho_fwd, const LinForm& rho_bwd,
                              const FormulaPtr& extra_lambda, bool bounded) {
          Build nb = b;
          nb.piece.part = Formula::land(nb.piece.part, Formula::land(cell.to_formula(y), extra_part));
          nb.piece.rho[u] = rho_fwd;
          nb.piece.rho_inv[y] = rho_bwd;
          if (extra_lambda) nb.piece.lambda = Formula::land(nb.piece.lambda, extra_lambda);
          (bounded ? nb.piece.bounded : nb.piece.free_coords).push_back(u);
          next.push_back(std::move(nb));
        };

        // k parametrization: y = r + l*k, with c*y in [lower, upper]
        // kmin = ceil((lower - c r)/A), kmax = floor((upper - c r)/A)
        auto kmin_of = [&](const LinTerm& lower, long long rho_res) {
          long long s = mod_floor(rho_res - cell.c * cell.r, A);
          long long adj = mod_floor(-s, A);
          LinForm k = LinForm(lower);
          k += LinForm(to_rat(adj - cell.c * cell.r));
          k *= to_rat(1, A);
          return k;
        };
        auto kmax_of = [&](const LinTerm& upper, long long rho_res) {
          long long s = mod_floor(rho_res - cell.c * cell.r, A);
          LinForm k = LinForm(upper);
          k -= LinForm(to_rat(s + cell.c * cell.r));
          k *= to_rat(1, A);
          return k;
        };
        auto residue_guard = [&](const LinTerm& t, long long rho_res) {
          LinTerm rr;
          rr.constant = rho_res;
          return Formula::vg_cong(A, vg_of(t), vg_of(rr));
        };

        // the original-space linear form (y - r)/l as a LinForm
        LinForm korig = LinForm::var(y);
        korig -= LinForm(to_rat(cell.r));
        korig *= to_rat(1, cell.l);

        if (cell.lower && cell.upper) {
          for (long long r1 = 0; r1 < A; ++r1) {
            for (long long r2 = 0; r2 < A; ++r2) {
              LinForm kmin = kmin_of(*cell.lower, r1), kmax = kmax_of(*cell.upper, r2);
              // substitute already-transformed originals so the width lives in new coordinates
              LinForm kmin_new = subst_all(kmin, b.piece.rho_inv);
              LinForm kmax_new = subst_all(kmax, b.piece.rho_inv);
              LinForm width = kmax_new - kmin_new;
              for (const auto& fc : b.piece.free_coords)
                if (width.mentions(fc))
                  throw NotPresburger("bounded range depends on an unbounded coordinate; not rectilinear");
              LinForm fwd = korig - kmin;  // over original coordinates
              LinForm bwd = LinForm::var(u) + kmin_new;
              bwd *= to_rat(cell.l);
              bwd += LinForm(to_rat(cell.r));
              FormulaPtr lam = Formula::land(linform_atom(CmpOp::Le, LinForm(Rat(0)), LinForm::var(u)),
                                             linform_atom(CmpOp::Le, LinForm::var(u), width));
              FormulaPtr guard = Formula::land(residue_guard(*cell.lower, r1), residue_guard(*cell.upper, r2));
              push_build(guard, fwd, bwd, lam, true);
            }
          }
        } else if (cell.lower) {
          for (long long r1 = 0; r1 < A; ++r1) {
            LinForm kmin = kmin_of(*cell.lower, r1);
            LinForm kmin_new = subst_all(kmin, b.piece.rho_inv);
            LinForm fwd = korig - kmin;
            LinForm bwd = LinForm::var(u) + kmin_new;
            bwd *= to_rat(cell.l);
            bwd += LinForm(to_rat(cell.r));
            push_build(residue_guard(*cell.lower, r1), fwd, bwd, nullptr, false);
          }
        } else {
          for (long long r2 = 0; r2 < A; ++r2) {
            LinForm kmax = kmax_of(*cell.upper, r2);
            LinForm kmax_new = subst_all(kmax, b.piece.rho_inv);
            LinForm fwd = kmax - korig;  // reversed orientation onto N
            LinForm bwd = kmax_new - LinForm::var(u);
            bwd *= to_rat(cell.l);
            bwd += LinForm(to_rat(cell.r));
            push_build(residue_guard(*cell.upper, r2), fwd, bwd, nullptr, false);
          }
        }
      }
      work = std::move(next);
    }

    for (auto& b : work) {
      if (b.dead) continue;
      b.piece.part = simplify(b.piece.part);
      if (b.piece.part->kind == Formula::Kind::False) continue;
      b.piece.lambda = simplify(b.piece.lambda);
      pieces.push_back(std::move(b.piece));
    }
  }
  return pieces;
}

}  // namespace dpas::presburger
