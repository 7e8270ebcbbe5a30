#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dpas/ast.hpp"
#include "dpas/error.hpp"
#include "dpas/linear.hpp"
#include "dpas/nnf.hpp"
#include "dpas/numeric.hpp"
#include "dpas/padic/model.hpp"
#include "dpas/typecheck.hpp"

namespace dpas::padic {

// Measurable sets are described by formulas over derived parameters of
// valued-field variables, using the reserved naming scheme
//   ord_<x>   (sort vginf)  the valuation of x
//   ac<n>_<x> (sort rf[n])  the angular component ac_n(x)
//   res<n>_<x>(sort rf[n])  the projection res_n(x)
// Conditions must not mix distinct valued-field variables inside one atom.

struct DerivedParam {
  enum class Kind { Ord, Ac, Res };
  Kind kind;
  long long n = 0;
  std::string base;
};

inline std::optional<DerivedParam> parse_derived(const std::string& name) {
  auto under = name.find('_');
  if (under == std::string::npos || under + 1 >= name.size()) return std::nullopt;
  std::string head = name.substr(0, under), base = name.substr(under + 1);
  if (head == "ord") return DerivedParam{DerivedParam::Kind::Ord, 0, base};
  auto num_from = [&](size_t off) -> std::optional<long long> {
    if (head.size() <= off) return std::nullopt;
    long long n = 0;
    for (size_t i = off; i < head.size(); ++i) {
      if (head[i] < '0' || head[i] > '9') return std::nullopt;
      n = n * 10 + (head[i] - '0');
    }
    return n;
  };
  if (head.rfind("ac", 0) == 0) {
    if (auto n = num_from(2)) return DerivedParam{DerivedParam::Kind::Ac, *n, base};
  }
  if (head.rfind("res", 0) == 0) {
    if (auto n = num_from(3)) return DerivedParam{DerivedParam::Kind::Res, *n, base};
  }
  return std::nullopt;
}

namespace detail_measure {

inline void collect_vars(const FormulaPtr& f, std::set<std::string>& out) {
  auto fv = free_vars(f);
  out.insert(fv.begin(), fv.end());
}

// the single valued-field variable a literal talks about (empty if ground)
inline std::set<std::string> literal_bases(const FormulaPtr& lit) {
  std::set<std::string> names;
  collect_vars(lit, names);
  std::set<std::string> bases;
  for (const auto& nm : names) {
    auto d = parse_derived(nm);
    if (!d) throw NotMeasurableFragment("variable '" + nm + "' is not a derived parameter of a valued-field variable");
    bases.insert(d->base);
  }
  return bases;
}

// builds the assignment of all derived parameters of variable `base`
// appearing in `names`, at stratum ord = k with unit class u mod p^E
inline Assignment stratum_env(const std::set<std::string>& names, const std::string& base, long long k, bool at_zero,
                              const Int& u, int E, long long p) {
  Assignment env;
  for (const auto& nm : names) {
    auto d = parse_derived(nm);
    if (!d || d->base != base) continue;
    switch (d->kind) {
      case DerivedParam::Kind::Ord:
        env[nm] = at_zero ? VGVal::inf() : VGVal::fin(k);
        break;
      case DerivedParam::Kind::Ac: {
        if (at_zero) {
          env[nm] = RFElem(p, d->n, 0);
        } else {
          env[nm] = RFElem(p, d->n, u);
        }
        break;
      }
      case DerivedParam::Kind::Res: {
        if (at_zero) {
          env[nm] = RFElem(p, d->n, 0);
        } else if (k < 0) {
          env[nm] = RFElem(p, d->n, 0);  // res extends by zero outside O
        } else {
          int e = rf_exponent(d->n, p);
          env[nm] = k >= e ? RFElem(p, d->n, 0) : RFElem(p, d->n, u * ipow(p, static_cast<unsigned long>(k)));
        }
        break;
      }
    }
  }
  return env;
}

// comparison thresholds of the valuation variable in the literals
inline void ord_thresholds(const FormulaPtr& lit, const std::string& ordname, long long p, std::vector<long long>& out) {
  switch (lit->kind) {
    case Formula::Kind::VGCmp:
    case Formula::Kind::VGCong: {
      LinTerm l = lin_of(lit->vga) - lin_of(lit->vgb);
      long long c = l.coeff_of(ordname);
      if (c == 0) return;
      LinTerm rest = l.without(ordname);
      if (!rest.coeff.empty()) throw NotMeasurableFragment("valuation compared against another variable");
      long long t0 = rest.eval({}, p);
      out.push_back(-fdiv(t0, c) - 2);
      out.push_back(-fdiv(t0, c) + 2);
      return;
    }
    case Formula::Kind::Not:
      ord_thresholds(lit->kids[0], ordname, p, out);
      return;
    default:
      return;
  }
}

struct VarMeasure {
  // per single variable: exact integral of q^(a * ord x) over the literal set
  static Rat run(const std::vector<FormulaPtr>& lits, const std::string& base, long long a, long long p,
                 const Model& M) {
    std::set<std::string> names;
    for (const auto& l : lits) collect_vars(l, names);

    int E = 1;
    long long congL = 1;
    std::vector<long long> marks{0};
    for (const auto& nm : names) {
      auto d = parse_derived(nm);
      if (d && d->base == base && d->kind != DerivedParam::Kind::Ord)
        E = std::max(E, rf_exponent(d->n, p));
    }
    for (const auto& l : lits) {
      ord_thresholds(l, "ord_" + base, p, marks);
      // congruence moduli drive the tail period
      struct Cong {
        static void walk(const FormulaPtr& f, long long& L) {
          if (f->kind == Formula::Kind::VGCong) L = lcm_ll(L, f->d);
          for (const auto& k : f->kids) walk(k, L);
        }
      };
      Cong::walk(l, congL);
    }
    long long K0 = *std::min_element(marks.begin(), marks.end()) - congL - 1;
    long long K1 = *std::max_element(marks.begin(), marks.end()) + E + congL + 1;

    Int pE = ipow(p, static_cast<unsigned long>(E));
    auto count_units = [&](long long k) -> long long {
      long long cnt = 0;
      for (Int u = 1; u < pE; ++u) {
        if (u % to_int(p) == 0) continue;
        Assignment env = stratum_env(names, base, k, false, u, E, p);
        bool ok = true;
        for (const auto& l : lits)
          if (!eval_formula_model(l, env, M)) {
            ok = false;
            break;
          }
        if (ok) ++cnt;
      }
      return cnt;
    };

    // the zero element carries no Haar mass; nothing to add for ord = +inf

    // below K0 the literal truth pattern is periodic; any admissible stratum
    // there gives infinite mass (the strata measures grow as p^-k)
    for (long long k = K0 - congL; k < K0; ++k) {
      if (count_units(k) > 0) throw NotMeasurableFragment("set has infinite measure (valuation unbounded below)");
    }

    Rat total = 0;
    Rat q = to_rat(p);
    for (long long k = K0; k < K1; ++k) {
      long long cnt = count_units(k);
      if (cnt == 0) continue;
      total += to_rat(cnt) * qpow(q, a * k - k - E);
    }
    // tail: k >= K1, truth depends only on k mod congL
    for (long long r = 0; r < congL; ++r) {
      long long k0 = K1 + r;
      long long cnt = count_units(k0);
      if (cnt == 0) continue;
      long long e = a - 1;  // stratum contributes cnt * p^(e*k - E)
      if (e >= 0) throw NotMeasurableFragment("integral diverges along large valuations");
      Rat ratio = qpow(q, e * congL);
      total += to_rat(cnt) * qpow(q, e * k0 - E) / (1 - ratio);
    }
    return total;
  }
};

}  // namespace detail_measure

// Exact integral over K^d of prod_x q^(weight[x] * ord x) restricted to the
// set S; measure(S) is the weight-free case. Throws NotMeasurableFragment for
// sets of infinite measure or conditions outside the fragment.
inline Rat weighted_integral(const FormulaPtr& S, const std::vector<std::string>& vf_vars,
                             const std::map<std::string, long long>& weight, long long p) {
  Model M;
  M.p = p;
  // disjointify the clauses: C1, C2 & ~C1, C3 & ~C1 & ~C2, ...
  auto clauses = dnf(S);
  Rat total = 0;
  std::vector<FormulaPtr> negated_prior;
  for (const auto& clause : clauses) {
    FormulaPtr cur = conj_all(clause);
    for (const auto& ng : negated_prior) cur = Formula::land(cur, ng);
    // expand once more so each piece is a pure conjunction of literals
    for (const auto& piece : dnf(cur)) {
      // group literals per valued-field variable
      std::map<std::string, std::vector<FormulaPtr>> per_var;
      bool empty_piece = false;
      for (const auto& lit : piece) {
        if (lit->kind == Formula::Kind::False) empty_piece = true;
        if (lit->is_atom() && (lit->kind == Formula::Kind::True || lit->kind == Formula::Kind::False)) continue;
        auto bases = detail_measure::literal_bases(lit);
        if (bases.empty()) continue;  // ground literal
        if (bases.size() > 1) throw NotMeasurableFragment("an atom mixes distinct valued-field variables");
        per_var[*bases.begin()].push_back(lit);
      }
      if (empty_piece) continue;
      Rat piece_measure = 1;
      for (const auto& x : vf_vars) {
        long long a = 0;
        if (auto it = weight.find(x); it != weight.end()) a = it->second;
        auto lits = per_var.count(x) ? per_var[x] : std::vector<FormulaPtr>{};
        if (lits.empty()) throw NotMeasurableFragment("variable '" + x + "' is unconstrained (infinite measure)");
        piece_measure *= detail_measure::VarMeasure::run(lits, x, a, p, M);
        if (piece_measure == 0) break;
      }
      for (const auto& [x, lits] : per_var) {
        bool known = false;
        for (const auto& v : vf_vars) known |= v == x;
        if (!known) throw NotMeasurableFragment("conditions on undeclared variable '" + x + "'");
      }
      total += piece_measure;
    }
    negated_prior.push_back(Formula::lnot(cur));
  }
  return total;
}

inline Rat measure(const FormulaPtr& S, const std::vector<std::string>& vf_vars, long long p) {
  return weighted_integral(S, vf_vars, {}, p);
}

}  // namespace dpas::padic
