#pragma once

#include <vector>

#include "dpas/error.hpp"
#include "dpas/numeric.hpp"
#include "dpas/padic/poly.hpp"

namespace dpas::padic {

// N_m = #{ x mod p^m : f(x) = 0 mod p^m } for m = 0..depth, computed by
// level-by-level refinement: a solution mod p^m reduces to one mod p^(m-1),
// so each level only explores the p^d children of the previous level's
// solutions. N_0 = 1 (the empty tuple).
struct CountResult {
  std::vector<Int> counts;     // N_0..N_depth
  unsigned long long visited = 0;  // candidate evaluations
};

inline CountResult count_roots_mod(const IntPoly& f, long long p, int depth,
                                   unsigned long long budget = 200'000'000ULL) {
  if (depth < 1) throw Error("depth must be >= 1");
  int d = f.arity();
  if (d == 0) throw Error("polynomial must mention at least one variable");
  {
    long long pm = 1;
    for (int m = 0; m < depth; ++m) {
      if (pm > (1LL << 62) / p) throw BudgetExceeded("modulus p^depth exceeds the word size");
      pm *= p;
    }
  }
  CountResult result;
  result.counts.push_back(Int(1));

  // solutions at the current level, flattened d-tuples
  std::vector<long long> sols(d, 0);  // the empty-product solution: one tuple of zeros at level 0
  size_t nsols = 1;
  long long pm_prev = 1;

  std::vector<long long> child(d), steps(d);
  for (int m = 1; m <= depth; ++m) {
    long long pm = pm_prev * p;
    std::vector<long long> next;
    size_t count = 0;
    unsigned long long combos = 1;
    for (int i = 0; i < d; ++i) combos *= static_cast<unsigned long long>(p);
    result.visited += nsols * combos;
    if (result.visited > budget)
      throw BudgetExceeded("root-counting budget exceeded at level " + std::to_string(m) + " (" +
                           std::to_string(result.visited) + " candidates)");
    next.reserve(nsols * static_cast<size_t>(p) * static_cast<size_t>(d) / 2 + 16);
    for (size_t s = 0; s < nsols; ++s) {
      const long long* base = &sols[s * static_cast<size_t>(d)];
      std::fill(steps.begin(), steps.end(), 0);
      while (true) {
        for (int i = 0; i < d; ++i) child[i] = base[i] + steps[i] * pm_prev;
        if (f.eval_mod(child, pm) == 0) {
          for (int i = 0; i < d; ++i) next.push_back(child[i]);
          ++count;
        }
        int i = 0;
        for (; i < d; ++i) {
          if (++steps[i] < p) break;
          steps[i] = 0;
        }
        if (i == d) break;
      }
    }
    result.counts.push_back(Int(static_cast<unsigned long>(count)));
    sols = std::move(next);
    nsols = count;
    pm_prev = pm;
  }
  return result;
}

}  // namespace dpas::padic
