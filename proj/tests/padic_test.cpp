#include <gtest/gtest.h>

#include <random>

#include "dpas/parser.hpp"
#include "dpas/typecheck.hpp"
#include "dpas/padic/character.hpp"
#include "dpas/padic/counting.hpp"
#include "dpas/padic/cyclotomic.hpp"
#include "dpas/padic/element.hpp"
#include "dpas/padic/fourier.hpp"
#include "dpas/padic/measure.hpp"
#include "dpas/padic/model.hpp"
#include "dpas/padic/poly.hpp"
#include "dpas/padic/residue.hpp"

using namespace dpas;
using namespace dpas::padic;

TEST(PadicElement, ArithmeticTracksPrecision) {
  auto x = PadicElement::from_rational(2, Rat(8), 6);  // 8 + O(2^9)
  EXPECT_EQ(x.ord(), VGVal::fin(3));
  auto y = PadicElement::from_rational(2, Rat(-8), 6);
  auto z = x + y;  // exact cancellation of all known digits
  EXPECT_THROW(z.ord(), InsufficientPrecision);
  EXPECT_TRUE(z.ord_at_least(9));

  auto w = PadicElement::from_rational(2, Rat(3, 5), 8);
  EXPECT_EQ(w.ord(), VGVal::fin(0));
  auto u = w * PadicElement::from_rational(2, Rat(4), 8);
  EXPECT_EQ(u.ord(), VGVal::fin(2));

  EXPECT_TRUE(PadicElement::zero(5).ord().is_inf);
}

TEST(PadicElement, UltrametricInequality) {
  std::mt19937 rng(7);
  for (long long p : {2LL, 3LL, 5LL}) {
    for (int i = 0; i < 200; ++i) {
      Rat a = to_rat(static_cast<long long>(rng() % 2000) - 1000, 1 + rng() % 50);
      Rat b = to_rat(static_cast<long long>(rng() % 2000) - 1000, 1 + rng() % 50);
      if (a == 0 || b == 0 || a + b == 0) continue;
      auto xa = PadicElement::from_rational(p, a, 24);
      auto xb = PadicElement::from_rational(p, b, 24);
      auto sum = xa + xb;
      VGVal va = xa.ord(), vb = xb.ord();
      long long lower = std::min(va.v, vb.v);
      EXPECT_TRUE(sum.ord_at_least(lower));
    }
  }
}

TEST(Residue, AngularComponentExamples) {
  // p = 2: ac_4(8) = 1 in Z/8 (8 * 2^-3 = 1)
  auto x = PadicElement::from_rational(2, Rat(8), 8);
  EXPECT_EQ(ac_n(4, x), RFElem(2, 4, 1));
  EXPECT_EQ(rf_exponent(4, 2), 3);

  // cross_4(2) = 4 in Z/8
  EXPECT_EQ(cross_n(4, VGVal::fin(2), 2), RFElem(2, 4, 4));

  // A_4 = {0, 1, 2, 4} inside Z/8
  std::vector<long long> members;
  for (long long v = 0; v < 8; ++v)
    if (a_member(RFElem(2, 4, to_int(v)))) members.push_back(v);
  EXPECT_EQ(members, (std::vector<long long>{0, 1, 2, 4}));

  // ac_n(0) = 0, ord(0) = +inf
  EXPECT_EQ(ac_n(4, PadicElement::zero(2)), RFElem(2, 4, 0));
  EXPECT_TRUE(PadicElement::zero(2).ord().is_inf);
}

TEST(Residue, CompatibilityAndMultiplicativity) {
  std::mt19937 rng(99);
  for (long long p : {2LL, 3LL, 5LL}) {
    for (int i = 0; i < 500; ++i) {
      Rat a = to_rat(static_cast<long long>(rng() % 4000) - 2000, 1 + rng() % 60);
      if (a == 0) continue;
      auto x = PadicElement::from_rational(p, a, 24);
      // res_{m,n}(ac_m(x)) = ac_n(x) for n | m
      for (auto [m, n] : {std::pair<long long, long long>{8, 4}, {4, 2}, {9, 3}, {12, 6}}) {
        EXPECT_EQ(res_mn(m, n, ac_n(m, x)), ac_n(n, x));
      }
      Rat b = to_rat(static_cast<long long>(rng() % 4000) - 2000, 1 + rng() % 60);
      if (b == 0) continue;
      auto y = PadicElement::from_rational(p, b, 24);
      for (long long n : {2LL, 4LL, 9LL}) {
        EXPECT_EQ(ac_n(n, x * y), ac_n(n, x) * ac_n(n, y));
      }
    }
  }
}

TEST(Residue, CrossImageEqualsAMinusZero) {
  // image of cross_n on [0, ord(n)] equals A_n minus {0}; cross_n(g) = 0 for
  // g < 0 and g = +inf  (exhaustive for n in {2,4,8,3,9}, p in {2,3})
  for (long long p : {2LL, 3LL}) {
    for (long long n : {2LL, 4LL, 8LL, 3LL, 9LL}) {
      long long ordn = padic_val(n, p);
      std::set<Int> image;
      for (long long g = 0; g <= ordn; ++g) image.insert(cross_n(n, VGVal::fin(g), p).val);
      std::set<Int> a_nonzero;
      Int mod = ipow(p, static_cast<unsigned long>(rf_exponent(n, p)));
      for (Int v = 1; v < mod; ++v)
        if (a_member(RFElem(p, n, v))) a_nonzero.insert(v);
      EXPECT_EQ(image, a_nonzero) << "p=" << p << " n=" << n;
      EXPECT_EQ(cross_n(n, VGVal::fin(-1), p).val, 0);
      EXPECT_EQ(cross_n(n, VGVal::inf(), p).val, 0);
      // beyond ord(n) the cross map collapses to 0
      EXPECT_EQ(cross_n(n, VGVal::fin(ordn + 1), p).val, 0);
    }
  }
}

TEST(Model, EvalFormulaWithOpaqueParameters) {
  Model M;
  M.p = 2;
  SortContext ctx{{"ord_x", Sort::vginf()}, {"ac4_x", Sort::rf(4)}};
  auto f = typecheck(parse_formula("ord_x >= 0 /\\ ac4_x = 1", ctx), ctx);

  auto x = PadicElement::from_rational(2, Rat(8), 6);
  Assignment env{{"ord_x", x}, {"ac4_x", x}};
  EXPECT_TRUE(eval_formula_model(f, env, M));

  // (ord x >= 5) at x = O(2^3) -> InsufficientPrecision
  auto g = parse_formula("ord_x >= 5", ctx);
  Assignment env2{{"ord_x", PadicElement::big_o(2, 3)}};
  EXPECT_THROW(eval_formula_model(g, env2, M), InsufficientPrecision);

  // A_4(xi) at xi = 3 in Z/8 -> false
  auto h = parse_formula("A[4](xi)", {{"xi", Sort::rf(4)}});
  Assignment env3{{"xi", RFElem(2, 4, 3)}};
  EXPECT_FALSE(eval_formula_model(h, env3, M));
}

TEST(Model, QuantifiersEnumerate) {
  Model M;
  M.p = 2;
  M.vg_lo = -4;
  M.vg_hi = 8;
  // EX xi:rf[4]. xi*xi = xi /\ ~(xi = 0) /\ ~(xi = 1)  -- no idempotent except 0,1 in Z/8
  auto f = parse_formula("EX xi:rf[4]. xi*xi = xi /\\ ~(xi = 1) /\\ ~(xi = 0)");
  EXPECT_FALSE(eval_formula_model(f, {}, M));
  auto g = parse_formula("EX y:vg. y + y = z");
  EXPECT_TRUE(eval_formula_model(g, {{"z", VGVal::fin(6)}}, M));
  EXPECT_FALSE(eval_formula_model(g, {{"z", VGVal::fin(7)}}, M));
}

TEST(Measure, BallAndAnnulus) {
  // {x : ord x >= 3}, p = 2 -> 1/8
  auto ball = parse_formula("ord_x >= 3", {{"ord_x", Sort::vginf()}});
  EXPECT_EQ(measure(ball, {"x"}, 2), Rat(1, 8));

  // {x : ord x = k} -> (1 - 1/p) p^-k checked for k <= 5, p in {2,3}
  for (long long p : {2LL, 3LL}) {
    for (long long k = 0; k <= 5; ++k) {
      auto f = parse_formula("ord_x = " + std::to_string(k), {{"ord_x", Sort::vginf()}});
      Rat expect = (Rat(1) - to_rat(1, p)) * qpow(to_rat(p), -k);
      EXPECT_EQ(measure(f, {"x"}, p), expect) << "p=" << p << " k=" << k;
    }
  }
}

TEST(Measure, StratifiedGeometricTail) {
  // {x : ac_1(x) = 1, ord x >= -1, ord x = 1 mod 2}, p = 3:
  // strata k = -1, 1, 3, ... each of measure p^(-k-1) -> sum = 9/8
  SortContext ctx{{"ord_x", Sort::vginf()}, {"ac1_x", Sort::rf(1)}};
  auto f = typecheck(parse_formula("ac1_x = 1 /\\ ord_x >= -1 /\\ ord_x ≡{2} 1", ctx), ctx);
  EXPECT_EQ(measure(f, {"x"}, 3), Rat(9, 8));
}

TEST(Measure, AdditivityOnRandomSplits) {
  // measure of a disjoint union equals the sum of measures
  std::mt19937 rng(5);
  SortContext ctx{{"ord_x", Sort::vginf()}, {"ac2_x", Sort::rf(2)}};
  for (int trial = 0; trial < 20; ++trial) {
    long long p = (trial % 2) ? 2 : 3;
    long long c = rng() % 4;
    std::string base = "ord_x >= 0";
    std::string left = base + " /\\ ord_x ≡{2} " + std::to_string(c % 2);
    std::string right = base + " /\\ ~(ord_x ≡{2} " + std::to_string(c % 2) + ")";
    auto whole = typecheck(parse_formula(base, ctx), ctx);
    auto l = typecheck(parse_formula(left, ctx), ctx);
    auto r = typecheck(parse_formula(right, ctx), ctx);
    EXPECT_EQ(measure(whole, {"x"}, p), measure(l, {"x"}, p) + measure(r, {"x"}, p));
  }
}

TEST(Measure, UnboundedBelowRejected) {
  auto f = parse_formula("ord_x <= 0", {{"ord_x", Sort::vginf()}});
  EXPECT_THROW(measure(f, {"x"}, 2), NotMeasurableFragment);
}

TEST(Counting, SpecExamples) {
  auto fx = parse_poly("x");
  auto r = count_roots_mod(fx, 3, 4);
  EXPECT_EQ(r.counts, (std::vector<Int>{1, 1, 1, 1, 1}));

  auto fx2 = parse_poly("x^2");
  r = count_roots_mod(fx2, 3, 4);
  EXPECT_EQ(r.counts, (std::vector<Int>{1, 1, 3, 3, 9}));

  auto fxy = parse_poly("x*y");
  r = count_roots_mod(fxy, 2, 2);
  EXPECT_EQ(r.counts, (std::vector<Int>{1, 3, 8}));
}

TEST(Counting, MatchesBruteForceEnumeration) {
  // independent oracle: full enumeration of (Z/p^m)^d
  std::vector<std::string> polys{"x^2-y^3", "x^2+y^2", "x*y+2", "x^3-x", "x^2*y - 3*x + y^2"};
  for (long long p : {2LL, 3LL}) {
    for (const auto& s : polys) {
      auto f = parse_poly(s);
      int depth = 3;
      auto tree = count_roots_mod(f, p, depth);
      for (int m = 1; m <= depth; ++m) {
        long long pm = 1;
        for (int i = 0; i < m; ++i) pm *= p;
        long long count = 0;
        std::vector<long long> x(f.arity(), 0);
        while (true) {
          if (f.eval_mod(x, pm) == 0) ++count;
          int i = 0;
          for (; i < f.arity(); ++i) {
            if (++x[i] < pm) break;
            x[i] = 0;
          }
          if (i == f.arity()) break;
        }
        EXPECT_EQ(tree.counts[m], to_int(count)) << s << " p=" << p << " m=" << m;
      }
    }
  }
}

TEST(Counting, GrowthBoundHolds) {
  // N_m <= p^d N_{m-1}
  for (long long p : {2LL, 3LL, 5LL}) {
    auto f = parse_poly("x^2-y^3");
    auto r = count_roots_mod(f, p, 5);
    for (size_t m = 1; m < r.counts.size(); ++m) EXPECT_LE(r.counts[m], r.counts[m - 1] * to_int(p) * to_int(p));
  }
}

TEST(Counting, BudgetEnforced) {
  auto f = parse_poly("x*y");
  EXPECT_THROW(count_roots_mod(f, 7, 8, 1000), BudgetExceeded);
}

TEST(Cyclotomic, CharacterIsTrivialOnIdealNontrivialOnRing) {
  for (long long p : {2LL, 3LL, 5LL}) {
    Character psi(p);
    for (long long t = 1; t <= 6; ++t) EXPECT_EQ(psi(to_rat(p * t)), CycNum(Rat(1)));
    bool nontrivial = false;
    for (long long u = 1; u < p; ++u) nontrivial |= psi(to_rat(u)) != CycNum(Rat(1));
    EXPECT_TRUE(nontrivial) << p;
  }
}

TEST(Cyclotomic, GaussSumExamples) {
  // psi restricted to the valuation ring factors through the residue field;
  // the classical orthogonality and Gauss-sum identities hold for it exactly
  for (long long p : {3LL, 5LL, 7LL}) {
    Character psi(p);
    CycNum total = char_sum(psi, {p}, 1, [](const std::vector<long long>& x) -> Int { return to_int(x[0]); });
    EXPECT_TRUE(total.is_zero()) << p;

    CycNum gauss = char_sum(psi, {p}, 1, [](const std::vector<long long>& x) -> Int { return to_int(x[0]) * to_int(x[0]); });
    EXPECT_EQ(gauss.norm_squared(), CycNum(to_rat(p))) << p;

    EXPECT_EQ(psi(Rat(0)), CycNum(Rat(1)));
  }

  // over the full residue ring RF_p = Z/p^2 the shifted sum psi(x/p) also
  // telescopes to zero
  for (long long p : {2LL, 3LL}) {
    Character psi(p);
    CycNum total = char_sum(psi, {p * p}, p, [](const std::vector<long long>& x) -> Int { return to_int(x[0]); });
    EXPECT_TRUE(total.is_zero()) << p;
  }
}

TEST(Cyclotomic, QuadraticGaussSumExpansion) {
  // p = 3: 1 + 2 zeta_3 has |.|^2 = (1+2z)(1+2z^2) = 1+2z+2z^2+4 = 5 - 2 = 3
  Character psi(3);
  CycNum g = psi(Rat(0)) + CycNum::root_of_unity(3, 1, 1, Rat(2));
  EXPECT_EQ(g.norm_squared(), CycNum(Rat(3)));
}

TEST(Cyclotomic, ShiftClauseIndependentOfLift) {
  // psi(h + e/N) must not depend on the chosen lift e' with res_N(e') = e
  for (long long p : {2LL, 3LL}) {
    Character psi(p);
    for (long long N : {2LL, 4LL, 6LL}) {
      int k = rf_exponent(N, p);
      Int pk = ipow(p, static_cast<unsigned long>(k));
      for (Int e = 0; e < pk; ++e) {
        Rat h = to_rat(1, p);
        CycNum base = psi(h + Rat(e) / to_rat(N));
        for (int lift = 1; lift <= 3; ++lift) {
          Int ep = e + lift * pk;
          EXPECT_EQ(psi(h + Rat(ep) / to_rat(N)), base) << "p=" << p << " N=" << N;
        }
      }
    }
  }
}

TEST(Fourier, IndicatorOfValuationRing) {
  for (long long p : {2LL, 3LL}) {
    Character psi(p);
    StepFunction one_o(p, 1, 0, 1);
    for (long long r = 0; r < p; ++r) one_o.set({r}, CycNum(Rat(1)));

    auto hat = fourier_step(one_o, psi);
    // F(1_O)(z) = 1 if ord z >= 1, else 0
    EXPECT_EQ(hat.at_point({to_rat(p)}), CycNum(Rat(1)));
    EXPECT_EQ(hat.at_point({Rat(0)}), CycNum(Rat(1)));
    EXPECT_EQ(hat.at_point({Rat(1)}), CycNum(Rat(0)));
    EXPECT_EQ(hat.at_point({to_rat(1, p)}), CycNum(Rat(0)));

    // double transform: F(F(1_O)) = p^-1 1_O
    auto hat2 = fourier_step(hat, psi);
    EXPECT_EQ(hat2.at_point({Rat(0)}), CycNum(to_rat(1, p)));
    EXPECT_EQ(hat2.at_point({Rat(1)}), CycNum(to_rat(1, p)));
    EXPECT_EQ(hat2.at_point({to_rat(p - 1)}), CycNum(to_rat(1, p)));
    EXPECT_EQ(hat2.at_point({to_rat(1, p)}), CycNum(Rat(0)));

    // F(0) = 0
    StepFunction zero(p, 1, 0, 1);
    EXPECT_TRUE(fourier_step(zero, psi).is_zero());
  }
}
