#include <gtest/gtest.h>

#include <random>

#include "dpas/ast.hpp"
#include "dpas/ast_json.hpp"
#include "dpas/nnf.hpp"
#include "dpas/parser.hpp"
#include "dpas/printer.hpp"
#include "dpas/subst.hpp"
#include "dpas/typecheck.hpp"

using namespace dpas;

TEST(Parser, QuantifiedLinearEquation) {
  auto f = parse_formula("EX y:vg. 2*y = z");
  ASSERT_EQ(f->kind, Formula::Kind::Exists);
  EXPECT_EQ(f->name, "y");
  EXPECT_EQ(f->var_sort, Sort::vg());
  auto body = f->kids[0];
  ASSERT_EQ(body->kind, Formula::Kind::VGCmp);
  EXPECT_EQ(body->cmp, CmpOp::Eq);
  auto expected = Formula::exists("y", Sort::vg(),
                                  Formula::vg_cmp(CmpOp::Eq, VGTerm::scale(2, VGTerm::var("y")), VGTerm::var("z")));
  EXPECT_TRUE(equal(f, expected));
}

TEST(Parser, CrossAtomConjunction) {
  auto f = parse_formula("cross[4](x) = xi /\\ x >= 0");
  ASSERT_EQ(f->kind, Formula::Kind::And);
  auto lhs = f->kids[0];
  ASSERT_EQ(lhs->kind, Formula::Kind::RFEq);
  EXPECT_EQ(lhs->rfs[0]->kind, RFTerm::Kind::Cross);
  EXPECT_EQ(lhs->rfs[0]->n, 4);
  // sort of the cross side is rf[4]
  SortContext ctx{{"x", Sort::vg()}, {"xi", Sort::rf(4)}};
  auto tc = typecheck(f, ctx);
  EXPECT_EQ(sort_of(tc->kids[0]->rfs[0], ctx), Sort::rf(4));
}

TEST(Parser, IllSortedCrossArgument) {
  SortContext ctx{{"r", Sort::rf(2)}};
  auto t = parse_rf_term("cross[3](r)");
  EXPECT_THROW(sort_of(t, ctx), SortError);
}

TEST(Parser, SyntaxErrorCarriesPosition) {
  try {
    parse_formula("EX y:vg. 2*y = ");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_GE(e.column, 1);
    EXPECT_EQ(e.line, 1);
  }
}

TEST(Typecheck, OrdConstEquation) {
  auto f = parse_formula("EX y:vg. y = ord(4)");
  EXPECT_NO_THROW(typecheck(f, {}));
}

TEST(Typecheck, ResProjection) {
  SortContext ctx{{"xi", Sort::rf(4)}};
  auto f = parse_formula("res[4->2](xi) = 1", ctx);
  auto tc = typecheck(f, ctx);
  EXPECT_EQ(sort_of(tc->rfs[0], ctx), Sort::rf(2));
  // the literal is annotated with the shared sort
  EXPECT_EQ(tc->rfs[1]->n, 2);
}

TEST(Typecheck, ResRequiresDivisibility) {
  EXPECT_THROW(RFTerm::res(4, 3, RFTerm::var("xi")), SortError);
  EXPECT_THROW(parse_formula("res[4->3](xi) = 1", {{"xi", Sort::rf(4)}}), SortError);
}

TEST(Typecheck, UnboundVariableReported) {
  auto f = parse_formula("y < 3");
  EXPECT_THROW(typecheck(f, {}), UnboundVariable);
}

TEST(Substitute, SimpleReplace) {
  auto f = parse_formula("y < z");
  auto g = substitute(f, "z", VGTerm::lit(3));
  EXPECT_EQ(print(g), "y < 3");
}

TEST(Substitute, CaptureAvoidance) {
  auto f = parse_formula("EX y:vg. y < z");
  auto g = substitute(f, "z", VGTerm::var("y"));
  ASSERT_EQ(g->kind, Formula::Kind::Exists);
  EXPECT_NE(g->name, "y");  // binder renamed
  auto body = g->kids[0];
  ASSERT_EQ(body->kind, Formula::Kind::VGCmp);
  EXPECT_EQ(body->vga->name, g->name);
  EXPECT_EQ(body->vgb->name, "y");  // the substituted variable stays free
}

TEST(Substitute, SortMismatchRejected) {
  auto f = parse_formula("y < z");
  EXPECT_THROW(substitute(f, "y", RFTerm::lit(1, 2)), SortError);
}

TEST(NormalForm, NegatedComparison) {
  auto f = Formula::lnot(parse_formula("y < z"));
  EXPECT_EQ(print(nnf(f)), "z <= y");
}

TEST(NormalForm, DeMorgan) {
  auto f = Formula::lnot(parse_formula("y < z /\\ z < w"));
  auto g = nnf(f);
  ASSERT_EQ(g->kind, Formula::Kind::Or);
  EXPECT_EQ(print(g), "z <= y \\/ w <= z");
}

TEST(NormalForm, DistributesToDNF) {
  auto f = parse_formula("(a < 1 \\/ b < 1) /\\ c < 1");
  auto g = normal_form(f, NormalMode::DNF);
  ASSERT_EQ(g->kind, Formula::Kind::Or);
  EXPECT_EQ(print(g), "a < 1 /\\ c < 1 \\/ b < 1 /\\ c < 1");
}

TEST(Json, FormulaRoundTrip) {
  SortContext ctx{{"z", Sort::vg()}, {"xi", Sort::rf(4)}};
  auto f = parse_formula("EX y:vg. (0 <= y /\\ y <= ord(4)) /\\ cross[4](y) = xi /\\ y ≡{2} z", ctx);
  auto j = to_json(f);
  auto g = formula_from_json(j);
  EXPECT_TRUE(equal(f, g));
  EXPECT_EQ(to_json(g), j);
}

// ---------------------------------------------------------------------------
// Round-trip property on generated ASTs
// ---------------------------------------------------------------------------

namespace {

struct Gen {
  std::mt19937 rng;
  SortContext ctx;

  explicit Gen(unsigned seed) : rng(seed) {
    ctx = {{"x", Sort::vg()},   {"y", Sort::vg()},    {"z", Sort::vg()},
           {"g", Sort::vginf()}, {"xi", Sort::rf(4)}, {"eta", Sort::rf(2)}};
  }

  long long small() { return static_cast<long long>(rng() % 11) - 5; }
  bool coin() { return rng() % 2 == 0; }

  VGTermPtr vg_term(int depth) {
    switch (rng() % (depth > 0 ? 6 : 3)) {
      case 0:
        return VGTerm::lit(small());
      case 1:
        return VGTerm::var(coin() ? "x" : coin() ? "y" : "z");
      case 2:
        return VGTerm::ord(2 + rng() % 8);
      case 3:
        return VGTerm::add(vg_term(depth - 1), vg_term(depth - 1));
      case 4:
        return VGTerm::sub(vg_term(depth - 1), vg_term(depth - 1));
      default: {
        long long k = small();
        if (k == 0) k = 2;
        return VGTerm::scale(k, vg_term(depth - 1));
      }
    }
  }

  RFTermPtr rf_term(int depth, int n) {
    switch (rng() % (depth > 0 ? 6 : 3)) {
      case 0:
        return RFTerm::lit(rng() % 5, 0);
      case 1:
        return n == 4 ? RFTerm::var("xi") : RFTerm::var("eta");
      case 2:
        return RFTerm::cross(n, vg_term(depth - 1));
      case 3:
        return RFTerm::add(rf_term(depth - 1, n), rf_term(depth - 1, n));
      case 4:
        return RFTerm::mul(rf_term(depth - 1, n), rf_term(depth - 1, n));
      default:
        return RFTerm::res(n * 2, n, rf_term(depth - 1, n * 2));
    }
  }

  FormulaPtr atom(int depth) {
    switch (rng() % 5) {
      case 0:
        return Formula::vg_cmp(static_cast<CmpOp>(rng() % 3), vg_term(depth), vg_term(depth));
      case 1:
        return Formula::vg_cong(2 + rng() % 5, vg_term(depth), vg_term(depth));
      case 2: {
        int n = coin() ? 4 : 2;
        return Formula::rf_eq(RFTerm::cross(n, vg_term(depth)), rf_term(depth, n));
      }
      case 3:
        return Formula::a_mem(4, rf_term(depth, 4));
      default:
        return Formula::pred("test", {rf_term(depth, 2)});
    }
  }

  FormulaPtr formula(int depth) {
    if (depth == 0) return atom(1);
    switch (rng() % 6) {
      case 0:
        return Formula::land(formula(depth - 1), formula(depth - 1));
      case 1:
        return Formula::lor(formula(depth - 1), formula(depth - 1));
      case 2:
        return Formula::implies(formula(depth - 1), formula(depth - 1));
      case 3:
        return Formula::lnot(formula(depth - 1));
      case 4:
        return Formula::exists(coin() ? "w" : "v", coin() ? Sort::vg() : Sort::rf(4), formula(depth - 1));
      default:
        return atom(2);
    }
  }
};

}  // namespace

TEST(RoundTrip, PrintThenParseIsIdentity) {
  Gen gen(20260810);
  SortContext ctx = gen.ctx;
  ctx["w"] = Sort::vg();  // may also appear free when generated under a binder only
  ctx["v"] = Sort::vg();
  for (int i = 0; i < 300; ++i) {
    auto f = gen.formula(3);
    std::string text = print(f);
    FormulaPtr g;
    try {
      g = parse_formula(text, ctx);
    } catch (const Error& e) {
      FAIL() << "failed to reparse: " << text << "\n  " << e.what();
    }
    EXPECT_TRUE(equal(f, g)) << "round trip mismatch:\n  in:  " << text << "\n  out: " << print(g);
  }
}

TEST(RoundTrip, JsonMatchesAst) {
  Gen gen(424242);
  for (int i = 0; i < 200; ++i) {
    auto f = gen.formula(3);
    EXPECT_TRUE(equal(f, formula_from_json(to_json(f))));
  }
}

// sort preservation: operations return formulas that still typecheck
TEST(SortPreservation, NormalFormAndSubstitute) {
  Gen gen(777);
  SortContext ctx = gen.ctx;
  ctx["w"] = Sort::vg();
  ctx["v"] = Sort::vg();
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto f = gen.formula(3);
    FormulaPtr tc;
    try {
      tc = typecheck(f, ctx);
    } catch (const SortError&) {
      continue;  // generator may build rf[4]-vs-rf[2] clashes; those must throw, not crash
    }
    ++checked;
    EXPECT_NO_THROW(typecheck(normal_form(tc, NormalMode::NNF), ctx));
    EXPECT_NO_THROW(typecheck(normal_form(tc, NormalMode::DNF), ctx));
    EXPECT_NO_THROW(typecheck(substitute(tc, "z", VGTerm::add(VGTerm::var("x"), VGTerm::lit(1))), ctx));
  }
  EXPECT_GT(checked, 50);
}
