#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dpas/ast.hpp"
#include "dpas/error.hpp"

namespace dpas {

namespace detail {

struct Token {
  enum class Kind { Ident, Int, Sym, End };
  Kind kind;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;
};

inline bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '\'';
}

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k; ++j) {
      if (i + j < text.size() && text[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += k;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#' && i + 1 < text.size() && text[i + 1] == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (c >= '0' && c <= '9') {
      size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      t.kind = Token::Kind::Int;
      t.text = text.substr(i, j - i);
      t.value = std::stoll(t.text);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (ident_char(c) && !(c >= '0' && c <= '9')) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      t.kind = Token::Kind::Ident;
      t.text = text.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    auto two = text.substr(i, 2);
    auto three = text.substr(i, 3);
    t.kind = Token::Kind::Sym;
    if (three == "≡") {  // UTF-8 congruence sign
      t.text = "≡";
      advance(3);
    } else if (two == "->" || two == "<=" || two == ">=" || two == "/\\" || two == "\\/" || two == "==") {
      t.text = two;
      advance(2);
    } else if (std::string("()[]{},.:+-*=<>~@").find(c) != std::string::npos) {
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw SyntaxError("unexpected character '" + std::string(1, c) + "'", line, col);
    }
    out.push_back(t);
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// Neutral term tree; lowered to VGTerm or RFTerm once the atom's sort is known.
struct PreTerm;
using PreTermPtr = std::shared_ptr<PreTerm>;
struct PreTerm {
  enum class Kind { Int, Ord, Inf, Var, Add, Sub, Mul, Cross, Res, Builtin };
  Kind kind;
  long long value = 0;
  std::string name;
  int n = 0, m = 0;
  RFBuiltin op{};
  std::vector<long long> ints;
  PreTermPtr a, b;
  int line = 1, col = 1;
};

class Parser {
 public:
  Parser(std::string text, SortContext ctx) : toks_(tokenize(text)), scope_(std::move(ctx)) {}

  FormulaPtr parse_formula_all() {
    auto f = formula();
    expect_end();
    return f;
  }

  VGTermPtr parse_vg_all() {
    auto t = pre_sum();
    expect_end();
    return lower_vg(t);
  }

  RFTermPtr parse_rf_all() {
    auto t = pre_sum();
    expect_end();
    return lower_rf(t);
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  SortContext scope_;

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(size_t k = 1) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  void bump() { ++pos_; }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, cur().line, cur().col); }

  bool at_sym(const std::string& s) const { return cur().kind == Token::Kind::Sym && cur().text == s; }
  bool at_ident(const std::string& s) const { return cur().kind == Token::Kind::Ident && cur().text == s; }

  void eat_sym(const std::string& s) {
    if (!at_sym(s)) fail("expected '" + s + "'");
    bump();
  }
  long long eat_int() {
    if (cur().kind != Token::Kind::Int) fail("expected integer");
    long long v = cur().value;
    bump();
    return v;
  }
  std::string eat_ident() {
    if (cur().kind != Token::Kind::Ident) fail("expected identifier");
    std::string s = cur().text;
    bump();
    return s;
  }
  void expect_end() {
    if (cur().kind != Token::Kind::End) fail("trailing input");
  }

  // ---- sorts ----
  Sort sort() {
    std::string s = eat_ident();
    if (s == "vg") return Sort::vg();
    if (s == "vginf") return Sort::vginf();
    if (s == "rf") {
      eat_sym("[");
      long long n = eat_int();
      eat_sym("]");
      return Sort::rf(static_cast<int>(n));
    }
    fail("unknown sort '" + s + "'");
  }

  // ---- terms ----
  PreTermPtr mk(PreTerm::Kind k) {
    auto t = std::make_shared<PreTerm>();
    t->kind = k;
    t->line = cur().line;
    t->col = cur().col;
    return t;
  }

  PreTermPtr pre_sum() {
    auto lhs = pre_prod();
    while (at_sym("+") || at_sym("-")) {
      bool plus = cur().text == "+";
      bump();
      auto t = mk(plus ? PreTerm::Kind::Add : PreTerm::Kind::Sub);
      t->a = lhs;
      t->b = pre_prod();
      lhs = t;
    }
    return lhs;
  }

  PreTermPtr pre_prod() {
    bool neg = false;
    if (at_sym("-")) {
      neg = true;
      bump();
    }
    auto lhs = pre_prim();
    while (at_sym("*")) {
      bump();
      auto t = mk(PreTerm::Kind::Mul);
      t->a = lhs;
      t->b = pre_prim();
      lhs = t;
    }
    if (neg) {
      if (lhs->kind == PreTerm::Kind::Int) {
        lhs->value = -lhs->value;
      } else if (lhs->kind == PreTerm::Kind::Mul && lhs->a->kind == PreTerm::Kind::Int) {
        lhs->a->value = -lhs->a->value;
      } else {
        auto t = mk(PreTerm::Kind::Mul);
        auto minus1 = mk(PreTerm::Kind::Int);
        minus1->value = -1;
        t->a = minus1;
        t->b = lhs;
        lhs = t;
      }
    }
    return lhs;
  }

  PreTermPtr pre_prim() {
    if (cur().kind == Token::Kind::Int) {
      auto t = mk(PreTerm::Kind::Int);
      t->value = eat_int();
      return t;
    }
    if (at_sym("(")) {
      bump();
      auto t = pre_sum();
      eat_sym(")");
      return t;
    }
    if (at_sym("@")) {
      bump();
      std::string which = eat_ident();
      auto t = mk(PreTerm::Kind::Builtin);
      if (which == "rootres")
        t->op = RFBuiltin::RootRes;
      else if (which == "combine")
        t->op = RFBuiltin::Combine;
      else
        fail("unknown builtin '@" + which + "'");
      eat_sym("[");
      t->ints.push_back(eat_int_signed());
      while (at_sym(",")) {
        bump();
        t->ints.push_back(eat_int_signed());
      }
      eat_sym("]");
      eat_sym("(");
      t->a = pre_sum();
      if (at_sym(",")) {
        bump();
        t->b = pre_sum();
      }
      eat_sym(")");
      return t;
    }
    if (cur().kind == Token::Kind::Ident) {
      std::string name = cur().text;
      if (name == "inf") {
        bump();
        return mk(PreTerm::Kind::Inf);
      }
      if (name == "ord" && peek().kind == Token::Kind::Sym && peek().text == "(") {
        bump();
        eat_sym("(");
        auto t = mk(PreTerm::Kind::Ord);
        t->value = eat_int();
        eat_sym(")");
        return t;
      }
      if (name == "cross" && peek().text == "[") {
        bump();
        eat_sym("[");
        auto t = mk(PreTerm::Kind::Cross);
        t->n = static_cast<int>(eat_int());
        eat_sym("]");
        eat_sym("(");
        t->a = pre_sum();
        eat_sym(")");
        return t;
      }
      if (name == "res" && peek().text == "[") {
        bump();
        eat_sym("[");
        auto t = mk(PreTerm::Kind::Res);
        t->m = static_cast<int>(eat_int());
        eat_sym("->");
        t->n = static_cast<int>(eat_int());
        eat_sym("]");
        eat_sym("(");
        t->a = pre_sum();
        eat_sym(")");
        return t;
      }
      bump();
      auto t = mk(PreTerm::Kind::Var);
      t->name = name;
      return t;
    }
    fail("expected term");
  }

  long long eat_int_signed() {
    bool neg = false;
    if (at_sym("-")) {
      neg = true;
      bump();
    }
    long long v = eat_int();
    return neg ? -v : v;
  }

  // ---- lowering ----
  bool has_rf_marker(const PreTermPtr& t) const {
    switch (t->kind) {
      case PreTerm::Kind::Cross:
      case PreTerm::Kind::Res:
      case PreTerm::Kind::Builtin:
        return true;
      case PreTerm::Kind::Mul:
        if (t->a->kind != PreTerm::Kind::Int) return true;  // ring product
        return has_rf_marker(t->a) || has_rf_marker(t->b);
      case PreTerm::Kind::Add:
      case PreTerm::Kind::Sub:
        return has_rf_marker(t->a) || has_rf_marker(t->b);
      case PreTerm::Kind::Var: {
        auto it = scope_.find(t->name);
        return it != scope_.end() && it->second.kind == SortKind::RF;
      }
      default:
        return false;
    }
  }

  bool has_vg_marker(const PreTermPtr& t) const {
    switch (t->kind) {
      case PreTerm::Kind::Ord:
      case PreTerm::Kind::Inf:
        return true;
      case PreTerm::Kind::Add:
      case PreTerm::Kind::Sub:
      case PreTerm::Kind::Mul:
        return (t->a && has_vg_marker(t->a)) || (t->b && has_vg_marker(t->b));
      case PreTerm::Kind::Cross:
        return false;  // the argument is VG, the term is not
      case PreTerm::Kind::Var: {
        auto it = scope_.find(t->name);
        return it != scope_.end() && it->second.is_vg_like();
      }
      default:
        return false;
    }
  }

  VGTermPtr lower_vg(const PreTermPtr& t) const {
    switch (t->kind) {
      case PreTerm::Kind::Int:
        return VGTerm::lit(t->value);
      case PreTerm::Kind::Ord:
        return VGTerm::ord(t->value);
      case PreTerm::Kind::Inf:
        return VGTerm::inf();
      case PreTerm::Kind::Var:
        return VGTerm::var(t->name);
      case PreTerm::Kind::Add:
        return VGTerm::add(lower_vg(t->a), lower_vg(t->b));
      case PreTerm::Kind::Sub:
        return VGTerm::sub(lower_vg(t->a), lower_vg(t->b));
      case PreTerm::Kind::Mul:
        if (t->a->kind != PreTerm::Kind::Int)
          throw SortError("value-group products must have an integer scalar on the left");
        return VGTerm::scale(t->a->value, lower_vg(t->b));
      default:
        throw SortError("residue-ring construct in value-group position");
    }
  }

  RFTermPtr lower_rf(const PreTermPtr& t) const {
    switch (t->kind) {
      case PreTerm::Kind::Int:
        return RFTerm::lit(t->value, 0);
      case PreTerm::Kind::Var:
        return RFTerm::var(t->name);
      case PreTerm::Kind::Add:
        return RFTerm::add(lower_rf(t->a), lower_rf(t->b));
      case PreTerm::Kind::Sub:
        return RFTerm::sub(lower_rf(t->a), lower_rf(t->b));
      case PreTerm::Kind::Mul:
        return RFTerm::mul(lower_rf(t->a), lower_rf(t->b));
      case PreTerm::Kind::Cross:
        return RFTerm::cross(t->n, lower_vg(t->a));
      case PreTerm::Kind::Res:
        return RFTerm::res(t->m, t->n, lower_rf(t->a));
      case PreTerm::Kind::Builtin: {
        std::vector<RFTermPtr> args;
        args.push_back(lower_rf(t->a));
        if (t->b) args.push_back(lower_rf(t->b));
        int rn = static_cast<int>(t->ints.back());
        return RFTerm::builtin(t->op, t->ints, std::move(args), rn);
      }
      default:
        throw SortError("value-group construct in residue-ring position");
    }
  }

  // ---- formulas ----
  FormulaPtr formula() { return implies(); }

  FormulaPtr implies() {
    auto lhs = disj();
    if (at_sym("->")) {
      bump();
      return Formula::implies(lhs, implies());
    }
    return lhs;
  }

  FormulaPtr disj() {
    auto lhs = conj();
    while (at_sym("\\/")) {
      bump();
      lhs = Formula::lor(lhs, conj());
    }
    return lhs;
  }

  FormulaPtr conj() {
    auto lhs = unary();
    while (at_sym("/\\")) {
      bump();
      lhs = Formula::land(lhs, unary());
    }
    return lhs;
  }

  FormulaPtr unary() {
    if (at_sym("~")) {
      bump();
      return Formula::lnot(unary());
    }
    if (at_ident("EX") || at_ident("ALL")) {
      bool ex = cur().text == "EX";
      bump();
      std::string var = eat_ident();
      eat_sym(":");
      Sort s = sort();
      eat_sym(".");
      auto saved = scope_.find(var);
      bool had = saved != scope_.end();
      Sort old{};
      if (had) old = saved->second;
      scope_[var] = s;
      auto body = implies();
      if (had)
        scope_[var] = old;
      else
        scope_.erase(var);
      return Formula::quant(ex ? Formula::Kind::Exists : Formula::Kind::Forall, var, s, body);
    }
    return atom();
  }

  // when the next token is '(', decide between a parenthesized formula and a
  // parenthesized term opening an atom by looking past the matching ')'
  bool paren_opens_term() const {
    int depth = 0;
    size_t j = pos_;
    for (; j < toks_.size(); ++j) {
      if (toks_[j].kind == Token::Kind::Sym) {
        if (toks_[j].text == "(") ++depth;
        if (toks_[j].text == ")") {
          --depth;
          if (depth == 0) break;
        }
      }
    }
    if (j + 1 >= toks_.size()) return false;
    const Token& nxt = toks_[j + 1];
    if (nxt.kind != Token::Kind::Sym) return false;
    static const char* term_follow[] = {"+", "-", "*", "=", "<", "<=", ">", ">=", "≡"};
    for (auto* s : term_follow)
      if (nxt.text == s) return true;
    return false;
  }

  FormulaPtr atom() {
    if (at_ident("true")) {
      bump();
      return Formula::truth(true);
    }
    if (at_ident("false")) {
      bump();
      return Formula::truth(false);
    }
    if (at_sym("(") && !paren_opens_term()) {
      bump();
      auto f = formula();
      eat_sym(")");
      return f;
    }
    if (at_ident("A") && peek().text == "[") {
      bump();
      eat_sym("[");
      int n = static_cast<int>(eat_int());
      eat_sym("]");
      eat_sym("(");
      auto arg = pre_sum();
      eat_sym(")");
      return Formula::a_mem(n, lower_rf(arg));
    }
    if (at_ident("Phi") && peek().text == ".") {
      bump();
      eat_sym(".");
      std::string name = eat_ident();
      eat_sym("(");
      std::vector<RFTermPtr> args;
      if (!at_sym(")")) {
        args.push_back(lower_rf(pre_sum()));
        while (at_sym(",")) {
          bump();
          args.push_back(lower_rf(pre_sum()));
        }
      }
      eat_sym(")");
      return Formula::pred(name, std::move(args));
    }
    if (at_sym("@") && peek().text == "cellcond") {
      bump();
      bump();
      eat_sym("[");
      std::vector<long long> params;
      params.push_back(eat_int_signed());
      while (at_sym(",")) {
        bump();
        params.push_back(eat_int_signed());
      }
      eat_sym("]");
      eat_sym("(");
      std::vector<RFTermPtr> args;
      args.push_back(lower_rf(pre_sum()));
      while (at_sym(",")) {
        bump();
        args.push_back(lower_rf(pre_sum()));
      }
      eat_sym(")");
      return Formula::cell_cond(std::move(params), std::move(args));
    }
    // term atom
    auto lhs = pre_sum();
    if (at_sym("=") || at_sym("==")) {
      bump();
      if (at_sym("{")) return finish_cong(lhs);  // ASCII alias =={d} for the congruence sign
      auto rhs = pre_sum();
      return make_eq(lhs, rhs);
    }
    if (at_sym("≡")) {
      bump();
      return finish_cong(lhs);
    }
    if (at_sym("<") || at_sym("<=")) {
      CmpOp op = at_sym("<") ? CmpOp::Lt : CmpOp::Le;
      bump();
      auto rhs = pre_sum();
      return Formula::vg_cmp(op, lower_vg(lhs), lower_vg(rhs));
    }
    if (at_sym(">") || at_sym(">=")) {  // sugar: stored flipped
      CmpOp op = at_sym(">") ? CmpOp::Lt : CmpOp::Le;
      bump();
      auto rhs = pre_sum();
      return Formula::vg_cmp(op, lower_vg(rhs), lower_vg(lhs));
    }
    fail("expected comparison after term");
  }

  FormulaPtr finish_cong(const PreTermPtr& lhs) {
    eat_sym("{");
    long long d = eat_int();
    eat_sym("}");
    auto rhs = pre_sum();
    return Formula::vg_cong(d, lower_vg(lhs), lower_vg(rhs));
  }

  FormulaPtr make_eq(const PreTermPtr& lhs, const PreTermPtr& rhs) {
    bool rf = has_rf_marker(lhs) || has_rf_marker(rhs);
    bool vg = has_vg_marker(lhs) || has_vg_marker(rhs);
    if (rf && vg) throw SortError("equation mixes value-group and residue-ring material");
    if (rf) return Formula::rf_eq(lower_rf(lhs), lower_rf(rhs));
    return Formula::vg_cmp(CmpOp::Eq, lower_vg(lhs), lower_vg(rhs));
  }
};

}  // namespace detail

// Parses a formula in the surface syntax. The context supplies sorts of free
// variables; quantified variables are typed at their binder.
inline FormulaPtr parse_formula(const std::string& text, const SortContext& ctx = {}) {
  return detail::Parser(text, ctx).parse_formula_all();
}

inline VGTermPtr parse_vg_term(const std::string& text) { return detail::Parser(text, {}).parse_vg_all(); }

inline RFTermPtr parse_rf_term(const std::string& text, const SortContext& ctx = {}) {
  return detail::Parser(text, ctx).parse_rf_all();
}

}  // namespace dpas
