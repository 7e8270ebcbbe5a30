#pragma once

#include <sstream>
#include <string>

#include "dpas/ast.hpp"

namespace dpas {

namespace detail {

// VG terms: sums at level 0, scalar products at level 1, primaries at 2.
inline void print_vg(std::ostream& os, const VGTermPtr& t, int level) {
  switch (t->kind) {
    case VGTerm::Kind::Int:
      if (t->value < 0 && level > 0)
        os << "(" << t->value << ")";
      else
        os << t->value;
      break;
    case VGTerm::Kind::OrdConst:
      os << "ord(" << t->value << ")";
      break;
    case VGTerm::Kind::Inf:
      os << "inf";
      break;
    case VGTerm::Kind::Var:
      os << t->name;
      break;
    case VGTerm::Kind::Add:
    case VGTerm::Kind::Sub: {
      bool paren = level > 0;
      if (paren) os << "(";
      print_vg(os, t->a, 0);
      os << (t->kind == VGTerm::Kind::Add ? " + " : " - ");
      print_vg(os, t->b, 1);  // right operand of a sum never swallows a following +/-
      if (paren) os << ")";
      break;
    }
    case VGTerm::Kind::Scale: {
      bool paren = level > 1;
      if (paren) os << "(";
      os << t->value << "*";
      print_vg(os, t->a, 2);
      if (paren) os << ")";
      break;
    }
  }
}

inline void print_rf(std::ostream& os, const RFTermPtr& t, int level) {
  switch (t->kind) {
    case RFTerm::Kind::Var:
      os << t->name;
      break;
    case RFTerm::Kind::Lit:
      if (t->value < 0 && level > 0)
        os << "(" << t->value << ")";
      else
        os << t->value;
      break;
    case RFTerm::Kind::Add:
    case RFTerm::Kind::Sub: {
      bool paren = level > 0;
      if (paren) os << "(";
      print_rf(os, t->args[0], 0);
      os << (t->kind == RFTerm::Kind::Add ? " + " : " - ");
      print_rf(os, t->args[1], 1);
      if (paren) os << ")";
      break;
    }
    case RFTerm::Kind::Mul: {
      bool paren = level > 1;
      if (paren) os << "(";
      print_rf(os, t->args[0], 1);
      os << "*";
      print_rf(os, t->args[1], 2);
      if (paren) os << ")";
      break;
    }
    case RFTerm::Kind::Res:
      os << "res[" << t->m << "->" << t->n << "](";
      print_rf(os, t->args[0], 0);
      os << ")";
      break;
    case RFTerm::Kind::Cross:
      os << "cross[" << t->n << "](";
      print_vg(os, t->vg, 0);
      os << ")";
      break;
    case RFTerm::Kind::Builtin: {
      os << (t->op == RFBuiltin::RootRes ? "@rootres[" : "@combine[");
      for (size_t i = 0; i < t->ints.size(); ++i) os << (i ? "," : "") << t->ints[i];
      os << "](";
      for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) os << ", ";
        print_rf(os, t->args[i], 0);
      }
      os << ")";
      break;
    }
  }
}

// Formula precedence: -> is 0 (right assoc), \/ is 1, /\ is 2, ~ is 3.
// A quantifier body extends maximally to the right, so a quantifier needs
// parentheses anywhere except at precedence level 0.
inline void print_formula(std::ostream& os, const FormulaPtr& f, int level) {
  switch (f->kind) {
    case Formula::Kind::True:
      os << "true";
      break;
    case Formula::Kind::False:
      os << "false";
      break;
    case Formula::Kind::VGCmp:
      print_vg(os, f->vga, 0);
      os << (f->cmp == CmpOp::Eq ? " = " : f->cmp == CmpOp::Lt ? " < " : " <= ");
      print_vg(os, f->vgb, 0);
      break;
    case Formula::Kind::VGCong:
      print_vg(os, f->vga, 0);
      os << " ≡{" << f->d << "} ";
      print_vg(os, f->vgb, 0);
      break;
    case Formula::Kind::RFEq:
      print_rf(os, f->rfs[0], 0);
      os << " = ";
      print_rf(os, f->rfs[1], 0);
      break;
    case Formula::Kind::AMem:
      os << "A[" << f->n << "](";
      print_rf(os, f->rfs[0], 0);
      os << ")";
      break;
    case Formula::Kind::Pred: {
      os << "Phi." << f->name << "(";
      for (size_t i = 0; i < f->rfs.size(); ++i) {
        if (i) os << ", ";
        print_rf(os, f->rfs[i], 0);
      }
      os << ")";
      break;
    }
    case Formula::Kind::CellCond: {
      os << "@cellcond[";
      for (size_t i = 0; i < f->ints.size(); ++i) os << (i ? "," : "") << f->ints[i];
      os << "](";
      for (size_t i = 0; i < f->rfs.size(); ++i) {
        if (i) os << ", ";
        print_rf(os, f->rfs[i], 0);
      }
      os << ")";
      break;
    }
    case Formula::Kind::Not: {
      os << "~";
      bool paren = !f->kids[0]->is_atom();
      if (paren) os << "(";
      print_formula(os, f->kids[0], paren ? 0 : 3);
      if (paren) os << ")";
      break;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      int prec = f->kind == Formula::Kind::Implies ? 0 : f->kind == Formula::Kind::Or ? 1 : 2;
      bool paren = level > prec;
      if (paren) os << "(";
      // left operand: one level tighter for the right-assoc ->, same for chains
      print_formula(os, f->kids[0], f->kind == Formula::Kind::Implies ? prec + 1 : prec);
      os << (f->kind == Formula::Kind::Implies ? " -> " : f->kind == Formula::Kind::Or ? " \\/ " : " /\\ ");
      print_formula(os, f->kids[1], f->kind == Formula::Kind::Implies ? prec : prec + 1);
      if (paren) os << ")";
      break;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool paren = level > 0;
      if (paren) os << "(";
      os << (f->kind == Formula::Kind::Exists ? "EX " : "ALL ") << f->name << ":" << f->var_sort.str() << ". ";
      print_formula(os, f->kids[0], 0);
      if (paren) os << ")";
      break;
    }
  }
}

}  // namespace detail

inline std::string print(const VGTermPtr& t) {
  std::ostringstream os;
  detail::print_vg(os, t, 0);
  return os.str();
}

inline std::string print(const RFTermPtr& t) {
  std::ostringstream os;
  detail::print_rf(os, t, 0);
  return os.str();
}

inline std::string print(const FormulaPtr& f) {
  std::ostringstream os;
  detail::print_formula(os, f, 0);
  return os.str();
}

}  // namespace dpas
