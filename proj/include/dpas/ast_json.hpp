#pragma once

#include <json.hpp>

#include "dpas/ast.hpp"
#include "dpas/error.hpp"

namespace dpas {

using Json = nlohmann::json;

inline Json to_json(const Sort& s) {
  Json j;
  j["kind"] = s.kind == SortKind::VG ? "vg" : s.kind == SortKind::VGInf ? "vginf" : s.kind == SortKind::RF ? "rf" : "bool";
  if (s.kind == SortKind::RF) j["n"] = s.n;
  return j;
}

inline Sort sort_from_json(const Json& j) {
  std::string k = j.at("kind");
  if (k == "vg") return Sort::vg();
  if (k == "vginf") return Sort::vginf();
  if (k == "rf") return Sort::rf(j.at("n").get<int>());
  throw Error("bad sort in JSON: " + k);
}

inline Json to_json(const VGTermPtr& t) {
  Json j;
  switch (t->kind) {
    case VGTerm::Kind::Int:
      j["node"] = "int";
      j["value"] = t->value;
      break;
    case VGTerm::Kind::OrdConst:
      j["node"] = "ord";
      j["n"] = t->value;
      break;
    case VGTerm::Kind::Inf:
      j["node"] = "inf";
      break;
    case VGTerm::Kind::Var:
      j["node"] = "var";
      j["name"] = t->name;
      break;
    case VGTerm::Kind::Add:
    case VGTerm::Kind::Sub:
      j["node"] = t->kind == VGTerm::Kind::Add ? "add" : "sub";
      j["a"] = to_json(t->a);
      j["b"] = to_json(t->b);
      break;
    case VGTerm::Kind::Scale:
      j["node"] = "scale";
      j["k"] = t->value;
      j["a"] = to_json(t->a);
      break;
  }
  j["sort"] = "vg";
  return j;
}

inline VGTermPtr vg_from_json(const Json& j) {
  std::string node = j.at("node");
  if (node == "int") return VGTerm::lit(j.at("value").get<long long>());
  if (node == "ord") return VGTerm::ord(j.at("n").get<long long>());
  if (node == "inf") return VGTerm::inf();
  if (node == "var") return VGTerm::var(j.at("name").get<std::string>());
  if (node == "add") return VGTerm::add(vg_from_json(j.at("a")), vg_from_json(j.at("b")));
  if (node == "sub") return VGTerm::sub(vg_from_json(j.at("a")), vg_from_json(j.at("b")));
  if (node == "scale") return VGTerm::scale(j.at("k").get<long long>(), vg_from_json(j.at("a")));
  throw Error("bad vg term node in JSON: " + node);
}

inline Json to_json(const RFTermPtr& t) {
  Json j;
  switch (t->kind) {
    case RFTerm::Kind::Var:
      j["node"] = "var";
      j["name"] = t->name;
      break;
    case RFTerm::Kind::Lit:
      j["node"] = "lit";
      j["value"] = t->value;
      j["n"] = t->n;
      break;
    case RFTerm::Kind::Add:
    case RFTerm::Kind::Sub:
    case RFTerm::Kind::Mul:
      j["node"] = t->kind == RFTerm::Kind::Add ? "add" : t->kind == RFTerm::Kind::Sub ? "sub" : "mul";
      j["a"] = to_json(t->args[0]);
      j["b"] = to_json(t->args[1]);
      break;
    case RFTerm::Kind::Res:
      j["node"] = "res";
      j["m"] = t->m;
      j["n"] = t->n;
      j["a"] = to_json(t->args[0]);
      break;
    case RFTerm::Kind::Cross:
      j["node"] = "cross";
      j["n"] = t->n;
      j["a"] = to_json(t->vg);
      break;
    case RFTerm::Kind::Builtin: {
      j["node"] = "builtin";
      j["op"] = t->op == RFBuiltin::RootRes ? "rootres" : "combine";
      j["params"] = t->ints;
      Json args = Json::array();
      for (const auto& a : t->args) args.push_back(to_json(a));
      j["args"] = args;
      j["n"] = t->n;
      break;
    }
  }
  j["sort"] = "rf";
  return j;
}

inline RFTermPtr rf_from_json(const Json& j) {
  std::string node = j.at("node");
  if (node == "var") return RFTerm::var(j.at("name").get<std::string>());
  if (node == "lit") return RFTerm::lit(j.at("value").get<long long>(), j.at("n").get<int>());
  if (node == "add") return RFTerm::add(rf_from_json(j.at("a")), rf_from_json(j.at("b")));
  if (node == "sub") return RFTerm::sub(rf_from_json(j.at("a")), rf_from_json(j.at("b")));
  if (node == "mul") return RFTerm::mul(rf_from_json(j.at("a")), rf_from_json(j.at("b")));
  if (node == "res") return RFTerm::res(j.at("m").get<int>(), j.at("n").get<int>(), rf_from_json(j.at("a")));
  if (node == "cross") return RFTerm::cross(j.at("n").get<int>(), vg_from_json(j.at("a")));
  if (node == "builtin") {
    std::vector<RFTermPtr> args;
    for (const auto& a : j.at("args")) args.push_back(rf_from_json(a));
    RFBuiltin op = j.at("op").get<std::string>() == "rootres" ? RFBuiltin::RootRes : RFBuiltin::Combine;
    return RFTerm::builtin(op, j.at("params").get<std::vector<long long>>(), std::move(args), j.at("n").get<int>());
  }
  throw Error("bad rf term node in JSON: " + node);
}

inline Json to_json(const FormulaPtr& f) {
  Json j;
  switch (f->kind) {
    case Formula::Kind::True:
      j["node"] = "true";
      break;
    case Formula::Kind::False:
      j["node"] = "false";
      break;
    case Formula::Kind::VGCmp:
      j["node"] = "vgcmp";
      j["op"] = f->cmp == CmpOp::Eq ? "=" : f->cmp == CmpOp::Lt ? "<" : "<=";
      j["a"] = to_json(f->vga);
      j["b"] = to_json(f->vgb);
      break;
    case Formula::Kind::VGCong:
      j["node"] = "cong";
      j["d"] = f->d;
      j["a"] = to_json(f->vga);
      j["b"] = to_json(f->vgb);
      break;
    case Formula::Kind::RFEq:
      j["node"] = "rfeq";
      j["a"] = to_json(f->rfs[0]);
      j["b"] = to_json(f->rfs[1]);
      break;
    case Formula::Kind::AMem:
      j["node"] = "amem";
      j["n"] = f->n;
      j["a"] = to_json(f->rfs[0]);
      break;
    case Formula::Kind::Pred:
    case Formula::Kind::CellCond: {
      j["node"] = f->kind == Formula::Kind::Pred ? "pred" : "cellcond";
      if (f->kind == Formula::Kind::Pred)
        j["name"] = f->name;
      else
        j["params"] = f->ints;
      Json args = Json::array();
      for (const auto& a : f->rfs) args.push_back(to_json(a));
      j["args"] = args;
      break;
    }
    case Formula::Kind::Not:
      j["node"] = "not";
      j["a"] = to_json(f->kids[0]);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      j["node"] = f->kind == Formula::Kind::And ? "and" : f->kind == Formula::Kind::Or ? "or" : "implies";
      j["a"] = to_json(f->kids[0]);
      j["b"] = to_json(f->kids[1]);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      j["node"] = f->kind == Formula::Kind::Exists ? "exists" : "forall";
      j["var"] = f->name;
      j["var_sort"] = to_json(f->var_sort);
      j["body"] = to_json(f->kids[0]);
      break;
  }
  return j;
}

inline FormulaPtr formula_from_json(const Json& j) {
  std::string node = j.at("node");
  if (node == "true") return Formula::truth(true);
  if (node == "false") return Formula::truth(false);
  if (node == "vgcmp") {
    std::string op = j.at("op");
    CmpOp c = op == "=" ? CmpOp::Eq : op == "<" ? CmpOp::Lt : CmpOp::Le;
    return Formula::vg_cmp(c, vg_from_json(j.at("a")), vg_from_json(j.at("b")));
  }
  if (node == "cong") return Formula::vg_cong(j.at("d").get<long long>(), vg_from_json(j.at("a")), vg_from_json(j.at("b")));
  if (node == "rfeq") return Formula::rf_eq(rf_from_json(j.at("a")), rf_from_json(j.at("b")));
  if (node == "amem") return Formula::a_mem(j.at("n").get<int>(), rf_from_json(j.at("a")));
  if (node == "pred" || node == "cellcond") {
    std::vector<RFTermPtr> args;
    for (const auto& a : j.at("args")) args.push_back(rf_from_json(a));
    if (node == "pred") return Formula::pred(j.at("name").get<std::string>(), std::move(args));
    return Formula::cell_cond(j.at("params").get<std::vector<long long>>(), std::move(args));
  }
  if (node == "not") return Formula::lnot(formula_from_json(j.at("a")));
  if (node == "and") return Formula::land(formula_from_json(j.at("a")), formula_from_json(j.at("b")));
  if (node == "or") return Formula::lor(formula_from_json(j.at("a")), formula_from_json(j.at("b")));
  if (node == "implies") return Formula::implies(formula_from_json(j.at("a")), formula_from_json(j.at("b")));
  if (node == "exists" || node == "forall")
    return Formula::quant(node == "exists" ? Formula::Kind::Exists : Formula::Kind::Forall,
                          j.at("var").get<std::string>(), sort_from_json(j.at("var_sort")),
                          formula_from_json(j.at("body")));
  throw Error("bad formula node in JSON: " + node);
}

}  // namespace dpas
