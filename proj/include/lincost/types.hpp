#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lincost/ast.hpp"

namespace lincost {

struct PMat;

// Resolved (cost-free) types. List contents default to the abstract element
// type when nothing constrains them. Fun types optionally carry the linear
// map annotating them; base typechecking leaves it null and inference fills
// it in.
struct CfType {
  enum class Kind { Bool, List, Pair, Fun, Abstract };

  Kind kind = Kind::Abstract;
  std::shared_ptr<const CfType> a, b;       // List elem; Pair/Fun components
  std::shared_ptr<const PMat> mat;          // Fun only, may be null

  static CfType boolean() { return CfType{Kind::Bool, nullptr, nullptr, nullptr}; }
  static CfType abstract() { return CfType{Kind::Abstract, nullptr, nullptr, nullptr}; }
  static CfType list(CfType elem) {
    return CfType{Kind::List, std::make_shared<CfType>(std::move(elem)), nullptr, nullptr};
  }
  static CfType pair(CfType x, CfType y) {
    return CfType{Kind::Pair, std::make_shared<CfType>(std::move(x)),
                  std::make_shared<CfType>(std::move(y)), nullptr};
  }
  static CfType fun(CfType arg, CfType ret, std::shared_ptr<const PMat> m = nullptr) {
    return CfType{Kind::Fun, std::make_shared<CfType>(std::move(arg)),
                  std::make_shared<CfType>(std::move(ret)), std::move(m)};
  }
};

// Structural equality; Fun matrices are ignored.
bool type_equal(const CfType& s, const CfType& t);
std::string type_str(const CfType& t);

using TypeContext = std::map<std::string, CfType>;

struct TypeError : LangError {
  using LangError::LangError;
};

// A named function of a program: the binder (or self name when unbound),
// the Fun node, its resolved argument/return types and the types of its
// captured free variables.
struct FunDef {
  std::string name;       // registry key: binder name, or self name when unbound
  std::string self_name;  // recursion name bound inside the body
  std::string arg_name;
  ExprPtr fun;   // the Fun node
  ExprPtr body;
  CfType arg, ret;
  TypeContext captured;                               // types of captured free vars
  std::map<std::string, std::string> captured_funs;   // captured var -> registry key
  std::vector<std::string> callees;                   // registry keys, self excluded
};

// A parsed, normalized, typechecked program.
struct Program {
  ExprPtr root;
  std::vector<FunDef> funs;  // in definition order

  const FunDef* find(const std::string& name) const {
    for (const auto& f : funs)
      if (f.name == name) return &f;
    return nullptr;
  }
};

// Simple monomorphic unification-based checker over {Bool, L, Pair, Fun, a}.
// Unresolved type variables resolve to the abstract element type. Collects
// every let-bound (or trailing anonymous) fun literal as a named function.
Program typecheck_program(ExprPtr root);

}  // namespace lincost
