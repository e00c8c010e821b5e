#pragma once

#include <memory>
#include <string>
#include <vector>

#include "slantlab/jet.hpp"
#include "slantlab/types.hpp"

namespace slantlab {

enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt };

struct ExprNode {
  enum class Kind { Number, Param, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind;
  double number = 0.0;
  int param = -1;
  Func func = Func::Sin;
  std::shared_ptr<const ExprNode> a, b;

  // set on Pow when the exponent is a constant integer literal; evaluated by
  // repeated multiplication for exactness (and validity at non-positive base)
  bool has_int_exponent = false;
  long long int_exponent = 0;
};

using ExprNodePtr = std::shared_ptr<const ExprNode>;

// Immutable scalar expression in a fixed ordered parameter list.
class Expr {
 public:
  Expr() = default;
  Expr(ExprNodePtr root, std::shared_ptr<const std::vector<std::string>> params)
      : root_(std::move(root)), params_(std::move(params)) {}

  bool valid() const { return root_ != nullptr; }
  const ExprNodePtr& root() const { return root_; }
  const std::vector<std::string>& params() const { return *params_; }
  int param_count() const { return static_cast<int>(params_->size()); }

 private:
  ExprNodePtr root_;
  std::shared_ptr<const std::vector<std::string>> params_;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?
//   unary  := '-' unary | atom
//   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
// Whitespace insignificant; angles in radians.
Expr parse(const std::string& text, const std::vector<std::string>& params);

// minimal-parenthesis form; parsing it back yields an identical tree
std::string to_string(const Expr& e);

Jet2 eval_jet2(const Expr& e, const Vec& point);
double eval_value(const Expr& e, const Vec& point);

bool same_tree(const Expr& a, const Expr& b);

}  // namespace slantlab
