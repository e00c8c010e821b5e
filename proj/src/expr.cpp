#include "slantlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace slantlab {

namespace {

const char* const kFuncNames[] = {"sin", "cos", "tan", "exp", "log", "sqrt"};

int func_index(const std::string& name) {
  for (int i = 0; i < 6; ++i)
    if (name == kFuncNames[i]) return i;
  return -1;
}

ExprNodePtr make_number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Number;
  n->number = v;
  return n;
}

ExprNodePtr make_param(int index) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Param;
  n->param = index;
  return n;
}

ExprNodePtr make_unary(ExprNode::Kind kind, ExprNodePtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->a = std::move(a);
  return n;
}

ExprNodePtr make_call(Func f, ExprNodePtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Call;
  n->func = f;
  n->a = std::move(a);
  return n;
}

// if the node is an integer literal (possibly negated), report its value
bool constant_int(const ExprNode& n, long long* out) {
  if (n.kind == ExprNode::Kind::Number) {
    const double v = n.number;
    if (std::floor(v) == v && std::abs(v) <= 1e9) {
      *out = static_cast<long long>(v);
      return true;
    }
    return false;
  }
  if (n.kind == ExprNode::Kind::Neg && n.a) {
    long long inner;
    if (constant_int(*n.a, &inner)) {
      *out = -inner;
      return true;
    }
  }
  return false;
}

ExprNodePtr make_binary(ExprNode::Kind kind, ExprNodePtr a, ExprNodePtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  if (kind == ExprNode::Kind::Pow) {
    long long e;
    if (constant_int(*n->b, &e)) {
      n->has_int_exponent = true;
      n->int_exponent = e;
    }
  }
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& params)
      : text_(text), params_(params) {}

  ExprNodePtr run() {
    skip_ws();
    if (pos_ >= text_.size())
      fail(ErrorCode::ParseSyntax, "empty expression");
    ExprNodePtr e = expr();
    skip_ws();
    if (pos_ < text_.size())
      syntax_error("end of input or operator '+','-','*','/','^'");
    return e;
  }

 private:
  [[noreturn]] void syntax_error(const std::string& expected) {
    fail(ErrorCode::ParseSyntax,
         "expected " + expected + " at position " + std::to_string(pos_) +
             " in '" + text_ + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprNodePtr expr() {
    ExprNodePtr e = term();
    for (;;) {
      if (accept('+'))
        e = make_binary(ExprNode::Kind::Add, e, term());
      else if (accept('-'))
        e = make_binary(ExprNode::Kind::Sub, e, term());
      else
        return e;
    }
  }

  ExprNodePtr term() {
    ExprNodePtr e = factor();
    for (;;) {
      if (accept('*'))
        e = make_binary(ExprNode::Kind::Mul, e, factor());
      else if (accept('/'))
        e = make_binary(ExprNode::Kind::Div, e, factor());
      else
        return e;
    }
  }

  ExprNodePtr factor() {
    ExprNodePtr base = unary();
    if (accept('^')) return make_binary(ExprNode::Kind::Pow, base, factor());
    return base;
  }

  ExprNodePtr unary() {
    if (accept('-')) return make_unary(ExprNode::Kind::Neg, unary());
    return atom();
  }

  ExprNodePtr atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ExprNodePtr e = expr();
      if (!accept(')')) syntax_error("')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    syntax_error("a number, identifier or '('");
  }

  ExprNodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
    }
    if (pos_ == start ||
        (pos_ == start + 1 && text_[start] == '.'))
      syntax_error("a decimal literal");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
        ++pos_;
      if (pos_ < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      } else {
        pos_ = mark;  // 'e' starts an identifier, not an exponent
      }
    }
    return make_number(std::strtod(text_.c_str() + start, nullptr));
  }

  ExprNodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    if (peek() == '(') {
      const int f = func_index(name);
      if (f < 0)
        fail(ErrorCode::UnknownIdentifier,
             "unknown function '" + name + "' at position " +
                 std::to_string(start));
      ++pos_;
      ExprNodePtr arg = expr();
      if (!accept(')')) syntax_error("')'");
      return make_call(static_cast<Func>(f), std::move(arg));
    }
    for (int i = 0; i < static_cast<int>(params_.size()); ++i)
      if (params_[i] == name) return make_param(i);
    fail(ErrorCode::UnknownIdentifier,
         "unknown identifier '" + name + "' at position " +
             std::to_string(start));
  }

  const std::string& text_;
  const std::vector<std::string>& params_;
  std::size_t pos_ = 0;
};

// precedence levels used by the printer
enum Level { kAdd = 0, kMul = 1, kPow = 2, kUnary = 3, kAtom = 4 };

int level_of(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub: return kAdd;
    case ExprNode::Kind::Mul:
    case ExprNode::Kind::Div: return kMul;
    case ExprNode::Kind::Pow: return kPow;
    case ExprNode::Kind::Neg: return kUnary;
    default: return kAtom;
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print(const ExprNode& n, const std::vector<std::string>& params,
           std::string& out);

// child printed so it parses back at least at the given grammar level
void print_child(const ExprNode& n, const std::vector<std::string>& params,
                 int min_level, std::string& out) {
  if (level_of(n) >= min_level) {
    print(n, params, out);
  } else {
    out += '(';
    print(n, params, out);
    out += ')';
  }
}

void print(const ExprNode& n, const std::vector<std::string>& params,
           std::string& out) {
  switch (n.kind) {
    case ExprNode::Kind::Number:
      out += format_number(n.number);
      return;
    case ExprNode::Kind::Param:
      out += params[n.param];
      return;
    case ExprNode::Kind::Neg:
      out += '-';
      print_child(*n.a, params, kUnary, out);
      return;
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub:
      print_child(*n.a, params, kAdd, out);
      out += n.kind == ExprNode::Kind::Add ? '+' : '-';
      print_child(*n.b, params, kMul, out);
      return;
    case ExprNode::Kind::Mul:
    case ExprNode::Kind::Div:
      print_child(*n.a, params, kMul, out);
      out += n.kind == ExprNode::Kind::Mul ? '*' : '/';
      print_child(*n.b, params, kPow, out);
      return;
    case ExprNode::Kind::Pow:
      print_child(*n.a, params, kUnary, out);
      out += '^';
      print_child(*n.b, params, kPow, out);
      return;
    case ExprNode::Kind::Call:
      out += kFuncNames[static_cast<int>(n.func)];
      out += '(';
      print(*n.a, params, out);
      out += ')';
      return;
  }
}

Jet2 eval_node(const ExprNode& n, const Vec& p) {
  const int k = static_cast<int>(p.size());
  switch (n.kind) {
    case ExprNode::Kind::Number: return Jet2::constant(k, n.number);
    case ExprNode::Kind::Param: return Jet2::variable(k, n.param, p[n.param]);
    case ExprNode::Kind::Neg: return -eval_node(*n.a, p);
    case ExprNode::Kind::Add: return eval_node(*n.a, p) + eval_node(*n.b, p);
    case ExprNode::Kind::Sub: return eval_node(*n.a, p) - eval_node(*n.b, p);
    case ExprNode::Kind::Mul: return eval_node(*n.a, p) * eval_node(*n.b, p);
    case ExprNode::Kind::Div: return eval_node(*n.a, p) / eval_node(*n.b, p);
    case ExprNode::Kind::Pow:
      if (n.has_int_exponent) return pow_int(eval_node(*n.a, p), n.int_exponent);
      return pow(eval_node(*n.a, p), eval_node(*n.b, p));
    case ExprNode::Kind::Call: {
      Jet2 a = eval_node(*n.a, p);
      switch (n.func) {
        case Func::Sin: return sin(a);
        case Func::Cos: return cos(a);
        case Func::Tan: return tan(a);
        case Func::Exp: return exp(a);
        case Func::Log: return log(a);
        case Func::Sqrt: return sqrt(a);
      }
    }
  }
  fail(ErrorCode::InvalidArgument, "corrupt expression node");
}

double eval_node_value(const ExprNode& n, const Vec& p) {
  switch (n.kind) {
    case ExprNode::Kind::Number: return n.number;
    case ExprNode::Kind::Param: return p[n.param];
    case ExprNode::Kind::Neg: return -eval_node_value(*n.a, p);
    case ExprNode::Kind::Add:
      return eval_node_value(*n.a, p) + eval_node_value(*n.b, p);
    case ExprNode::Kind::Sub:
      return eval_node_value(*n.a, p) - eval_node_value(*n.b, p);
    case ExprNode::Kind::Mul:
      return eval_node_value(*n.a, p) * eval_node_value(*n.b, p);
    case ExprNode::Kind::Div: {
      const double d = eval_node_value(*n.b, p);
      if (d == 0.0) fail(ErrorCode::EvalDomain, "division by zero");
      return eval_node_value(*n.a, p) / d;
    }
    case ExprNode::Kind::Pow: {
      const double base = eval_node_value(*n.a, p);
      if (n.has_int_exponent) {
        if (n.int_exponent < 0 && base == 0.0)
          fail(ErrorCode::EvalDomain, "division by zero");
        double r = 1.0;
        const long long m =
            n.int_exponent < 0 ? -n.int_exponent : n.int_exponent;
        for (long long i = 0; i < m; ++i) r *= base;
        return n.int_exponent < 0 ? 1.0 / r : r;
      }
      if (base <= 0.0)
        fail(ErrorCode::EvalDomain, "log of non-positive argument");
      return std::exp(eval_node_value(*n.b, p) * std::log(base));
    }
    case ExprNode::Kind::Call: {
      const double a = eval_node_value(*n.a, p);
      switch (n.func) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Tan: return std::tan(a);
        case Func::Exp: return std::exp(a);
        case Func::Log:
          if (a <= 0.0)
            fail(ErrorCode::EvalDomain, "log of non-positive argument");
          return std::log(a);
        case Func::Sqrt:
          if (a < 0.0)
            fail(ErrorCode::EvalDomain, "sqrt of negative argument");
          return std::sqrt(a);
      }
    }
  }
  fail(ErrorCode::InvalidArgument, "corrupt expression node");
}

bool same_node(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::Number: return a.number == b.number;
    case ExprNode::Kind::Param: return a.param == b.param;
    case ExprNode::Kind::Call:
      return a.func == b.func && same_node(*a.a, *b.a);
    case ExprNode::Kind::Neg: return same_node(*a.a, *b.a);
    default:
      return same_node(*a.a, *b.a) && same_node(*a.b, *b.b);
  }
}

std::string point_to_string(const Vec& p) {
  std::string s = "(";
  for (int i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += format_number(p[i]);
  }
  return s + ")";
}

}  // namespace

Expr parse(const std::string& text, const std::vector<std::string>& params) {
  auto shared = std::make_shared<const std::vector<std::string>>(params);
  Parser parser(text, *shared);
  return Expr(parser.run(), std::move(shared));
}

std::string to_string(const Expr& e) {
  std::string out;
  print(*e.root(), e.params(), out);
  return out;
}

Jet2 eval_jet2(const Expr& e, const Vec& point) {
  if (point.size() != e.param_count())
    fail(ErrorCode::DimensionMismatch,
         "point has length " + std::to_string(point.size()) + ", expected " +
             std::to_string(e.param_count()));
  try {
    return eval_node(*e.root(), point);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::EvalDomain) throw;
    fail(ErrorCode::EvalDomain, std::string(err.what()) + " evaluating '" +
                                    to_string(e) + "' at " +
                                    point_to_string(point));
  }
}

double eval_value(const Expr& e, const Vec& point) {
  if (point.size() != e.param_count())
    fail(ErrorCode::DimensionMismatch,
         "point has length " + std::to_string(point.size()) + ", expected " +
             std::to_string(e.param_count()));
  try {
    return eval_node_value(*e.root(), point);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::EvalDomain) throw;
    fail(ErrorCode::EvalDomain, std::string(err.what()) + " evaluating '" +
                                    to_string(e) + "' at " +
                                    point_to_string(point));
  }
}

bool same_tree(const Expr& a, const Expr& b) {
  return same_node(*a.root(), *b.root());
}

}  // namespace slantlab
