#include "ivt/expr.hpp"

#include <sstream>

namespace ivt {

const char* op_name(Op op) {
  switch (op) {
    case Op::Var: return "var";
    case Op::Const: return "const";
    case Op::Neg: return "neg";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
    case Op::Pow: return "pow";
    case Op::Min: return "min";
    case Op::Max: return "max";
    case Op::Abs: return "abs";
  }
  return "?";
}

int op_arity(Op op) {
  switch (op) {
    case Op::Var:
    case Op::Const:
      return 0;
    case Op::Neg:
    case Op::Pow:
    case Op::Abs:
      return 1;
    default:
      return 2;
  }
}

FunctionExpr FunctionExpr::make(Op op, std::vector<FunctionExpr> kids) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->children = std::move(kids);
  return FunctionExpr(std::move(node));
}

FunctionExpr FunctionExpr::var() { return make(Op::Var, {}); }

FunctionExpr FunctionExpr::constant(Rational value) {
  auto node = std::make_shared<Node>();
  node->op = Op::Const;
  node->value_f64 = value.to_double();
  node->value_f32 = value.to_float();
  node->value = std::move(value);
  return FunctionExpr(std::move(node));
}

FunctionExpr FunctionExpr::neg(FunctionExpr e) {
  return make(Op::Neg, {std::move(e)});
}
FunctionExpr FunctionExpr::add(FunctionExpr l, FunctionExpr r) {
  return make(Op::Add, {std::move(l), std::move(r)});
}
FunctionExpr FunctionExpr::sub(FunctionExpr l, FunctionExpr r) {
  return make(Op::Sub, {std::move(l), std::move(r)});
}
FunctionExpr FunctionExpr::mul(FunctionExpr l, FunctionExpr r) {
  return make(Op::Mul, {std::move(l), std::move(r)});
}
FunctionExpr FunctionExpr::div(FunctionExpr l, FunctionExpr r) {
  return make(Op::Div, {std::move(l), std::move(r)});
}
FunctionExpr FunctionExpr::min(FunctionExpr l, FunctionExpr r) {
  return make(Op::Min, {std::move(l), std::move(r)});
}
FunctionExpr FunctionExpr::max(FunctionExpr l, FunctionExpr r) {
  return make(Op::Max, {std::move(l), std::move(r)});
}
FunctionExpr FunctionExpr::abs(FunctionExpr e) {
  return make(Op::Abs, {std::move(e)});
}

FunctionExpr FunctionExpr::pow(FunctionExpr base, unsigned exponent) {
  auto node = std::make_shared<Node>();
  node->op = Op::Pow;
  node->exponent = exponent;
  node->children.push_back(std::move(base));
  return FunctionExpr(std::move(node));
}

std::size_t FunctionExpr::node_count() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.node_count();
  return n;
}

bool operator==(const FunctionExpr& l, const FunctionExpr& r) {
  if (l.node_ == r.node_) return true;
  if (l.op() != r.op()) return false;
  if (l.op() == Op::Const && l.value() != r.value()) return false;
  if (l.op() == Op::Pow && l.exponent() != r.exponent()) return false;
  const auto& lc = l.node_->children;
  const auto& rc = r.node_->children;
  if (lc.size() != rc.size()) return false;
  for (std::size_t i = 0; i < lc.size(); ++i) {
    if (!(lc[i] == rc[i])) return false;
  }
  return true;
}

// Canonical printer. Each level mirrors one grammar production so the
// output re-parses to the same tree.
namespace {

std::string literal(const Rational& q) {
  const Rational mag = q.abs();
  std::string s = mag.numerator().get_str();
  if (mag.denominator() != 1) s += "/" + mag.denominator().get_str();
  return s;
}

std::string print_expr(const FunctionExpr& e);

std::string print_atom(const FunctionExpr& e) {
  switch (e.op()) {
    case Op::Var:
      return "x";
    case Op::Const:
      return e.value().sign() < 0 ? "(-" + literal(e.value()) + ")"
                                  : literal(e.value());
    case Op::Min:
    case Op::Max:
      return std::string(op_name(e.op())) + "(" + print_expr(e.child(0)) +
             ", " + print_expr(e.child(1)) + ")";
    case Op::Abs:
      return "abs(" + print_expr(e.child(0)) + ")";
    default:
      return "(" + print_expr(e) + ")";
  }
}

std::string print_factor(const FunctionExpr& e) {
  if (e.op() == Op::Pow) {
    return print_atom(e.child(0)) + "^" + std::to_string(e.exponent());
  }
  if (e.op() == Op::Neg) {
    const FunctionExpr& inner = e.child(0);
    if (inner.op() == Op::Const && inner.value().sign() >= 0) {
      // "-3" would fold into a constant.
      return "-(" + literal(inner.value()) + ")";
    }
    if (inner.op() == Op::Pow) return "-" + print_factor(inner);
    return "-" + print_atom(inner);
  }
  return print_atom(e);
}

std::string print_term(const FunctionExpr& e) {
  if (e.op() == Op::Mul || e.op() == Op::Div) {
    return print_term(e.child(0)) + (e.op() == Op::Mul ? " * " : " / ") +
           print_factor(e.child(1));
  }
  return print_factor(e);
}

std::string print_expr(const FunctionExpr& e) {
  if (e.op() == Op::Add || e.op() == Op::Sub) {
    return print_expr(e.child(0)) + (e.op() == Op::Add ? " + " : " - ") +
           print_term(e.child(1));
  }
  return print_term(e);
}

}  // namespace

std::string FunctionExpr::str() const { return print_expr(*this); }

namespace detail {

namespace {

bool render_path(const FunctionExpr& node, const std::vector<int>& path,
                 std::size_t depth, std::ostringstream& out) {
  out << op_name(node.op());
  if (depth == path.size()) return true;
  out << '.' << path[depth] << '.';
  return render_path(node.child(path[depth]), path, depth + 1, out);
}

}  // namespace

void throw_eval_error(const std::string& x, const std::vector<int>& path,
                      const FunctionExpr& root) {
  std::ostringstream out;
  render_path(root, path, 0, out);
  throw EvalError(x, out.str());
}

}  // namespace detail

}  // namespace ivt
