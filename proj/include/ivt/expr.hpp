#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ivt/errors.hpp"
#include "ivt/rational.hpp"
#include "ivt/scalar.hpp"

namespace ivt {

enum class Op { Var, Const, Neg, Add, Sub, Mul, Div, Pow, Min, Max, Abs };

const char* op_name(Op op);
int op_arity(Op op);

// Immutable AST for a continuous function of one variable x. Copies share
// nodes; evaluation is pure and safe from concurrent threads.
class FunctionExpr {
 public:
  static FunctionExpr var();
  static FunctionExpr constant(Rational value);
  static FunctionExpr neg(FunctionExpr e);
  static FunctionExpr add(FunctionExpr l, FunctionExpr r);
  static FunctionExpr sub(FunctionExpr l, FunctionExpr r);
  static FunctionExpr mul(FunctionExpr l, FunctionExpr r);
  static FunctionExpr div(FunctionExpr l, FunctionExpr r);
  static FunctionExpr pow(FunctionExpr base, unsigned exponent);
  static FunctionExpr min(FunctionExpr l, FunctionExpr r);
  static FunctionExpr max(FunctionExpr l, FunctionExpr r);
  static FunctionExpr abs(FunctionExpr e);

  Op op() const;
  const FunctionExpr& child(int i) const;
  const Rational& value() const;
  unsigned exponent() const;

  // Constant approximations cached at construction.
  double value_f64() const;
  float value_f32() const;

  // Canonical text; parse(e.str()) == e structurally.
  std::string str() const;

  std::size_t node_count() const;

  friend bool operator==(const FunctionExpr& l, const FunctionExpr& r);

 private:
  struct Node;
  explicit FunctionExpr(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  static FunctionExpr make(Op op, std::vector<FunctionExpr> kids);

  std::shared_ptr<const Node> node_;
};

struct FunctionExpr::Node {
  Op op = Op::Var;
  Rational value;
  double value_f64 = 0.0;
  float value_f32 = 0.0F;
  unsigned exponent = 0;
  std::vector<FunctionExpr> children;
};

inline Op FunctionExpr::op() const { return node_->op; }
inline const FunctionExpr& FunctionExpr::child(int i) const {
  return node_->children[static_cast<std::size_t>(i)];
}
inline const Rational& FunctionExpr::value() const { return node_->value; }
inline unsigned FunctionExpr::exponent() const { return node_->exponent; }
inline double FunctionExpr::value_f64() const { return node_->value_f64; }
inline float FunctionExpr::value_f32() const { return node_->value_f32; }

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*      juxtaposition means '*'
//   factor := '-'? atom ('^' digits)?
//   atom   := 'x' | literal | '(' expr ')' | ('min'|'max') '(' expr ',' expr ')'
//           | 'abs' '(' expr ')'
//   literal:= digits | digits '/' digits | digits? '.' digits
// A literal directly after a unary '-' (and not raised to a power) is folded
// into a negative constant. "-x^2" is -(x^2).
FunctionExpr parse(std::string_view text);

namespace detail {

[[noreturn]] void throw_eval_error(const std::string& x,
                                   const std::vector<int>& path,
                                   const FunctionExpr& root);

template <Scalar T>
T constant_as(const FunctionExpr& e) {
  if constexpr (std::is_same_v<T, double>) {
    return e.value_f64();
  } else if constexpr (std::is_same_v<T, float>) {
    return e.value_f32();
  } else {
    return from_rational<T>(e.value());
  }
}

template <Scalar T>
T power(const T& base, unsigned exponent) {
  if constexpr (std::is_same_v<T, Rational>) {
    return base.pow(exponent);
  } else {
    T result(1);
    T b = base;
    while (exponent != 0) {
      if (exponent & 1U) result = result * b;
      exponent >>= 1U;
      if (exponent != 0) b = b * b;
    }
    return result;
  }
}

template <Scalar T>
T evaluate_node(const FunctionExpr& e, const T& x, std::vector<int>& path,
                const FunctionExpr& root) {
  auto kid = [&](int i) {
    path.push_back(i);
    T v = evaluate_node(e.child(i), x, path, root);
    path.pop_back();
    return v;
  };
  switch (e.op()) {
    case Op::Var:
      return x;
    case Op::Const:
      return constant_as<T>(e);
    case Op::Neg:
      return -kid(0);
    case Op::Add:
      return kid(0) + kid(1);
    case Op::Sub:
      return kid(0) - kid(1);
    case Op::Mul:
      return kid(0) * kid(1);
    case Op::Div: {
      const T num = kid(0);
      const T den = kid(1);
      if (den == T(0)) throw_eval_error(to_string(x), path, root);
      return num / den;
    }
    case Op::Pow:
      return power(kid(0), e.exponent());
    case Op::Min: {
      T l = kid(0);
      T r = kid(1);
      return r < l ? r : l;
    }
    case Op::Max: {
      T l = kid(0);
      T r = kid(1);
      return l < r ? r : l;
    }
    case Op::Abs:
      return abs_value(kid(0));
  }
  throw Error("corrupt expression node");
}

}  // namespace detail

// Value of f at x in the scalar's arithmetic. Throws EvalError when a
// division's denominator is zero at x.
template <Scalar T>
T evaluate(const FunctionExpr& f, const T& x) {
  std::vector<int> path;
  return detail::evaluate_node(f, x, path, f);
}

inline Rational eval_exact(const FunctionExpr& f, const Rational& x) {
  return evaluate(f, x);
}

inline double eval_float(const FunctionExpr& f, double x) {
  return evaluate(f, x);
}

}  // namespace ivt
