#pragma once
//
// Rational expressions over a finite field in the variables x, y, z, w, u,
// v.  Trees are immutable and shared.  Evaluation is generic over a value
// ring ("Ops"), so the same tree can be evaluated at field points, at
// points over a quadratic extension, or on Laurent series.
//

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geolrc/gf.hpp"

namespace geolrc {

inline constexpr int kNumVars = 6;
/// Variable index for a name in "xyzwuv", or -1.
int var_index(char name);
char var_name(int index);

class RatExpr {
 public:
  enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow };

  struct Node {
    Kind kind;
    Elem value = 0;        // Const
    int var = 0;           // Var
    std::int64_t exp = 0;  // Pow
    std::shared_ptr<const Node> lhs, rhs;
  };
  using NodePtr = std::shared_ptr<const Node>;

  RatExpr() = default;
  RatExpr(FieldPtr field, NodePtr root) : field_(std::move(field)), root_(std::move(root)) {}

  static RatExpr parse(std::string_view text, FieldPtr field);
  static RatExpr constant(FieldPtr field, Elem c);
  static RatExpr variable(FieldPtr field, char name);

  const FieldPtr& field() const { return field_; }
  const NodePtr& root() const { return root_; }
  bool empty() const { return !root_; }

  RatExpr operator+(const RatExpr& o) const;
  RatExpr operator-(const RatExpr& o) const;
  RatExpr operator*(const RatExpr& o) const;
  RatExpr operator/(const RatExpr& o) const;
  RatExpr operator-() const;
  RatExpr pow(std::int64_t e) const;

  /// Structural equality.
  bool operator==(const RatExpr& o) const;
  std::string to_string() const;
  /// Bit mask of the variables that occur.
  unsigned free_vars() const;

 private:
  FieldPtr field_;
  NodePtr root_;
};

/// Field-valued bindings, one optional slot per variable.
using ElemBindings = std::array<std::optional<Elem>, kNumVars>;

/// Evaluate over the field; nullopt means Pole.  Throws EvalError when a
/// variable occurring in the tree is unbound.
std::optional<Elem> eval(const RatExpr& e, const ElemBindings& b);

/// Spec-style evaluation with named bindings.
std::optional<FieldElement> eval(const RatExpr& e, const std::map<char, FieldElement>& bindings);

/// Generic evaluation.  Ops must provide Value, constant(Elem),
/// add/sub/mul/neg(Value...), div -> optional<Value>, pow(Value, int64) ->
/// optional<Value>.
template <class Ops>
std::optional<typename Ops::Value> eval_with(
    const RatExpr::Node& n, const Ops& ops,
    const std::array<std::optional<typename Ops::Value>, kNumVars>& b) {
  using K = RatExpr::Kind;
  switch (n.kind) {
    case K::Const:
      return ops.constant(n.value);
    case K::Var:
      if (!b[n.var]) throw EvalError(std::string("unbound variable ") + var_name(n.var));
      return *b[n.var];
    case K::Neg: {
      auto a = eval_with(*n.lhs, ops, b);
      if (!a) return std::nullopt;
      return ops.neg(*a);
    }
    case K::Pow: {
      auto a = eval_with(*n.lhs, ops, b);
      if (!a) return std::nullopt;
      return ops.pow(*a, n.exp);
    }
    default:
      break;
  }
  auto a = eval_with(*n.lhs, ops, b);
  auto c = eval_with(*n.rhs, ops, b);
  if (!a || !c) return std::nullopt;
  switch (n.kind) {
    case K::Add:
      return ops.add(*a, *c);
    case K::Sub:
      return ops.sub(*a, *c);
    case K::Mul:
      return ops.mul(*a, *c);
    case K::Div:
      return ops.div(*a, *c);
    default:
      throw EvalError("bad expression node");
  }
}

template <class Ops>
std::optional<typename Ops::Value> eval_with(
    const RatExpr& e, const Ops& ops,
    const std::array<std::optional<typename Ops::Value>, kNumVars>& b) {
  if (e.empty()) throw EvalError("empty expression");
  return eval_with(*e.root(), ops, b);
}

/// Ops over the base field.
struct FieldOps {
  using Value = Elem;
  const Field* f;
  explicit FieldOps(const Field& field) : f(&field) {}
  Value constant(Elem c) const { return c; }
  Value zero() const { return 0; }
  Value one() const { return 1; }
  bool is_zero(Value a) const { return a == 0; }
  Value add(Value a, Value b) const { return f->add(a, b); }
  Value sub(Value a, Value b) const { return f->sub(a, b); }
  Value mul(Value a, Value b) const { return f->mul(a, b); }
  Value neg(Value a) const { return f->neg(a); }
  std::optional<Value> inv(Value a) const {
    if (a == 0) return std::nullopt;
    return f->inv(a);
  }
  std::optional<Value> div(Value a, Value b) const {
    if (b == 0) return std::nullopt;
    return f->div(a, b);
  }
  std::optional<Value> pow(Value a, std::int64_t e) const {
    if (a == 0 && e < 0) return std::nullopt;
    return f->pow(a, e);
  }
};

/// Sparse multivariate polynomial with field coefficients.
class Poly {
 public:
  using Mono = std::array<int, kNumVars>;

  Poly() = default;
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  static Poly constant(FieldPtr field, Elem c);
  static Poly variable(FieldPtr field, int var);

  const FieldPtr& field() const { return field_; }
  const std::map<Mono, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Mono& m, Elem c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scale(Elem c) const;
  Poly pow(unsigned e) const;
  Poly derivative(int var) const;

  /// Total degree, -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Elem eval(const std::array<Elem, kNumVars>& pt) const;

  RatExpr to_expr() const;

 private:
  FieldPtr field_;
  std::map<Mono, Elem> terms_;
};

/// Expand an expression with only constant denominators.  Throws EvalError
/// when a non-constant denominator or negative power is present.
Poly to_polynomial(const RatExpr& e);

/// Replace variables by expressions (unset slots are left alone).
RatExpr substitute(const RatExpr& e, const std::array<std::optional<RatExpr>, kNumVars>& subs);

}  // namespace geolrc
