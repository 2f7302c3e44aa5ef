#include "geolrc/exprs.hpp"

#include <cctype>

namespace geolrc {

namespace {

constexpr std::string_view kVarNames = "xyzwuv";

using Node = RatExpr::Node;
using NodePtr = RatExpr::NodePtr;
using Kind = RatExpr::Kind;

NodePtr make_node(Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

NodePtr make_const(Elem c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = c;
  return n;
}

NodePtr make_var(int v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = v;
  return n;
}

NodePtr make_pow(NodePtr base, std::int64_t e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->lhs = std::move(base);
  n->exp = e;
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, const Field& field) : s_(text), f_(field) {}

  NodePtr parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    NodePtr e = expr();
    skip();
    if (pos_ < s_.size())
      throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool starts_primary(char c) const {
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        NodePtr rhs = term();
        lhs = make_node(c == '+' ? Kind::Add : Kind::Sub, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        NodePtr rhs = unary();
        lhs = make_node(c == '*' ? Kind::Mul : Kind::Div, lhs, rhs);
      } else if (starts_primary(c)) {
        NodePtr rhs = power();
        lhs = make_node(Kind::Mul, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (peek() == '-') {
      ++pos_;
      return make_node(Kind::Neg, unary());
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (peek() == '^') {
      ++pos_;
      skip();
      bool paren = false;
      if (pos_ < s_.size() && s_[pos_] == '(') {
        paren = true;
        ++pos_;
        skip();
      }
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
        neg = s_[pos_] == '-';
        ++pos_;
        skip();
      }
      std::size_t start = pos_;
      std::int64_t e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + (s_[pos_] - '0');
        if (e > (1ll << 40)) throw ParseError("exponent too large", start);
        ++pos_;
      }
      if (pos_ == start) throw ParseError("expected integer exponent", pos_);
      if (paren) {
        if (peek() != ')') throw ParseError("expected ')'", pos_);
        ++pos_;
      }
      base = make_pow(base, neg ? -e : e);
    }
    return base;
  }

  NodePtr primary() {
    char c = peek();
    if (c == '\0') throw ParseError("unexpected end of expression", pos_);
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      const std::int64_t p = f_.characteristic();
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = (v * 10 + (s_[pos_] - '0')) % p;
        ++pos_;
      }
      return make_const(f_.from_int(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t at = pos_;
      ++pos_;
      if (c == 'a') {
        if (f_.degree() < 2)
          throw ParseError("unknown variable 'a' (prime field has no generator literal)", at);
        return make_const(f_.generator_literal());
      }
      int v = var_index(c);
      if (v < 0) throw ParseError("unknown variable '" + std::string(1, c) + "'", at);
      return make_var(v);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string_view s_;
  const Field& f_;
  std::size_t pos_ = 0;
};

int prec(const Node& n, const Field& f) {
  switch (n.kind) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Neg:
      return 3;
    case Kind::Pow:
      return 4;
    case Kind::Var:
      return 5;
    case Kind::Const: {
      std::string s = f.format(n.value);
      bool digits = !s.empty();
      for (char ch : s) digits = digits && std::isdigit(static_cast<unsigned char>(ch));
      return (digits || s == "a") ? 5 : 0;
    }
  }
  return 0;
}

void print(const Node& n, const Field& f, std::string& out);

void print_child(const Node& c, const Field& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print(c, f, out);
  if (parens) out += ')';
}

void print(const Node& n, const Field& f, std::string& out) {
  switch (n.kind) {
    case Kind::Const:
      out += f.format(n.value);
      return;
    case Kind::Var:
      out += var_name(n.var);
      return;
    case Kind::Neg:
      out += '-';
      print_child(*n.lhs, f, prec(*n.lhs, f) < 3, out);
      return;
    case Kind::Pow:
      print_child(*n.lhs, f, prec(*n.lhs, f) < 5, out);
      out += '^';
      out += std::to_string(n.exp);
      return;
    default:
      break;
  }
  const int p = prec(n, f);
  const char op = n.kind == Kind::Add ? '+' : n.kind == Kind::Sub ? '-' : n.kind == Kind::Mul ? '*' : '/';
  print_child(*n.lhs, f, prec(*n.lhs, f) < p, out);
  out += op;
  print_child(*n.rhs, f, prec(*n.rhs, f) <= p, out);
}

bool same(const Node* a, const Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Const:
      return a->value == b->value;
    case Kind::Var:
      return a->var == b->var;
    case Kind::Pow:
      return a->exp == b->exp && same(a->lhs.get(), b->lhs.get());
    case Kind::Neg:
      return same(a->lhs.get(), b->lhs.get());
    default:
      return same(a->lhs.get(), b->lhs.get()) && same(a->rhs.get(), b->rhs.get());
  }
}

unsigned vars_of(const Node* n) {
  if (!n) return 0;
  if (n->kind == Kind::Var) return 1u << n->var;
  return vars_of(n->lhs.get()) | vars_of(n->rhs.get());
}

}  // namespace

int var_index(char name) {
  auto i = kVarNames.find(name);
  return i == std::string_view::npos ? -1 : static_cast<int>(i);
}

char var_name(int index) { return kVarNames.at(static_cast<std::size_t>(index)); }

RatExpr RatExpr::parse(std::string_view text, FieldPtr field) {
  Parser p(text, *field);
  NodePtr root = p.parse();
  return RatExpr(std::move(field), std::move(root));
}

RatExpr RatExpr::constant(FieldPtr field, Elem c) { return RatExpr(std::move(field), make_const(c)); }

RatExpr RatExpr::variable(FieldPtr field, char name) {
  int v = var_index(name);
  if (v < 0) throw ParseError("unknown variable '" + std::string(1, name) + "'", 0);
  return RatExpr(std::move(field), make_var(v));
}

RatExpr RatExpr::operator+(const RatExpr& o) const { return {field_, make_node(Kind::Add, root_, o.root_)}; }
RatExpr RatExpr::operator-(const RatExpr& o) const { return {field_, make_node(Kind::Sub, root_, o.root_)}; }
RatExpr RatExpr::operator*(const RatExpr& o) const { return {field_, make_node(Kind::Mul, root_, o.root_)}; }
RatExpr RatExpr::operator/(const RatExpr& o) const { return {field_, make_node(Kind::Div, root_, o.root_)}; }
RatExpr RatExpr::operator-() const { return {field_, make_node(Kind::Neg, root_)}; }
RatExpr RatExpr::pow(std::int64_t e) const { return {field_, make_pow(root_, e)}; }

bool RatExpr::operator==(const RatExpr& o) const { return same(root_.get(), o.root_.get()); }

std::string RatExpr::to_string() const {
  if (!root_) return "";
  std::string out;
  print(*root_, *field_, out);
  return out;
}

unsigned RatExpr::free_vars() const { return vars_of(root_.get()); }

std::optional<Elem> eval(const RatExpr& e, const ElemBindings& b) {
  return eval_with(e, FieldOps(*e.field()), b);
}

std::optional<FieldElement> eval(const RatExpr& e, const std::map<char, FieldElement>& bindings) {
  ElemBindings b{};
  for (const auto& [name, val] : bindings) {
    int v = var_index(name);
    if (v < 0) throw EvalError("unknown variable '" + std::string(1, name) + "'");
    if (!val.field()->same_as(*e.field())) throw FieldMismatch();
    b[v] = val.value();
  }
  auto r = eval(e, b);
  if (!r) return std::nullopt;
  return FieldElement(e.field(), *r);
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::constant(FieldPtr field, Elem c) {
  Poly p(std::move(field));
  p.add_term(Mono{}, c);
  return p;
}

Poly Poly::variable(FieldPtr field, int var) {
  Poly p(std::move(field));
  Mono m{};
  m[var] = 1;
  p.add_term(m, 1);
  return p;
}

void Poly::add_term(const Mono& m, Elem c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = field_->add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  if (!r.field_) r.field_ = o.field_;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r(field_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_->neg(c));
  return r;
}

Poly Poly::scale(Elem c) const {
  Poly r(field_);
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, field_->mul(v, c));
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(field_ ? field_ : o.field_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Mono m;
      for (int i = 0; i < kNumVars; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, r.field_->mul(ca, cb));
    }
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(field_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::derivative(int var) const {
  Poly r(field_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Mono d = m;
    --d[var];
    r.add_term(d, field_->mul(field_->from_int(m[var]), c));
  }
  return r;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int v : m) s += v;
    d = std::max(d, s);
  }
  return d;
}

bool Poly::is_homogeneous() const {
  int d = -2;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int v : m) s += v;
    if (d == -2) d = s;
    if (s != d) return false;
  }
  return true;
}

Elem Poly::eval(const std::array<Elem, kNumVars>& pt) const {
  const Field& f = *field_;
  Elem acc = 0;
  for (const auto& [m, c] : terms_) {
    Elem t = c;
    for (int i = 0; i < kNumVars && t != 0; ++i)
      if (m[i]) t = f.mul(t, f.pow(pt[i], m[i]));
    acc = f.add(acc, t);
  }
  return acc;
}

RatExpr Poly::to_expr() const {
  if (terms_.empty()) return RatExpr::constant(field_, 0);
  RatExpr acc;
  // Highest degree first reads naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    RatExpr term;
    if (c != 1) term = RatExpr::constant(field_, c);
    for (int i = 0; i < kNumVars; ++i) {
      if (!m[i]) continue;
      RatExpr v = RatExpr::variable(field_, var_name(i));
      if (m[i] > 1) v = v.pow(m[i]);
      term = term.empty() ? v : term * v;
    }
    if (term.empty()) term = RatExpr::constant(field_, c);
    acc = acc.empty() ? term : acc + term;
  }
  return acc;
}

namespace {

Poly to_poly(const Node& n, const FieldPtr& f) {
  switch (n.kind) {
    case Kind::Const:
      return Poly::constant(f, n.value);
    case Kind::Var:
      return Poly::variable(f, n.var);
    case Kind::Add:
      return to_poly(*n.lhs, f) + to_poly(*n.rhs, f);
    case Kind::Sub:
      return to_poly(*n.lhs, f) - to_poly(*n.rhs, f);
    case Kind::Mul:
      return to_poly(*n.lhs, f) * to_poly(*n.rhs, f);
    case Kind::Neg:
      return -to_poly(*n.lhs, f);
    case Kind::Pow:
      if (n.exp < 0) throw EvalError("negative power in polynomial expression");
      return to_poly(*n.lhs, f).pow(static_cast<unsigned>(n.exp));
    case Kind::Div: {
      Poly d = to_poly(*n.rhs, f);
      if (d.degree() != 0) throw EvalError("non-constant denominator in polynomial expression");
      return to_poly(*n.lhs, f).scale(f->inv(d.terms().begin()->second));
    }
  }
  throw EvalError("bad expression node");
}

NodePtr subst(const NodePtr& n, const std::array<std::optional<RatExpr>, kNumVars>& subs) {
  if (!n) return n;
  if (n->kind == Kind::Var) return subs[n->var] ? subs[n->var]->root() : n;
  if (n->kind == Kind::Const) return n;
  auto c = std::make_shared<Node>(*n);
  c->lhs = subst(n->lhs, subs);
  c->rhs = subst(n->rhs, subs);
  return c;
}

}  // namespace

Poly to_polynomial(const RatExpr& e) {
  if (e.empty()) throw EvalError("empty expression");
  return to_poly(*e.root(), e.field());
}

RatExpr substitute(const RatExpr& e, const std::array<std::optional<RatExpr>, kNumVars>& subs) {
  return RatExpr(e.field(), subst(e.root(), subs));
}

}  // namespace geolrc
