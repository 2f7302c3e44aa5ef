#pragma once
//
// Rings used for evaluation away from plain field points: the quadratic
// extension L = K[b]/(b^2 + c1 b + c0) and truncated Laurent series over
// K or L.  Laurent series back the local expansions of functions on
// Weierstrass curves (at infinity and at arbitrary affine points).
//

#include <algorithm>
#include <climits>
#include <optional>
#include <utility>
#include <vector>

#include "geolrc/exprs.hpp"

namespace geolrc {

/// Elements a + b*beta of K[beta]/(beta^2 + c1 beta + c0).
struct QuadOps {
  using Value = std::pair<Elem, Elem>;
  const Field* f;
  Elem c0, c1;

  QuadOps(const Field& field, Elem c0_, Elem c1_) : f(&field), c0(c0_), c1(c1_) {}

  Value constant(Elem c) const { return {c, 0}; }
  Value zero() const { return {0, 0}; }
  Value one() const { return {1, 0}; }
  Value beta() const { return {0, 1}; }
  bool is_zero(const Value& a) const { return a.first == 0 && a.second == 0; }
  Value add(const Value& a, const Value& b) const {
    return {f->add(a.first, b.first), f->add(a.second, b.second)};
  }
  Value sub(const Value& a, const Value& b) const {
    return {f->sub(a.first, b.first), f->sub(a.second, b.second)};
  }
  Value neg(const Value& a) const { return {f->neg(a.first), f->neg(a.second)}; }
  Value mul(const Value& a, const Value& b) const {
    // (a0 + a1 B)(b0 + b1 B) with B^2 = -c1 B - c0.
    Elem s0 = f->mul(a.first, b.first);
    Elem s1 = f->add(f->mul(a.first, b.second), f->mul(a.second, b.first));
    Elem s2 = f->mul(a.second, b.second);
    return {f->sub(s0, f->mul(s2, c0)), f->sub(s1, f->mul(s2, c1))};
  }
  Value conj(const Value& a) const {
    // The other root is -c1 - B.
    return {f->sub(a.first, f->mul(a.second, c1)), f->neg(a.second)};
  }
  Elem norm(const Value& a) const {
    // a0^2 - c1 a0 a1 + c0 a1^2
    Elem t = f->mul(a.first, a.first);
    t = f->sub(t, f->mul(c1, f->mul(a.first, a.second)));
    return f->add(t, f->mul(c0, f->mul(a.second, a.second)));
  }
  std::optional<Value> inv(const Value& a) const {
    Elem n = norm(a);
    if (n == 0) return std::nullopt;
    Value c = conj(a);
    Elem ni = f->inv(n);
    return Value{f->mul(c.first, ni), f->mul(c.second, ni)};
  }
  std::optional<Value> div(const Value& a, const Value& b) const {
    auto bi = inv(b);
    if (!bi) return std::nullopt;
    return mul(a, *bi);
  }
  std::optional<Value> pow(Value a, std::int64_t e) const {
    if (e < 0) {
      auto ai = inv(a);
      if (!ai) return std::nullopt;
      a = *ai;
      e = -e;
    }
    Value r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

/// Truncated Laurent series t^val * (c[0] + c[1] t + ...).  Terms beyond
/// the stored coefficients are unknown.  An empty coefficient vector is a
/// series known to vanish below t^val.
template <class R>
struct Laurent {
  int val = 0;
  std::vector<typename R::Value> c;
};

template <class R>
struct LaurentOps {
  using V = typename R::Value;
  using Value = Laurent<R>;
  R ring;
  int precision;

  LaurentOps(R r, int prec) : ring(std::move(r)), precision(prec) {}

  Value normalize(Value a) const {
    std::size_t lead = 0;
    while (lead < a.c.size() && ring.is_zero(a.c[lead])) ++lead;
    if (lead) {
      a.c.erase(a.c.begin(), a.c.begin() + static_cast<std::ptrdiff_t>(lead));
      a.val += static_cast<int>(lead);
    }
    return a;
  }
  Value constant(Elem k) const { return lift(ring.constant(k)); }
  Value lift(const V& v) const {
    Value r;
    if (ring.is_zero(v)) {
      r.val = precision;
      return r;
    }
    r.c.assign(static_cast<std::size_t>(precision), ring.zero());
    r.c[0] = v;
    return r;
  }
  /// The uniformizer itself.
  Value param() const {
    Value r;
    r.val = 1;
    r.c.assign(static_cast<std::size_t>(precision), ring.zero());
    r.c[0] = ring.one();
    return r;
  }
  int abs_prec(const Value& a) const { return a.val + static_cast<int>(a.c.size()); }

  Value add(const Value& a, const Value& b) const {
    const int lo = std::min(a.val, b.val);
    const int hi = std::min(abs_prec(a), abs_prec(b));
    Value r;
    r.val = lo;
    if (hi <= lo) {
      r.val = hi;
      return r;
    }
    r.c.assign(static_cast<std::size_t>(hi - lo), ring.zero());
    for (int e = lo; e < hi; ++e) {
      V s = ring.zero();
      if (e >= a.val && e < abs_prec(a)) s = ring.add(s, a.c[e - a.val]);
      if (e >= b.val && e < abs_prec(b)) s = ring.add(s, b.c[e - b.val]);
      r.c[e - lo] = s;
    }
    return normalize(std::move(r));
  }
  Value neg(const Value& a) const {
    Value r = a;
    for (auto& x : r.c) x = ring.neg(x);
    return r;
  }
  Value sub(const Value& a, const Value& b) const { return add(a, neg(b)); }
  Value mul(const Value& a, const Value& b) const {
    Value r;
    r.val = a.val + b.val;
    const std::size_t n = std::min(a.c.size(), b.c.size());
    if (n == 0) {
      // Known to vanish below the smaller absolute precision bound.
      if (a.c.empty() && b.c.empty()) r.val = a.val + b.val;
      else if (a.c.empty()) r.val = a.val + b.val;
      else r.val = a.val + b.val;
      return r;
    }
    r.c.assign(n, ring.zero());
    for (std::size_t i = 0; i < n; ++i) {
      if (ring.is_zero(a.c[i])) continue;
      for (std::size_t j = 0; i + j < n; ++j) r.c[i + j] = ring.add(r.c[i + j], ring.mul(a.c[i], b.c[j]));
    }
    return normalize(std::move(r));
  }
  std::optional<Value> inv(const Value& a) const {
    if (a.c.empty()) return std::nullopt;
    const std::size_t n = a.c.size();
    auto i0 = ring.inv(a.c[0]);
    if (!i0) return std::nullopt;
    Value r;
    r.val = -a.val;
    r.c.assign(n, ring.zero());
    r.c[0] = *i0;
    for (std::size_t k = 1; k < n; ++k) {
      V s = ring.zero();
      for (std::size_t j = 1; j <= k; ++j) s = ring.add(s, ring.mul(a.c[j], r.c[k - j]));
      r.c[k] = ring.neg(ring.mul(s, *i0));
    }
    return r;
  }
  std::optional<Value> div(const Value& a, const Value& b) const {
    auto bi = inv(b);
    if (!bi) return std::nullopt;
    return mul(a, *bi);
  }
  std::optional<Value> pow(Value a, std::int64_t e) const {
    if (e < 0) {
      auto ai = inv(a);
      if (!ai) return std::nullopt;
      a = *ai;
      e = -e;
    }
    Value r = lift(ring.one());
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }
};

/// Outcome of reading off a function value from its Laurent expansion.
template <class V>
struct SeriesValue {
  bool pole = false;
  bool unresolved = false;  // all known coefficients vanished
  V value{};
};

template <class R>
SeriesValue<typename R::Value> series_value(const LaurentOps<R>& ops, const Laurent<R>& s) {
  SeriesValue<typename R::Value> out;
  if (s.c.empty()) {
    out.unresolved = s.val <= 0;
    out.value = ops.ring.zero();
    return out;
  }
  if (s.val < 0) {
    out.pole = true;
    return out;
  }
  out.value = s.val == 0 ? s.c[0] : ops.ring.zero();
  return out;
}

/// Weierstrass coefficients lifted into a ring.
template <class R>
struct WeierstrassCoeffs {
  typename R::Value a1, a2, a3, a4, a6;
};

/// F(x,y) = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 on series.
template <class R>
Laurent<R> weierstrass_residual(const LaurentOps<R>& L, const WeierstrassCoeffs<R>& w,
                                const Laurent<R>& x, const Laurent<R>& y) {
  auto k = [&](const typename R::Value& v) { return L.lift(v); };
  auto lhs = L.add(L.mul(y, y), L.add(L.mul(k(w.a1), L.mul(x, y)), L.mul(k(w.a3), y)));
  auto x2 = L.mul(x, x);
  auto rhs = L.add(L.mul(x2, x), L.add(L.mul(k(w.a2), x2), L.add(L.mul(k(w.a4), x), k(w.a6))));
  return L.sub(lhs, rhs);
}

/// Expansions (x(s), y(s)) at the point at infinity with s = -x/y.
template <class R>
std::pair<Laurent<R>, Laurent<R>> expansion_at_infinity(const LaurentOps<R>& L,
                                                        const WeierstrassCoeffs<R>& c) {
  // w = -1/y solves w = s^3 + a1 s w + a2 s^2 w + a3 w^2 + a4 s w^2 + a6 w^3.
  const int P = L.precision + 4;
  LaurentOps<R> W(L.ring, P);
  auto s = W.param();
  auto k = [&](const typename R::Value& v) { return W.lift(v); };
  Laurent<R> w;
  w.val = P;
  auto s2 = W.mul(s, s);
  auto s3 = W.mul(s2, s);
  for (int it = 0; it < P + 2; ++it) {
    auto w2 = W.mul(w, w);
    auto next = s3;
    next = W.add(next, W.mul(k(c.a1), W.mul(s, w)));
    next = W.add(next, W.mul(k(c.a2), W.mul(s2, w)));
    next = W.add(next, W.mul(k(c.a3), w2));
    next = W.add(next, W.mul(k(c.a4), W.mul(s, w2)));
    next = W.add(next, W.mul(k(c.a6), W.mul(w2, w)));
    w = next;
  }
  // w has valuation 3; s has full precision, so x = s/w and y = -1/w.
  auto wi = W.inv(w);
  auto x = W.mul(s, *wi);
  auto y = W.neg(*wi);
  auto trunc = [&](Laurent<R> v) {
    if (static_cast<int>(v.c.size()) > L.precision) v.c.resize(static_cast<std::size_t>(L.precision));
    return v;
  };
  return {trunc(x), trunc(y)};
}

/// Expansions (x(s), y(s)) at an affine point (x0, y0), with uniformizer
/// x - x0 when dF/dy != 0 there, else y - y0.
template <class R>
std::pair<Laurent<R>, Laurent<R>> expansion_at_point(const LaurentOps<R>& L,
                                                     const WeierstrassCoeffs<R>& c,
                                                     const typename R::Value& x0,
                                                     const typename R::Value& y0) {
  const R& r = L.ring;
  auto two = r.add(r.one(), r.one());
  auto three = r.add(two, r.one());
  // Fy = 2y + a1 x + a3 ; Fx = a1 y - 3x^2 - 2 a2 x - a4
  auto Fy = r.add(r.add(r.mul(two, y0), r.mul(c.a1, x0)), c.a3);
  auto Fx = r.sub(r.sub(r.sub(r.mul(c.a1, y0), r.mul(three, r.mul(x0, x0))),
                        r.mul(two, r.mul(c.a2, x0))),
                  c.a4);
  auto s = L.param();
  const bool along_x = !r.is_zero(Fy);
  auto d = along_x ? Fy : Fx;
  if (r.is_zero(d)) throw ConstructionError("singular point in local expansion");
  auto dinv = *r.inv(d);
  Laurent<R> x = L.add(L.lift(x0), along_x ? s : Laurent<R>{L.precision, {}});
  Laurent<R> y = L.add(L.lift(y0), along_x ? Laurent<R>{L.precision, {}} : s);
  for (int it = 0; it < L.precision + 2; ++it) {
    auto F = weierstrass_residual(L, c, x, y);
    auto corr = L.mul(F, L.lift(dinv));
    if (along_x) y = L.sub(y, corr);
    else x = L.sub(x, corr);
  }
  return {x, y};
}

}  // namespace geolrc
