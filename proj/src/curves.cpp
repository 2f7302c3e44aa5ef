#include "geolrc/curves.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>

#include "geolrc/series.hpp"

namespace geolrc {

namespace {

constexpr int kSeriesPrecision = 40;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

ProjPoint normalize(const Field& f, std::vector<Elem> coords) {
  std::size_t last = coords.size();
  while (last > 0 && coords[last - 1] == 0) --last;
  if (last == 0) throw ConstructionError("projective point with all coordinates zero");
  Elem s = f.inv(coords[last - 1]);
  for (auto& c : coords) c = f.mul(c, s);
  return ProjPoint{std::move(coords)};
}

std::string format_point(const Field& f, const ProjPoint& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    if (i) out += ", ";
    out += f.format(p.c[i]);
  }
  return out + "]";
}

std::vector<ProjPoint> projective_space(const Field& f, int dim) {
  const Elem q = f.order();
  std::vector<ProjPoint> out;
  // Last nonzero coordinate at index `lead`, equal to 1; earlier ones free.
  for (int lead = 0; lead <= dim; ++lead) {
    std::uint64_t count = 1;
    for (int i = 0; i < lead; ++i) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<Elem> c(static_cast<std::size_t>(dim + 1), 0);
      std::uint64_t v = code;
      for (int i = lead - 1; i >= 0; --i) {
        c[static_cast<std::size_t>(i)] = static_cast<Elem>(v % q);
        v /= q;
      }
      c[static_cast<std::size_t>(lead)] = 1;
      out.push_back(ProjPoint{std::move(c)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint> enumerate_plane_curve(const RatExpr& eq) {
  Poly p = to_polynomial(eq);
  if (!p.is_homogeneous()) throw ConstructionError("plane curve equation is not homogeneous");
  for (const auto& [m, c] : p.terms())
    for (int i = 3; i < kNumVars; ++i)
      if (m[i]) throw ConstructionError("plane curve equation uses a variable other than x, y, z");
  const Field& f = *eq.field();
  std::vector<ProjPoint> out;
  for (auto& pt : projective_space(f, 2)) {
    if (p.eval({pt.c[0], pt.c[1], pt.c[2], 0, 0, 0}) == 0) out.push_back(pt);
  }
  return out;
}

std::vector<ProjPoint> enumerate_surface(const RatExpr& fexpr, int r) {
  const Field& f = *fexpr.field();
  if (r < 1 || (f.order() - 1) % static_cast<Elem>(r + 1) != 0)
    throw ConstructionError("r+1 = " + std::to_string(r + 1) + " does not divide q-1 = " +
                            std::to_string(f.order() - 1));
  Poly p = to_polynomial(fexpr);
  if (!p.is_homogeneous() || p.degree() != r + 1)
    throw ConstructionError("surface polynomial must be homogeneous of degree r+1");
  std::vector<ProjPoint> out;
  for (auto& pt : projective_space(f, 3)) {
    Elem lhs = f.pow(pt.c[3], r + 1);
    Elem rhs = p.eval({pt.c[0], pt.c[1], pt.c[2], 0, 0, 0});
    if (lhs == rhs) out.push_back(pt);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weierstrass curves

Elem weierstrass_discriminant(const Field& f, Elem a1, Elem a2, Elem a3, Elem a4, Elem a6) {
  auto k = [&](std::int64_t v) { return f.from_int(v); };
  auto m = [&](Elem a, Elem b) { return f.mul(a, b); };
  Elem b2 = f.add(m(a1, a1), m(k(4), a2));
  Elem b4 = f.add(m(k(2), a4), m(a1, a3));
  Elem b6 = f.add(m(a3, a3), m(k(4), a6));
  Elem b8 = m(m(a1, a1), a6);
  b8 = f.add(b8, m(k(4), m(a2, a6)));
  b8 = f.sub(b8, m(a1, m(a3, a4)));
  b8 = f.add(b8, m(a2, m(a3, a3)));
  b8 = f.sub(b8, m(a4, a4));
  Elem d = f.neg(m(m(b2, b2), b8));
  d = f.sub(d, m(k(8), m(b4, m(b4, b4))));
  d = f.sub(d, m(k(27), m(b6, b6)));
  d = f.add(d, m(k(9), m(b2, m(b4, b6))));
  return d;
}

WeierstrassCurve WeierstrassCurve::make(FieldPtr field, Elem a1, Elem a2, Elem a3, Elem a4, Elem a6) {
  WeierstrassCurve E{std::move(field), a1, a2, a3, a4, a6};
  if (E.discriminant() == 0) throw ConstructionError("singular Weierstrass curve " + E.to_string());
  return E;
}

Elem WeierstrassCurve::discriminant() const { return weierstrass_discriminant(*field, a1, a2, a3, a4, a6); }

bool WeierstrassCurve::contains(Elem x, Elem y) const {
  const Field& f = *field;
  Elem lhs = f.add(f.mul(y, y), f.add(f.mul(a1, f.mul(x, y)), f.mul(a3, y)));
  Elem x2 = f.mul(x, x);
  Elem rhs = f.add(f.mul(x2, x), f.add(f.mul(a2, x2), f.add(f.mul(a4, x), a6)));
  return lhs == rhs;
}

std::string WeierstrassCurve::to_string(char xv, char yv) const {
  const Field& f = *field;
  auto term = [&](Elem c, const std::string& mono, std::string& out) {
    if (c == 0) return;
    if (!out.empty()) out += " + ";
    std::string cs = f.format(c);
    bool compound = cs.find('+') != std::string::npos;
    if (mono.empty()) out += cs;
    else if (c == 1) out += mono;
    else out += (compound ? "(" + cs + ")" : cs) + "*" + mono;
  };
  std::string X(1, xv), Y(1, yv);
  std::string lhs, rhs;
  term(1, Y + "^2", lhs);
  term(a1, X + "*" + Y, lhs);
  term(a3, Y, lhs);
  term(1, X + "^3", rhs);
  term(a2, X + "^2", rhs);
  term(a4, X, rhs);
  term(a6, "", rhs);
  return lhs + " = " + rhs;
}

std::string format_point(const Field& f, const EcPoint& p) {
  if (p.inf) return "inf";
  return "(" + f.format(p.x) + ", " + f.format(p.y) + ")";
}

std::vector<EcPoint> ec_points(const WeierstrassCurve& E) {
  const Field& f = *E.field;
  const Elem q = f.order();
  std::vector<EcPoint> pts{EcPoint::infinity()};
  for (Elem x = 0; x < q; ++x) {
    // y^2 + (a1 x + a3) y - rhs(x) = 0
    const Elem b = f.add(f.mul(E.a1, x), E.a3);
    const Elem x2 = f.mul(x, x);
    const Elem rhs = f.add(f.mul(x2, x), f.add(f.mul(E.a2, x2), f.add(f.mul(E.a4, x), E.a6)));
    for (Elem y = 0; y < q; ++y) {
      if (f.add(f.mul(y, y), f.mul(b, y)) == rhs) pts.push_back(EcPoint::affine(x, y));
    }
  }
  return pts;
}

EcPoint ec_neg(const WeierstrassCurve& E, const EcPoint& P) {
  if (P.inf) return P;
  const Field& f = *E.field;
  return EcPoint::affine(P.x, f.sub(f.neg(P.y), f.add(f.mul(E.a1, P.x), E.a3)));
}

EcPoint ec_add(const WeierstrassCurve& E, const EcPoint& P, const EcPoint& Q) {
  if (!P.inf && !E.contains(P.x, P.y)) throw ConstructionError("point not on curve");
  if (!Q.inf && !E.contains(Q.x, Q.y)) throw ConstructionError("point not on curve");
  if (P.inf) return Q;
  if (Q.inf) return P;
  const Field& f = *E.field;
  Elem lambda, nu;
  if (P.x == Q.x) {
    // Either Q = -P or Q = P.
    Elem s = f.add(f.add(P.y, Q.y), f.add(f.mul(E.a1, Q.x), E.a3));
    if (s == 0) return EcPoint::infinity();
    const Elem x = P.x, y = P.y;
    Elem den = f.add(f.add(f.mul(f.from_int(2), y), f.mul(E.a1, x)), E.a3);
    Elem num = f.add(f.mul(f.from_int(3), f.mul(x, x)), f.mul(f.from_int(2), f.mul(E.a2, x)));
    num = f.sub(f.add(num, E.a4), f.mul(E.a1, y));
    Elem nnum = f.neg(f.mul(x, f.mul(x, x)));
    nnum = f.add(nnum, f.mul(E.a4, x));
    nnum = f.add(nnum, f.mul(f.from_int(2), E.a6));
    nnum = f.sub(nnum, f.mul(E.a3, y));
    lambda = f.div(num, den);
    nu = f.div(nnum, den);
  } else {
    Elem dx = f.sub(Q.x, P.x);
    lambda = f.div(f.sub(Q.y, P.y), dx);
    nu = f.div(f.sub(f.mul(P.y, Q.x), f.mul(Q.y, P.x)), dx);
  }
  Elem x3 = f.add(f.mul(lambda, lambda), f.mul(E.a1, lambda));
  x3 = f.sub(f.sub(f.sub(x3, E.a2), P.x), Q.x);
  Elem y3 = f.sub(f.sub(f.neg(f.mul(f.add(lambda, E.a1), x3)), nu), E.a3);
  return EcPoint::affine(x3, y3);
}

EcPoint ec_sub(const WeierstrassCurve& E, const EcPoint& P, const EcPoint& Q) {
  return ec_add(E, P, ec_neg(E, Q));
}

EcPoint ec_mul(const WeierstrassCurve& E, const EcPoint& P, std::int64_t n) {
  EcPoint base = n < 0 ? ec_neg(E, P) : P;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  EcPoint acc = EcPoint::infinity();
  while (k) {
    if (k & 1) acc = ec_add(E, acc, base);
    k >>= 1;
    if (k) base = ec_add(E, base, base);
  }
  return acc;
}

bool in_hasse_interval(std::uint64_t q, std::uint64_t count) {
  // (count - q - 1)^2 <= 4q
  const std::int64_t d = static_cast<std::int64_t>(count) - static_cast<std::int64_t>(q) - 1;
  return static_cast<std::uint64_t>(d * d) <= 4 * q;
}

// ---------------------------------------------------------------------------
// Subgroups and cosets

bool Subgroup::contains(const EcPoint& p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

Subgroup generated_subgroup(const WeierstrassCurve& E, const std::vector<EcPoint>& gens) {
  std::set<EcPoint> s{EcPoint::infinity()};
  std::vector<EcPoint> frontier{EcPoint::infinity()};
  while (!frontier.empty()) {
    std::vector<EcPoint> next;
    for (const auto& a : frontier)
      for (const auto& g : gens) {
        EcPoint b = ec_add(E, a, g);
        if (s.insert(b).second) next.push_back(b);
      }
    frontier = std::move(next);
  }
  return Subgroup{std::vector<EcPoint>(s.begin(), s.end())};
}

std::vector<Subgroup> subgroups_of_order(const WeierstrassCurve& E, const std::vector<EcPoint>& pts,
                                         std::size_t n) {
  std::vector<Subgroup> out;
  if (n == 0 || pts.size() % n != 0) return out;
  std::vector<EcPoint> torsion;
  for (const auto& p : pts)
    if (ec_mul(E, p, static_cast<std::int64_t>(n)).inf) torsion.push_back(p);
  std::set<std::vector<EcPoint>> seen;
  auto consider = [&](const std::vector<EcPoint>& gens) {
    Subgroup g = generated_subgroup(E, gens);
    if (g.order() == n && seen.insert(g.members).second) out.push_back(std::move(g));
  };
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    consider({torsion[i]});
    for (std::size_t j = i + 1; j < torsion.size(); ++j) consider({torsion[i], torsion[j]});
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return a.members < b.members; });
  return out;
}

std::optional<Subgroup> subgroup_of_order(const WeierstrassCurve& E, const std::vector<EcPoint>& pts,
                                          std::size_t n) {
  auto all = subgroups_of_order(E, pts, n);
  if (all.empty()) return std::nullopt;
  return all.front();
}

PointSelector PointSelector::parse(const Field& f, std::string_view text) {
  std::string s = trim(text);
  PointSelector sel;
  auto eq = s.find('=');
  std::string key = eq == std::string::npos ? "point" : trim(std::string_view(s).substr(0, eq));
  std::string val = eq == std::string::npos ? s : trim(std::string_view(s).substr(eq + 1));
  if (key == "x" || key == "y") {
    sel.coord = key[0];
    Elem v = f.parse_literal(val);
    (key == "x" ? sel.x : sel.y) = v;
    return sel;
  }
  if (key == "point") {
    if (val.size() < 2 || val.front() != '(' || val.back() != ')')
      throw ConfigError("point selector must look like (X, Y)");
    std::string inner = val.substr(1, val.size() - 2);
    auto comma = inner.find(',');
    if (comma == std::string::npos) throw ConfigError("point selector must look like (X, Y)");
    sel.coord = 'p';
    sel.x = f.parse_literal(trim(std::string_view(inner).substr(0, comma)));
    sel.y = f.parse_literal(trim(std::string_view(inner).substr(comma + 1)));
    return sel;
  }
  throw ConfigError("unknown point selector '" + s + "'");
}

bool PointSelector::matches(const EcPoint& p) const {
  if (p.inf) return false;
  switch (coord) {
    case 'x':
      return p.x == x;
    case 'y':
      return p.y == y;
    default:
      return p.x == x && p.y == y;
  }
}

std::string PointSelector::to_string(const Field& f) const {
  switch (coord) {
    case 'x':
      return "x=" + f.format(x);
    case 'y':
      return "y=" + f.format(y);
    default:
      return "point=(" + f.format(x) + "," + f.format(y) + ")";
  }
}

Subgroup select_subgroup(const WeierstrassCurve& E, const std::vector<EcPoint>& pts, std::size_t n,
                         const std::optional<PointSelector>& sel) {
  auto all = subgroups_of_order(E, pts, n);
  if (all.empty())
    throw ConstructionError("no subgroup of order " + std::to_string(n) + " in a group of order " +
                            std::to_string(pts.size()));
  std::vector<Subgroup> hits;
  if (!sel) {
    hits = all;
  } else {
    std::vector<EcPoint> wanted;
    for (const auto& p : pts)
      if (sel->matches(p)) wanted.push_back(p);
    if (wanted.empty())
      throw ConstructionError("no rational point matches selector " + sel->to_string(*E.field));
    for (const auto& g : all) {
      bool ok = std::all_of(wanted.begin(), wanted.end(), [&](const EcPoint& p) { return g.contains(p); });
      if (ok) hits.push_back(g);
    }
  }
  if (hits.empty())
    throw ConstructionError("no subgroup of order " + std::to_string(n) + " matches the selector");
  if (hits.size() > 1)
    throw ConstructionError(std::to_string(hits.size()) + " subgroups of order " + std::to_string(n) +
                            " qualify; give a kernel selector");
  return hits.front();
}

std::vector<Coset> cosets(const WeierstrassCurve& E, const std::vector<EcPoint>& pts, const Subgroup& G) {
  for (const auto& a : G.members)
    for (const auto& b : G.members)
      if (!G.contains(ec_add(E, a, b))) throw ConstructionError("subgroup is not closed under addition");
  std::vector<EcPoint> sorted = pts;
  std::sort(sorted.begin(), sorted.end());
  std::set<EcPoint> assigned;
  std::vector<Coset> out;
  for (const auto& p : sorted) {
    if (assigned.count(p)) continue;
    Coset c;
    for (const auto& g : G.members) c.members.push_back(ec_add(E, p, g));
    std::sort(c.members.begin(), c.members.end());
    for (const auto& m : c.members) assigned.insert(m);
    c.trivial = c.members == G.members;
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Function values

std::optional<Elem> function_value(const WeierstrassCurve& E, const RatExpr& fexpr, const EcPoint& P,
                                   CurveVars vars) {
  const Field& f = *E.field;
  if (!P.inf) {
    ElemBindings b{};
    b[vars.x] = P.x;
    b[vars.y] = P.y;
    if (auto v = eval(fexpr, b)) return v;
  }
  LaurentOps<FieldOps> L(FieldOps(f), kSeriesPrecision);
  WeierstrassCoeffs<FieldOps> c{E.a1, E.a2, E.a3, E.a4, E.a6};
  auto xy = P.inf ? expansion_at_infinity(L, c) : expansion_at_point(L, c, P.x, P.y);
  std::array<std::optional<Laurent<FieldOps>>, kNumVars> b{};
  b[vars.x] = xy.first;
  b[vars.y] = xy.second;
  auto s = eval_with(fexpr, L, b);
  if (!s) throw EvalError("function vanishes identically in a denominator at " + format_point(f, P));
  auto v = series_value(L, *s);
  if (v.pole) return std::nullopt;
  return v.value;
}

EcPoint map_point(const WeierstrassCurve& E, const RatExpr& mu, const RatExpr& mv, const EcPoint& P,
                  CurveVars vars) {
  auto u = function_value(E, mu, P, vars);
  auto v = function_value(E, mv, P, vars);
  if (!u || !v) return EcPoint::infinity();
  return EcPoint::affine(*u, *v);
}

CoverVerdict verify_cover_map(const std::vector<RatExpr>& maps, const std::vector<ElemBindings>& points,
                              const std::function<bool(const std::vector<std::optional<Elem>>&)>& target) {
  CoverVerdict v;
  for (const auto& b : points) {
    std::vector<std::optional<Elem>> img;
    for (const auto& m : maps) img.push_back(eval(m, b));
    ++v.checked;
    if (!target(img)) {
      v.ok = false;
      std::string s = "image of point #" + std::to_string(v.checked - 1) + " fails the target";
      v.failures.push_back(s);
    }
  }
  return v;
}

CoverVerdict verify_isogeny(const WeierstrassCurve& E, const WeierstrassCurve& Et, const RatExpr& mu,
                            const RatExpr& mv, const std::optional<Subgroup>& kernel,
                            std::size_t exhaustive_limit) {
  const Field& f = *E.field;
  CoverVerdict v;
  auto pts = ec_points(E);
  std::map<EcPoint, EcPoint> image;
  for (const auto& p : pts) {
    EcPoint q = map_point(E, mu, mv, p);
    image[p] = q;
    ++v.checked;
    if (!q.inf && !Et.contains(q.x, q.y)) {
      v.ok = false;
      v.failures.push_back("image of " + format_point(f, p) + " is not on the target curve");
    }
    if (kernel && kernel->contains(p) != q.inf) {
      v.ok = false;
      v.failures.push_back(format_point(f, p) + (q.inf ? " maps to infinity but is not in the kernel"
                                                       : " is in the kernel but does not map to infinity"));
    }
  }
  if (!v.ok) return v;
  auto check_pair = [&](const EcPoint& a, const EcPoint& b) {
    EcPoint lhs = image.at(ec_add(E, a, b));
    EcPoint rhs = ec_add(Et, image.at(a), image.at(b));
    ++v.checked;
    if (lhs != rhs) {
      v.ok = false;
      if (v.failures.size() < 10)
        v.failures.push_back("not additive at " + format_point(f, a) + ", " + format_point(f, b));
    }
  };
  if (pts.size() <= exhaustive_limit) {
    for (const auto& a : pts)
      for (const auto& b : pts) check_pair(a, b);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    for (int i = 0; i < 2000; ++i) check_pair(pts[pick(rng)], pts[pick(rng)]);
  }
  return v;
}

std::vector<RatExpr> standard_basis(FieldPtr f, std::size_t count, char xv, char yv) {
  std::vector<RatExpr> out;
  RatExpr X = RatExpr::variable(f, xv), Y = RatExpr::variable(f, yv);
  for (std::size_t k = 0; k < count; ++k) {
    if (k == 0) {
      out.push_back(RatExpr::constant(f, 1));
      continue;
    }
    const std::size_t order = k + 1;
    RatExpr e;
    if (order % 2 == 0) {
      std::size_t a = order / 2;
      e = a == 1 ? X : X.pow(static_cast<std::int64_t>(a));
    } else {
      std::size_t a = (order - 3) / 2;
      e = a == 0 ? Y : (a == 1 ? X : X.pow(static_cast<std::int64_t>(a))) * Y;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace geolrc
