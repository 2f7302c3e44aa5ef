#include "geolrc/covers.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "geolrc/series.hpp"

namespace geolrc {

namespace {

constexpr int kPrec = 24;

std::vector<std::string> expr_strings(const std::vector<RatExpr>& es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(e.to_string());
  return out;
}

std::string verdict_of(const Field& f, const Matrix& e, bool pole) {
  if (pole) return "pole";
  return singular_deletions(f, e).empty() ? "pass" : "singular";
}

struct CosetEval {
  CosetCheck check;
  Matrix e;
};

CosetEval eval_coset(const WeierstrassCurve& E, const Coset& c, const std::vector<RatExpr>& e) {
  const Field& f = *E.field;
  CosetEval out;
  out.e = Matrix(c.members.size(), e.size());
  bool pole = false;
  for (std::size_t i = 0; i < c.members.size(); ++i)
    for (std::size_t u = 0; u < e.size(); ++u) {
      auto v = function_value(E, e[u], c.members[i]);
      if (!v) pole = true;
      else out.e.at(i, u) = *v;
    }
  out.check.label = format_point(f, c.members[0]);
  out.check.trivial = c.trivial;
  out.check.verdict = verdict_of(f, out.e, pole);
  return out;
}

std::vector<std::string> labels(const Field& f, const std::vector<EcPoint>& pts) {
  std::vector<std::string> out;
  for (const auto& p : pts) out.push_back(format_point(f, p));
  return out;
}

std::vector<Elem> f_values(const WeierstrassCurve& T, const std::vector<RatExpr>& fs, const EcPoint& Q,
                           CurveVars vars) {
  std::vector<Elem> out;
  for (const auto& fj : fs) {
    auto v = function_value(T, fj, Q, vars);
    if (!v) throw ConstructionError("f-function " + fj.to_string() + " has a pole at " + format_point(*T.field, Q));
    out.push_back(*v);
  }
  return out;
}

void require_t(int t) {
  if (t < 1) throw ConstructionError("t must be at least 1 (empty f basis)");
}

// f-values for fibers of a cyclic cubic cover of an elliptic curve.  With the
// default basis the divisor t*P0 sits at infinity unless infinity splits, in
// which case P0 is the least point of Y that is not used and the basis is
// translated by P0.
struct BasisPlacement {
  EcPoint base;
  bool translated = false;
};

BasisPlacement place_basis(const WeierstrassCurve& Y, const std::vector<EcPoint>& used, bool default_basis) {
  BasisPlacement out;
  out.base = EcPoint{};
  const bool inf_used = std::any_of(used.begin(), used.end(), [](const EcPoint& p) { return p.inf; });
  if (!inf_used || !default_basis) return out;
  std::set<EcPoint> u(used.begin(), used.end());
  for (const auto& p : ec_points(Y))
    if (!u.count(p)) {
      out.base = p;
      out.translated = true;
      return out;
    }
  throw ConstructionError("every point of the base curve splits; no room for the divisor");
}

std::optional<std::vector<Elem>> basis_values(const WeierstrassCurve& Y, const std::vector<RatExpr>& fs,
                                              const EcPoint& Q, const BasisPlacement& bp) {
  const EcPoint R = bp.translated ? ec_sub(Y, Q, bp.base) : Q;
  std::vector<Elem> out;
  for (const auto& fj : fs) {
    auto v = function_value(Y, fj, R);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conic parametrization shared by the quartic families.

struct ConicParam {
  ProjPoint q;
  std::array<Elem, 3> tangent{}, line{};
};

Elem dot(const Field& f, const std::array<Elem, 3>& a, const std::vector<Elem>& c) {
  Elem s = 0;
  for (int i = 0; i < 3; ++i) s = f.add(s, f.mul(a[i], c[i]));
  return s;
}

std::array<Elem, 3> cross(const Field& f, const std::vector<Elem>& a, const std::array<Elem, 3>& b) {
  return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])), f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
          f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

bool proportional(const Field& f, const std::array<Elem, 3>& a, const std::array<Elem, 3>& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (f.mul(a[i], b[j]) != f.mul(a[j], b[i])) return false;
  return true;
}

// Least conic point outside `image` (affine only when asked), with the
// tangent there and a second line through it.
ConicParam conic_param(const Field& f, const Poly& conic, const std::vector<ProjPoint>& conic_pts,
                       const std::set<ProjPoint>& image, bool affine_only) {
  for (const auto& c : conic_pts) {
    if (image.count(c)) continue;
    if (affine_only && c.c[2] != 1) continue;
    ConicParam p;
    p.q = c;
    std::array<Elem, kNumVars> pt{};
    for (int i = 0; i < 3; ++i) pt[i] = c.c[i];
    for (int i = 0; i < 3; ++i) p.tangent[i] = conic.derivative(i).eval(pt);
    if (p.tangent == std::array<Elem, 3>{0, 0, 0}) throw ConstructionError("conic is singular at " + format_point(f, c));
    bool found = false;
    for (int k = 0; k < 3 && !found; ++k) {
      std::array<Elem, 3> ek{0, 0, 0};
      ek[k] = 1;
      auto l = cross(f, c.c, ek);
      if (l == std::array<Elem, 3>{0, 0, 0} || proportional(f, l, p.tangent)) continue;
      p.line = l;
      found = true;
    }
    if (!found) throw ConstructionError("no secant line through the conic point");
    return p;
  }
  throw ConstructionError("every conic point lies in the image of the curve");
}

std::vector<Elem> tau_powers(const Field& f, const ConicParam& p, const ProjPoint& c, int t) {
  const Elem den = dot(f, p.tangent, c.c);
  if (den == 0) throw ConstructionError("base point lies on the tangent at Q'");
  const Elem tau = f.div(dot(f, p.line, c.c), den);
  std::vector<Elem> out;
  Elem cur = 1;
  for (int j = 0; j < t; ++j) {
    out.push_back(cur);
    cur = f.mul(cur, tau);
  }
  return out;
}

std::string line_string(const Field& f, const std::array<Elem, 3>& l, const char* vars) {
  std::string s;
  for (int i = 0; i < 3; ++i) {
    if (l[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (l[i] != 1) s += "(" + f.format(l[i]) + ")";
    s += vars[i];
  }
  return s.empty() ? "0" : s;
}

// Groups usable points into orbits and fills in the cover from the
// per-orbit data.
struct OrbitPoint {
  ProjPoint p;
  std::vector<Elem> e;
};

CoverData finish_v4(const Field& f, FieldPtr fp, const std::string& family, int t,
                    std::map<ProjPoint, std::vector<OrbitPoint>> orbits_by_base, const ConicParam& cp,
                    const char* conic_vars, const std::vector<std::string>& e_exprs) {
  CoverData out;
  out.field = fp;
  out.family = family;
  out.r = 3;
  out.t = t;
  out.delta = 4 * t;
  out.e_exprs = e_exprs;
  std::vector<std::pair<ProjPoint, std::vector<OrbitPoint>>> orbits(orbits_by_base.begin(), orbits_by_base.end());
  for (auto& o : orbits)
    std::sort(o.second.begin(), o.second.end(), [](const OrbitPoint& a, const OrbitPoint& b) { return a.p < b.p; });
  std::sort(orbits.begin(), orbits.end(),
            [](const auto& a, const auto& b) { return a.second[0].p < b.second[0].p; });
  for (const auto& [base, members] : orbits) {
    if (members.size() != 4) throw ConstructionError("orbit of size " + std::to_string(members.size()));
    Fiber fb;
    fb.e = Matrix(4, 3);
    for (std::size_t i = 0; i < 4; ++i) {
      fb.members.push_back(format_point(f, members[i].p));
      for (std::size_t u = 0; u < 3; ++u) fb.e.at(i, u) = members[i].e[u];
    }
    fb.base = format_point(f, base);
    fb.f = tau_powers(f, cp, base, t);
    CosetCheck chk;
    chk.label = fb.members[0];
    chk.used = true;
    chk.verdict = verdict_of(f, fb.e, false);
    out.coset_checks.push_back(chk);
    out.fibers.push_back(std::move(fb));
  }
  const std::string tau = "(" + line_string(f, cp.line, conic_vars) + ")/(" + line_string(f, cp.tangent, conic_vars) + ")";
  for (int j = 0; j < t; ++j) out.f_exprs.push_back(j == 0 ? "1" : (j == 1 ? tau : tau + "^" + std::to_string(j)));
  out.notes.push_back("Q' = " + format_point(f, cp.q));
  out.counts["usable"] = static_cast<long long>(out.n());
  return out;
}

}  // namespace

int quotient_divisor_degree(int r, int t) { return t * r + t + r; }

int variant_divisor_degree(int r, int t) {
  if (r < 1 || t < 1) throw ConstructionError("r and t must be positive");
  return 2 * ((r + 1) / 2) + 2 * ((t + 1) / 2) * (r + 1);
}

std::vector<CosetCheck> coset_diagnostics(const WeierstrassCurve& E, const Subgroup& G,
                                          const std::vector<RatExpr>& e) {
  auto pts = ec_points(E);
  std::vector<CosetCheck> out;
  for (const auto& c : cosets(E, pts, G)) out.push_back(eval_coset(E, c, e).check);
  return out;
}

// ---------------------------------------------------------------------------
// Elliptic quotient

CoverData elliptic_quotient_cover(const EllipticCoverSpec& s) {
  require_t(s.t);
  const Field& f = *s.E.field;
  const int r = static_cast<int>(s.kernel.order()) - 1;
  if (r < 1) throw ConstructionError("kernel must be nontrivial");
  auto iso = verify_isogeny(s.E, s.target, s.map_u, s.map_v, s.kernel);
  if (!iso.ok) throw ConstructionError("map is not an isogeny with the given kernel: " + iso.failures.front());
  auto e = s.e.empty() ? standard_basis(s.E.field, static_cast<std::size_t>(r)) : s.e;
  auto fs = s.f.empty() ? standard_basis(s.E.field, static_cast<std::size_t>(s.t), 'u', 'v') : s.f;
  if (static_cast<int>(e.size()) != r) throw ConstructionError("need exactly r e-functions");
  if (static_cast<int>(fs.size()) != s.t) throw ConstructionError("need exactly t f-functions");

  CoverData out;
  out.field = s.E.field;
  out.family = "elliptic-quotient";
  out.r = r;
  out.t = s.t;
  out.delta = s.delta.value_or(quotient_divisor_degree(r, s.t));
  out.e_exprs = expr_strings(e);
  out.f_exprs = expr_strings(fs);
  auto pts = ec_points(s.E);
  for (const auto& c : cosets(s.E, pts, s.kernel)) {
    auto ce = eval_coset(s.E, c, e);
    ce.check.used = !c.trivial;
    out.coset_checks.push_back(ce.check);
    if (c.trivial) continue;
    if (ce.check.verdict == "pole")
      throw ConstructionError("an e-function has a pole on the helper set of " + ce.check.label);
    Fiber fb;
    fb.members = labels(f, c.members);
    fb.e = ce.e;
    EcPoint Q = map_point(s.E, s.map_u, s.map_v, c.members[0]);
    fb.base = format_point(f, Q);
    fb.f = f_values(s.target, fs, Q, kUV);
    out.fibers.push_back(std::move(fb));
  }
  out.counts["points"] = static_cast<long long>(pts.size());
  out.counts["cosets"] = static_cast<long long>(out.coset_checks.size());
  out.counts["helper_sets"] = static_cast<long long>(out.fibers.size());
  return out;
}

// ---------------------------------------------------------------------------
// Quadratic-extension variant

namespace {

using QV = QuadOps::Value;
using QSeries = Laurent<QuadOps>;

std::string format_quad(const Field& f, const QV& v) {
  if (v.second == 0) return f.format(v.first);
  std::string s = v.first == 0 ? "" : f.format(v.first) + " + ";
  s += v.second == 1 ? "b" : "(" + f.format(v.second) + ")b";
  return s;
}

WeierstrassCoeffs<QuadOps> lift_coeffs(const WeierstrassCurve& E) {
  return {{E.a1, 0}, {E.a2, 0}, {E.a3, 0}, {E.a4, 0}, {E.a6, 0}};
}

QSeries expand(const RatExpr& e, const LaurentOps<QuadOps>& S, const std::pair<QSeries, QSeries>& xy,
               CurveVars vars) {
  std::array<std::optional<QSeries>, kNumVars> b{};
  b[vars.x] = xy.first;
  b[vars.y] = xy.second;
  auto r = eval_with(e, S, b);
  if (!r) throw EvalError("expression " + e.to_string() + " vanishes identically in a denominator");
  return *r;
}

QV coefficient(const QuadOps& R, const QSeries& s, int exponent) {
  if (exponent < s.val) return R.zero();
  const int idx = exponent - s.val;
  if (idx < static_cast<int>(s.c.size())) return s.c[static_cast<std::size_t>(idx)];
  if (s.c.empty()) return R.zero();
  throw EvalError("series precision exhausted");
}

}  // namespace

CoverData elliptic_variant_cover(const EllipticCoverSpec& s, const VariantPole& pole) {
  require_t(s.t);
  const Field& f = *s.E.field;
  FieldPtr fp = s.E.field;
  const int r = static_cast<int>(s.kernel.order()) - 1;
  if (r < 1) throw ConstructionError("kernel must be nontrivial");
  if (static_cast<int>(s.e.size()) != r) throw ConstructionError("the variant needs r explicit e-functions");
  auto iso = verify_isogeny(s.E, s.target, s.map_u, s.map_v, s.kernel);
  if (!iso.ok) throw ConstructionError("map is not an isogeny with the given kernel: " + iso.failures.front());
  for (Elem x = 0; x < f.order(); ++x)
    if (f.add(f.add(f.mul(x, x), f.mul(pole.c1, x)), pole.c0) == 0)
      throw ConstructionError("pole polynomial has a root in the base field");

  const QuadOps R(f, pole.c0, pole.c1);
  const int tp = (s.t + 1) / 2;
  LaurentOps<QuadOps> S(R, std::max(kPrec, tp + 8));
  const auto cE = lift_coeffs(s.E), cT = lift_coeffs(s.target);
  const QV beta = R.beta();

  // y-roots at x = beta, by search over L.
  std::vector<QV> roots;
  {
    auto b3 = R.mul(R.mul(beta, beta), beta);
    auto rhs = R.add(R.add(b3, R.mul(cE.a2, R.mul(beta, beta))), R.add(R.mul(cE.a4, beta), cE.a6));
    for (Elem a = 0; a < f.order(); ++a)
      for (Elem b = 0; b < f.order(); ++b) {
        QV y{a, b};
        auto lhs = R.add(R.mul(y, y), R.add(R.mul(cE.a1, R.mul(beta, y)), R.mul(cE.a3, y)));
        if (R.is_zero(R.sub(lhs, rhs))) roots.push_back(y);
      }
  }
  if (roots.empty()) throw ConstructionError("no point of E over the extension with x = beta");
  std::vector<QV> with_pole;
  for (const auto& y : roots) {
    auto xy = expansion_at_point(S, cE, beta, y);
    bool p = false;
    for (const auto& ei : s.e)
      if (expand(ei, S, xy, kXY).val < 0 && !expand(ei, S, xy, kXY).c.empty()) p = true;
    if (p) with_pole.push_back(y);
  }
  if (with_pole.size() > 1) throw ConstructionError("e-functions have poles at both points over beta");
  const QV yP = with_pole.empty() ? roots.front() : with_pole.front();

  auto xyP = expansion_at_point(S, cE, beta, yP);
  auto su = series_value(S, expand(s.map_u, S, xyP, kXY));
  auto sv = series_value(S, expand(s.map_v, S, xyP, kXY));
  if (su.pole || sv.pole || su.unresolved || sv.unresolved) throw ConstructionError("phi(P) is not an affine point");
  const QV uP = su.value, vP = sv.value;
  if (uP.second == 0 && vP.second == 0) throw ConstructionError("phi(P) is rational over the base field");

  RatExpr U = RatExpr::variable(fp, 'u');
  std::vector<RatExpr> fs;
  RatExpr N;
  if (uP.second == 0) {
    N = U - RatExpr::constant(fp, uP.first);
    auto A = standard_basis(fp, static_cast<std::size_t>(2 * tp), 'u', 'v');
    for (int j = 0; j < s.t; ++j) fs.push_back(A[static_cast<std::size_t>(j)] / N.pow(tp));
  } else {
    const Elem tr = R.add(uP, R.conj(uP)).first;
    const Elem nm = R.norm(uP);
    N = U.pow(2) - RatExpr::constant(fp, tr) * U + RatExpr::constant(fp, nm);
    // A must vanish to order tp at -P'.
    const QV vneg = R.sub(R.sub(R.neg(vP), R.mul(cT.a1, uP)), cT.a3);
    auto xyN = expansion_at_point(S, cT, uP, vneg);
    auto B = standard_basis(fp, static_cast<std::size_t>(4 * tp), 'u', 'v');
    Matrix M(static_cast<std::size_t>(2 * tp), B.size());
    for (std::size_t k = 0; k < B.size(); ++k) {
      auto ser = expand(B[k], S, xyN, kUV);
      for (int i = 0; i < tp; ++i) {
        QV c = coefficient(R, ser, i);
        M.at(static_cast<std::size_t>(2 * i), k) = c.first;
        M.at(static_cast<std::size_t>(2 * i + 1), k) = c.second;
      }
    }
    Matrix ns = nullspace(f, M);
    if (static_cast<int>(ns.rows) < s.t) throw ConstructionError("Riemann-Roch space is too small for t");
    for (int j = 0; j < s.t; ++j) {
      RatExpr A;
      for (std::size_t k = 0; k < B.size(); ++k) {
        const Elem c = ns.at(static_cast<std::size_t>(j), k);
        if (c == 0) continue;
        RatExpr term = c == 1 ? B[k] : RatExpr::constant(fp, c) * B[k];
        A = A.empty() ? term : A + term;
      }
      fs.push_back(A / N.pow(tp));
    }
  }

  CoverData out;
  out.field = fp;
  out.family = "elliptic-variant";
  out.r = r;
  out.t = s.t;
  out.delta = s.delta.value_or(variant_divisor_degree(r, s.t));
  out.e_exprs = expr_strings(s.e);
  out.f_exprs = expr_strings(fs);
  out.notes.push_back("P = (b, " + format_quad(f, yP) + ") with b^2 + (" + f.format(pole.c1) + ")b + (" +
                      f.format(pole.c0) + ") = 0");
  out.notes.push_back("P' = (" + format_quad(f, uP) + ", " + format_quad(f, vP) + ")");
  auto pts = ec_points(s.E);
  for (const auto& c : cosets(s.E, pts, s.kernel)) {
    auto ce = eval_coset(s.E, c, s.e);
    ce.check.used = true;
    out.coset_checks.push_back(ce.check);
    if (ce.check.verdict == "pole")
      throw ConstructionError("an e-function has a pole on the helper set of " + ce.check.label);
    Fiber fb;
    fb.members = labels(f, c.members);
    fb.e = ce.e;
    EcPoint Q = map_point(s.E, s.map_u, s.map_v, c.members[0]);
    fb.base = format_point(f, Q);
    fb.f = f_values(s.target, fs, Q, kUV);
    out.fibers.push_back(std::move(fb));
  }
  out.counts["points"] = static_cast<long long>(pts.size());
  out.counts["cosets"] = static_cast<long long>(out.coset_checks.size());
  out.counts["helper_sets"] = static_cast<long long>(out.fibers.size());
  return out;
}

// ---------------------------------------------------------------------------
// Kummer covers

CoverData kummer_cover(const KummerSpec& s) {
  require_t(s.t);
  const Field& f = *s.Y.field;
  const int deg = s.r + 1;
  if (s.r < 1 || (f.order() - 1) % static_cast<std::uint64_t>(deg) != 0)
    throw ConstructionError("r+1 must divide q-1");
  auto fs = s.f.empty() ? standard_basis(s.Y.field, static_cast<std::size_t>(s.t)) : s.f;
  if (static_cast<int>(fs.size()) != s.t) throw ConstructionError("need exactly t f-functions");

  CoverData out;
  out.field = s.Y.field;
  out.family = "kummer";
  out.r = s.r;
  out.t = s.t;
  out.delta = s.delta;
  for (int u = 0; u < s.r; ++u) out.e_exprs.push_back(u == 0 ? "1" : (u == 1 ? "z" : "z^" + std::to_string(u)));
  out.f_exprs = expr_strings(fs);
  long long nonsplit = 0, zero = 0, poles = 0;
  std::vector<EcPoint> used;
  std::vector<std::vector<Elem>> roots;
  auto pts = ec_points(s.Y);
  for (const auto& Q : pts) {
    auto hv = function_value(s.Y, s.h, Q);
    std::vector<Elem> zs;
    if (!hv) ++poles;
    else if (*hv == 0) ++zero;
    else if ((zs = f.nth_roots(*hv, static_cast<std::uint64_t>(deg))).empty()) ++nonsplit;
    else {
      used.push_back(Q);
      roots.push_back(std::move(zs));
    }
  }
  const auto bp = place_basis(s.Y, used, s.f.empty());
  long long excluded = 0;
  for (std::size_t k = 0; k < used.size(); ++k) {
    const EcPoint& Q = used[k];
    auto fv = basis_values(s.Y, fs, Q, bp);
    if (!fv) {
      if (!Q.inf) throw ConstructionError("f-function has a pole at " + format_point(f, Q));
      ++excluded;
      continue;
    }
    Fiber fb;
    fb.e = Matrix(static_cast<std::size_t>(deg), static_cast<std::size_t>(s.r));
    const std::string q = format_point(f, Q);
    for (std::size_t i = 0; i < roots[k].size(); ++i) {
      fb.members.push_back("(" + q + "; z=" + f.format(roots[k][i]) + ")");
      for (int u = 0; u < s.r; ++u) fb.e.at(i, static_cast<std::size_t>(u)) = f.pow(roots[k][i], u);
    }
    fb.base = q;
    fb.f = std::move(*fv);
    CosetCheck chk;
    chk.label = fb.members[0];
    chk.used = true;
    chk.verdict = verdict_of(f, fb.e, false);
    out.coset_checks.push_back(chk);
    out.fibers.push_back(std::move(fb));
  }
  if (bp.translated) out.notes.push_back("f-basis translated to " + format_point(f, bp.base));
  out.counts["points"] = static_cast<long long>(pts.size());
  out.counts["split"] = static_cast<long long>(used.size());
  out.counts["split_unused"] = excluded;
  out.counts["nonsplit"] = nonsplit;
  out.counts["zero"] = zero;
  out.counts["pole"] = poles;
  return out;
}

// ---------------------------------------------------------------------------
// Hermitian quotient

CoverData hermitian_quotient_cover(int t) {
  if (t < 1 || t > 18) throw ConstructionError("t must lie in [1, 18]");
  FieldPtr fp = Field::make(2, 4);
  const Field& f = *fp;
  Elem zeta = 0;
  for (Elem z : f.roots_of_unity(3))
    if (z != 1) {
      zeta = z;
      break;
    }
  const Elem zeta2 = f.mul(zeta, zeta);
  // Affine points of y^4 + y = x^5 other than (0,0).
  std::vector<std::pair<Elem, Elem>> pts;
  for (Elem x = 0; x < f.order(); ++x)
    for (Elem y = 0; y < f.order(); ++y)
      if (f.add(f.pow(y, 4), y) == f.pow(x, 5) && !(x == 0 && y == 0)) pts.emplace_back(x, y);

  // f_j pulled back to X: 1/w^k = x^(2k)/y^k and z/w^k = x^(2k-5)/y^(k-1).
  struct Mono {
    int xe, ye;  // x^xe / y^ye
    std::string name;
  };
  std::vector<Mono> basis{{0, 0, "1"}, {2, 1, "1/w"}, {4, 2, "1/w^2"}};
  for (int k = 3; static_cast<int>(basis.size()) < t; ++k) {
    basis.push_back({2 * k - 5, k - 1, "z/w^" + std::to_string(k)});
    if (static_cast<int>(basis.size()) < t) basis.push_back({2 * k, k, "1/w^" + std::to_string(k)});
  }
  basis.resize(static_cast<std::size_t>(t));

  CoverData out;
  out.field = fp;
  out.family = "hermitian-quotient";
  out.r = 2;
  out.t = t;
  out.delta = 3 * t + 8;
  out.e_exprs = {"1", "y"};
  for (const auto& m : basis) out.f_exprs.push_back(m.name);
  std::set<std::pair<Elem, Elem>> seen;
  for (const auto& p : pts) {
    if (seen.count(p)) continue;
    std::vector<std::pair<Elem, Elem>> orbit{p, {f.mul(zeta, p.first), f.mul(zeta2, p.second)},
                                             {f.mul(zeta2, p.first), f.mul(zeta, p.second)}};
    std::sort(orbit.begin(), orbit.end());
    Fiber fb;
    fb.e = Matrix(3, 2);
    for (std::size_t i = 0; i < 3; ++i) {
      seen.insert(orbit[i]);
      fb.members.push_back(format_point(f, EcPoint::affine(orbit[i].first, orbit[i].second)));
      fb.e.at(i, 0) = 1;
      fb.e.at(i, 1) = orbit[i].second;
    }
    const auto [x0, y0] = orbit[0];
    if (x0 == 0) fb.base = "(w,z) = infinity";
    else
      fb.base = "(w,z) = (" + f.format(f.div(y0, f.pow(x0, 2))) + ", " + f.format(f.div(y0, f.pow(x0, 5))) + ")";
    for (const auto& m : basis) fb.f.push_back(f.div(f.pow(x0, m.xe), f.pow(y0, m.ye)));
    CosetCheck chk;
    chk.label = fb.members[0];
    chk.used = true;
    chk.verdict = verdict_of(f, fb.e, false);
    out.coset_checks.push_back(chk);
    out.fibers.push_back(std::move(fb));
  }
  out.counts["points"] = static_cast<long long>(pts.size()) + 2;
  out.counts["unramified"] = static_cast<long long>(pts.size());
  return out;
}

// ---------------------------------------------------------------------------
// Normal-form cubic covers

CoverData cubic_normalform_cover(const NormalFormSpec& s) {
  require_t(s.t);
  const Field& f = *s.Y.field;
  if (f.characteristic() == 3) throw ConstructionError("normal-form cubic covers need characteristic other than 3");
  auto fs = s.fbasis.empty() ? standard_basis(s.Y.field, static_cast<std::size_t>(s.t)) : s.fbasis;
  if (static_cast<int>(fs.size()) != s.t) throw ConstructionError("need exactly t f-functions");

  CoverData out;
  out.field = s.Y.field;
  out.family = "cubic-normalform";
  out.r = 2;
  out.t = s.t;
  out.delta = s.delta;
  out.e_exprs = {"1", "w"};
  out.f_exprs = expr_strings(fs);
  const Elem three = f.from_int(3);
  long long ramified = 0, other = 0, poles = 0;
  std::vector<EcPoint> used;
  std::vector<std::vector<Elem>> roots;
  auto pts = ec_points(s.Y);
  for (const auto& Q : pts) {
    auto fv = function_value(s.Y, s.f, Q);
    if (!fv) {
      ++poles;
      continue;
    }
    const Elem fq = *fv;
    if (f.add(f.add(f.mul(fq, fq), fq), 1) == 0) {
      ++ramified;
      continue;
    }
    // z^3 - 3f z^2 - 3(f+1) z - 1
    const Elem c2 = f.neg(f.mul(three, fq));
    const Elem c1 = f.neg(f.mul(three, f.add(fq, 1)));
    std::vector<Elem> zs;
    for (Elem z = 0; z < f.order(); ++z) {
      Elem v = f.add(f.mul(f.add(f.mul(f.add(z, c2), z), c1), z), f.neg(1));
      if (v == 0) zs.push_back(z);
    }
    if (zs.size() != 3) {
      ++other;
      continue;
    }
    used.push_back(Q);
    roots.push_back(std::move(zs));
  }
  const auto bp = place_basis(s.Y, used, s.fbasis.empty());
  long long excluded = 0;
  for (std::size_t k = 0; k < used.size(); ++k) {
    const EcPoint& Q = used[k];
    auto fv = basis_values(s.Y, fs, Q, bp);
    if (!fv) {
      if (!Q.inf) throw ConstructionError("f-function has a pole at " + format_point(f, Q));
      ++excluded;
      continue;
    }
    Fiber fb;
    fb.e = Matrix(3, 2);
    const std::string q = format_point(f, Q);
    for (std::size_t i = 0; i < 3; ++i) {
      fb.members.push_back("(" + q + "; w=" + f.format(roots[k][i]) + ")");
      fb.e.at(i, 0) = 1;
      fb.e.at(i, 1) = roots[k][i];
    }
    fb.base = q;
    fb.f = std::move(*fv);
    CosetCheck chk;
    chk.label = fb.members[0];
    chk.used = true;
    chk.verdict = verdict_of(f, fb.e, false);
    out.coset_checks.push_back(chk);
    out.fibers.push_back(std::move(fb));
  }
  if (bp.translated) out.notes.push_back("f-basis translated to " + format_point(f, bp.base));
  out.counts["points"] = static_cast<long long>(pts.size());
  out.counts["split"] = static_cast<long long>(used.size());
  out.counts["split_unused"] = excluded;
  out.counts["ramified"] = ramified;
  out.counts["nonsplit"] = other;
  out.counts["pole"] = poles;
  return out;
}

// ---------------------------------------------------------------------------
// Quartics with a V4 action

CoverData v4_quartic_cover(const RatExpr& quartic, int t) {
  require_t(t);
  FieldPtr fp = quartic.field();
  const Field& f = *fp;
  if (f.characteristic() == 2) throw ConstructionError("use the characteristic 2 quartic family");
  Poly P = to_polynomial(quartic);
  if (!P.is_homogeneous() || P.degree() != 4) throw ConstructionError("quartic must be homogeneous of degree 4");
  Poly conic(fp);
  for (const auto& [m, c] : P.terms()) {
    Poly::Mono h{};
    for (int i = 0; i < kNumVars; ++i) {
      if (m[i] % 2) throw ConstructionError("quartic must be a polynomial in x^2, y^2, z^2");
      h[i] = m[i] / 2;
    }
    conic.add_term(h, c);
  }
  auto xpts = enumerate_plane_curve(quartic);
  auto cpts = enumerate_plane_curve(conic.to_expr());
  std::set<ProjPoint> image;
  std::map<ProjPoint, std::vector<OrbitPoint>> orbits;
  for (const auto& p : xpts) {
    const auto& c = p.c;
    ProjPoint img = normalize(f, {f.mul(c[0], c[0]), f.mul(c[1], c[1]), f.mul(c[2], c[2])});
    image.insert(img);
    if (c[0] == 0 || c[1] == 0 || c[2] == 0) continue;
    orbits[img].push_back({p, {1, c[0], c[1]}});  // z normalized to 1
  }
  auto cp = conic_param(f, conic, cpts, image, false);
  auto out = finish_v4(f, fp, "quartic-v4", t, std::move(orbits), cp, "xyz", {"1", "x/z", "y/z"});
  out.counts["points"] = static_cast<long long>(xpts.size());
  out.notes.push_back("conic: " + conic.to_expr().to_string() + " = 0");
  return out;
}

CoverData v4_quartic_cover_char2(const RatExpr& conic_expr, int t) {
  require_t(t);
  FieldPtr fp = conic_expr.field();
  const Field& f = *fp;
  if (f.characteristic() != 2) throw ConstructionError("the translation family needs characteristic 2");
  Poly c = to_polynomial(conic_expr);
  if (c.degree() != 2) throw ConstructionError("conic must have degree 2");
  Poly H(fp);
  for (const auto& [m, v] : c.terms()) {
    if (m[2] || m[3] || m[4] || m[5]) throw ConstructionError("conic must be written in x and y");
    Poly::Mono h = m;
    h[2] = 2 - m[0] - m[1];
    H.add_term(h, v);
  }
  auto cpts = enumerate_plane_curve(H.to_expr());
  std::set<ProjPoint> image;
  std::map<ProjPoint, std::vector<OrbitPoint>> orbits;
  long long affine = 0;
  std::array<Elem, kNumVars> pt{};
  for (Elem x = 0; x < f.order(); ++x)
    for (Elem y = 0; y < f.order(); ++y) {
      pt[0] = f.add(f.mul(x, x), x);
      pt[1] = f.add(f.mul(y, y), y);
      if (c.eval(pt) != 0) continue;
      ++affine;
      ProjPoint img{{pt[0], pt[1], 1}};
      image.insert(img);
      orbits[img].push_back({ProjPoint{{x, y, 1}}, {1, x, y}});
    }
  auto cp = conic_param(f, H, cpts, image, true);
  auto out = finish_v4(f, fp, "quartic-v4-char2", t, std::move(orbits), cp, "xyz", {"1", "x", "y"});
  out.counts["affine_points"] = affine;
  out.notes.push_back("quartic: f(x^2+x, y^2+y) = 0 with f = " + conic_expr.to_string());
  return out;
}

CoverData v4_hyperelliptic_cover(FieldPtr fp, Elem a, Elem b, Elem c, Elem d, int t) {
  require_t(t);
  const Field& f = *fp;
  if (f.characteristic() == 2) throw ConstructionError("hyperelliptic family needs odd characteristic");
  if (d == 0) throw ConstructionError("d must be nonzero");
  const Elem d2 = f.mul(d, d);
  auto rhs = [&](Elem x) {
    const Elem x2 = f.mul(x, x), x4 = f.mul(x2, x2);
    Elem s = f.mul(a, f.mul(x4, x4));
    s = f.add(s, f.mul(b, f.mul(x4, x2)));
    s = f.add(s, f.mul(c, x4));
    s = f.add(s, f.mul(f.mul(b, d2), x2));
    return f.add(s, f.mul(a, f.mul(d2, d2)));
  };
  // eta^2 = a s^2 + b s w + (c - 2 a d^2) w^2 in variables (s, eta, w) = (x, y, z).
  const Elem c0 = f.sub(c, f.mul(f.from_int(2), f.mul(a, d2)));
  Poly H(fp);
  H.add_term({0, 2, 0, 0, 0, 0}, 1);
  H.add_term({2, 0, 0, 0, 0, 0}, f.neg(a));
  H.add_term({1, 0, 1, 0, 0, 0}, f.neg(b));
  H.add_term({0, 0, 2, 0, 0, 0}, f.neg(c0));
  auto cpts = enumerate_plane_curve(H.to_expr());
  std::set<ProjPoint> image;
  std::map<ProjPoint, std::vector<OrbitPoint>> orbits;
  long long affine = 0;
  for (Elem x = 0; x < f.order(); ++x)
    for (Elem y = 0; y < f.order(); ++y) {
      if (f.mul(y, y) != rhs(x)) continue;
      ++affine;
      if (x == 0) continue;
      const Elem x2 = f.mul(x, x);
      const Elem s = f.add(x2, f.div(d2, x2));
      const Elem eta = f.div(y, x2);
      ProjPoint img{{s, eta, 1}};
      if (H.eval({s, eta, 1, 0, 0, 0}) != 0) throw ConstructionError("quotient map does not land on the conic");
      image.insert(img);
      if (x2 == d || x2 == f.neg(d)) continue;
      orbits[img].push_back({ProjPoint{{x, y, 1}}, {1, x, x2}});
    }
  auto cp = conic_param(f, H, cpts, image, true);
  auto out = finish_v4(f, fp, "hyperelliptic-v4", t, std::move(orbits), cp, "sew", {"1", "x", "x^2"});
  out.counts["affine_points"] = affine;
  return out;
}

}  // namespace geolrc
