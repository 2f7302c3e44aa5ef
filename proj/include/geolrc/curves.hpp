#pragma once
//
// Rational points of plane curves, P^3 surfaces and Weierstrass curves,
// the general chord-tangent group law, subgroups and cosets, and function
// values on Weierstrass curves (with local expansions where a formula
// degenerates).
//

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geolrc/exprs.hpp"
#include "geolrc/gf.hpp"

namespace geolrc {

/// Projective point; the last nonzero coordinate is 1.
struct ProjPoint {
  std::vector<Elem> c;
  auto operator<=>(const ProjPoint&) const = default;
};

ProjPoint normalize(const Field& f, std::vector<Elem> coords);
std::string format_point(const Field& f, const ProjPoint& p);

/// All points of P^dim(K), normalized, in lexicographic order.
std::vector<ProjPoint> projective_space(const Field& f, int dim);

/// Points of P^2 on a homogeneous curve eq(x,y,z) = 0.  Throws ConstructionError
/// when eq is not homogeneous.
std::vector<ProjPoint> enumerate_plane_curve(const RatExpr& eq);

/// Points of P^3 on w^(r+1) = f(x,y,z).  Requires (r+1) | q-1 and f
/// homogeneous of degree r+1.
std::vector<ProjPoint> enumerate_surface(const RatExpr& f, int r);

struct WeierstrassCurve {
  FieldPtr field;
  Elem a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  /// Throws ConstructionError when singular.
  static WeierstrassCurve make(FieldPtr field, Elem a1, Elem a2, Elem a3, Elem a4, Elem a6);
  Elem discriminant() const;
  bool contains(Elem x, Elem y) const;
  std::string to_string(char xv = 'x', char yv = 'y') const;
  bool operator==(const WeierstrassCurve& o) const {
    return field->same_as(*o.field) && a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 &&
           a6 == o.a6;
  }
};

/// Discriminant from b2, b4, b6, b8 (no singularity check).
Elem weierstrass_discriminant(const Field& f, Elem a1, Elem a2, Elem a3, Elem a4, Elem a6);

struct EcPoint {
  bool inf = true;
  Elem x = 0, y = 0;

  static EcPoint infinity() { return {}; }
  static EcPoint affine(Elem x, Elem y) { return {false, x, y}; }
  // Affine points sort by (x, y) codes; infinity sorts last.
  auto operator<=>(const EcPoint&) const = default;
};

std::string format_point(const Field& f, const EcPoint& p);

std::vector<EcPoint> ec_points(const WeierstrassCurve& E);
EcPoint ec_neg(const WeierstrassCurve& E, const EcPoint& P);
/// Throws ConstructionError when an operand is not on E.
EcPoint ec_add(const WeierstrassCurve& E, const EcPoint& P, const EcPoint& Q);
EcPoint ec_sub(const WeierstrassCurve& E, const EcPoint& P, const EcPoint& Q);
EcPoint ec_mul(const WeierstrassCurve& E, const EcPoint& P, std::int64_t n);

/// Hasse interval check |#E - (q+1)| <= 2 sqrt(q).
bool in_hasse_interval(std::uint64_t q, std::uint64_t count);

struct Subgroup {
  std::vector<EcPoint> members;  // sorted
  bool contains(const EcPoint& p) const;
  std::size_t order() const { return members.size(); }
  bool operator==(const Subgroup&) const = default;
};

/// Closure of a generating set under the group law.
Subgroup generated_subgroup(const WeierstrassCurve& E, const std::vector<EcPoint>& gens);

/// All subgroups of order n, sorted by member list.
std::vector<Subgroup> subgroups_of_order(const WeierstrassCurve& E, const std::vector<EcPoint>& pts,
                                         std::size_t n);

/// Canonical subgroup of order n (least member list), or nullopt.
std::optional<Subgroup> subgroup_of_order(const WeierstrassCurve& E, const std::vector<EcPoint>& pts,
                                          std::size_t n);

/// Point selector "x=<literal>" / "y=<literal>" / "point=(X,Y)".
struct PointSelector {
  char coord = 'x';  // 'x', 'y' or 'p'
  Elem x = 0, y = 0;
  static PointSelector parse(const Field& f, std::string_view text);
  bool matches(const EcPoint& p) const;
  std::string to_string(const Field& f) const;
};

/// The unique order-n subgroup containing every affine point the selector
/// matches (and at least one).  Without a selector the order-n subgroup must
/// be unique.  Throws ConstructionError when none or several qualify.
Subgroup select_subgroup(const WeierstrassCurve& E, const std::vector<EcPoint>& pts, std::size_t n,
                         const std::optional<PointSelector>& sel);

struct Coset {
  std::vector<EcPoint> members;  // sorted
  bool trivial = false;
};

/// Cosets ordered by least member.  Throws ConstructionError when G is not
/// closed under addition.
std::vector<Coset> cosets(const WeierstrassCurve& E, const std::vector<EcPoint>& pts, const Subgroup& G);

/// Variables in which a function on a Weierstrass curve is written.
struct CurveVars {
  int x = 0;  // var index
  int y = 1;
};
inline constexpr CurveVars kXY{0, 1};
inline constexpr CurveVars kUV{4, 5};

/// Value of a rational function on E at P; nullopt when P is a pole.
/// Direct evaluation is used when it is defined, otherwise the function
/// is expanded in a uniformizer at P.
std::optional<Elem> function_value(const WeierstrassCurve& E, const RatExpr& f, const EcPoint& P,
                                   CurveVars vars = kXY);

/// Image of P under a map E -> E' given by two rational functions; a pole
/// of either coordinate is read as the point at infinity.
EcPoint map_point(const WeierstrassCurve& E, const RatExpr& mu, const RatExpr& mv, const EcPoint& P,
                  CurveVars vars = kXY);

struct CoverVerdict {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

/// Generic cover check: every image must satisfy `target`.
CoverVerdict verify_cover_map(const std::vector<RatExpr>& maps, const std::vector<ElemBindings>& points,
                              const std::function<bool(const std::vector<std::optional<Elem>>&)>& target);

/// Isogeny check: images lie on E', exactly the kernel maps to infinity,
/// and phi(P+Q) = phi(P) + phi(Q) (all pairs when #E <= exhaustive_limit,
/// otherwise a deterministic sample).
CoverVerdict verify_isogeny(const WeierstrassCurve& E, const WeierstrassCurve& Et, const RatExpr& mu,
                            const RatExpr& mv, const std::optional<Subgroup>& kernel,
                            std::size_t exhaustive_limit = 100);

/// Functions with poles only at infinity, ordered by pole order:
/// 1, x, y, x^2, xy, x^3, x^2y, ...
std::vector<RatExpr> standard_basis(FieldPtr f, std::size_t count, char xv = 'x', char yv = 'y');

}  // namespace geolrc
