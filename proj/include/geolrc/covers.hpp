#pragma once
//
// Cover data for each curve family: helper sets (fibers of size r+1), the
// e-function values on each fiber, the f-function values at the base point
// of each fiber, and the divisor degree delta.
//

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geolrc/curves.hpp"
#include "geolrc/matrix.hpp"

namespace geolrc {

struct Fiber {
  std::vector<std::string> members;  // point labels, canonical order
  Matrix e;                          // (r+1) x r: e_u at each member
  std::vector<Elem> f;               // f_v at the base point
  std::string base;                  // base point label
};

/// Diagnostic check of one coset (or orbit) against the e-functions,
/// whether or not it is used as a helper set.
struct CosetCheck {
  std::string label;  // least member
  bool trivial = false;
  bool used = false;
  std::string verdict;  // "pass", "singular" or "pole"
};

struct CoverData {
  FieldPtr field;
  std::string family;
  int r = 0;
  int t = 0;
  int delta = 0;
  std::vector<Fiber> fibers;
  std::vector<CosetCheck> coset_checks;
  std::map<std::string, long long> counts;
  std::vector<std::string> e_exprs, f_exprs;  // printable bases
  std::vector<std::string> notes;

  std::size_t n() const { return fibers.size() * static_cast<std::size_t>(r + 1); }
};

/// Degree tr + t + r of D = tG + r*infinity.
int quotient_divisor_degree(int r, int t);
/// 2 ceil(r/2) + 2 ceil(t/2) (r+1).
int variant_divisor_degree(int r, int t);

struct EllipticCoverSpec {
  WeierstrassCurve E;        // source, variables x, y
  WeierstrassCurve target;   // quotient, variables u, v
  Subgroup kernel;
  RatExpr map_u, map_v;      // in x, y
  std::vector<RatExpr> e;    // in x, y; empty -> standard basis with r entries
  std::vector<RatExpr> f;    // in u, v; empty -> family default
  int t = 0;
  std::optional<int> delta;
};

/// Recovery verdict of every coset of G against e (pole, singular minor, or pass).
std::vector<CosetCheck> coset_diagnostics(const WeierstrassCurve& E, const Subgroup& G,
                                          const std::vector<RatExpr>& e);

/// Helper sets are the nontrivial cosets of the kernel; n = #E - (r+1).
CoverData elliptic_quotient_cover(const EllipticCoverSpec& spec);

/// Extra input for the quadratic-extension variant: the x-coordinate of the
/// pole P is a root beta of x^2 + c1 x + c0 (irreducible over K).
struct VariantPole {
  Elem c0 = 0, c1 = 0;
};

/// Helper sets are all cosets; f spans L(t'(P' + conj P')) with
/// t' = ceil(t/2), computed by linear algebra on local expansions.
CoverData elliptic_variant_cover(const EllipticCoverSpec& spec, const VariantPole& pole);

struct KummerSpec {
  WeierstrassCurve Y;  // base curve, variables x, y
  RatExpr h;           // in x, y
  int r = 2;           // fibers of size r+1 = degree of the cover
  int t = 0;
  std::vector<RatExpr> f;  // empty -> standard basis of L(t*infinity)
  int delta = 0;
};

/// Fibers over points Q with h(Q) a nonzero (r+1)-th power; e_u = z^(u-1).
/// With the default basis, when infinity splits the divisor moves to the
/// least unused point P0 and f_j(Q) = b_j(Q - P0).
CoverData kummer_cover(const KummerSpec& spec);

/// Hermitian curve y^4 + y = x^5 over F16 with the order-3 quotient.
CoverData hermitian_quotient_cover(int t);  // 1 <= t <= 18

struct NormalFormSpec {
  WeierstrassCurve Y;  // variables x, y
  RatExpr f;           // in x, y
  int t = 0;
  std::vector<RatExpr> fbasis;  // empty -> standard basis
  int delta = 0;
};

/// Splitting of z^3 - 3f z^2 - 3(f+1) z - 1 at each point; e = (1, w).
/// The basis is placed as for kummer_cover.
CoverData cubic_normalform_cover(const NormalFormSpec& spec);

/// Odd characteristic quartic f(x^2, y^2, z^2) = 0 (expression in x, y, z).
CoverData v4_quartic_cover(const RatExpr& quartic, int t);

/// Characteristic 2 quartic f(x^2 + x, y^2 + y) = 0; `conic` is f(x, y).
CoverData v4_quartic_cover_char2(const RatExpr& conic, int t);

/// y^2 = a x^8 + b x^6 + c x^4 + b d^2 x^2 + a d^4 in odd characteristic.
CoverData v4_hyperelliptic_cover(FieldPtr field, Elem a, Elem b, Elem c, Elem d, int t);

}  // namespace geolrc
