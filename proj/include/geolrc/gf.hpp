#pragma once
//
// Finite fields GF(p^m) in polynomial basis.
//
// An element is stored as its code: the integer sum c_0 + c_1 p + ... +
// c_{m-1} p^{m-1} of its coefficient vector (constant term first).  Codes
// double as the canonical ordering of field elements.  Multiplication has
// two paths: a table path (log/antilog) used everywhere, and a direct
// polynomial path kept for cross-checking.
//

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geolrc/error.hpp"

namespace geolrc {

using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Largest supported field order.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

class Field {
 public:
  /// Build GF(p^m).  `modulus` lists coefficients c_0..c_m of a monic
  /// irreducible polynomial; when empty a built-in default is used.
  static FieldPtr make(std::uint32_t p, std::uint32_t m,
                       std::vector<std::uint32_t> modulus = {});

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return m_; }
  std::uint32_t order() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool same_as(const Field& other) const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// Residue of x modulo the modulus (the literal `a`); only for m > 1.
  Elem generator_literal() const;
  /// A primitive element (the least code of multiplicative order q-1).
  Elem primitive() const { return primitive_; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (m_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_digits(a, b);
  }
  Elem neg(Elem a) const { return p_ == 2 ? a : neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    return exp_[s];
  }
  /// Multiplicative inverse; throws DivisionByZero for 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// a^e for any integer e; 0^0 = 1, 0^e with e < 0 throws.
  Elem pow(Elem a, std::int64_t e) const;
  /// Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(Elem a) const;
  Elem exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }
  /// Image of an integer under Z -> GF(p).
  Elem from_int(std::int64_t v) const;

  /// Schoolbook multiply-and-reduce; same result as mul().
  Elem mul_poly(Elem a, Elem b) const;

  std::vector<std::uint32_t> coefficients(Elem a) const;
  Elem from_coefficients(const std::vector<std::uint32_t>& c) const;

  /// Literal syntax: integers for prime fields, polynomials in `a`
  /// (for example "a^3+a+1" or "2a^2+1") for extension fields.
  Elem parse_literal(std::string_view text) const;
  std::string format(Elem a) const;

  /// All n-th roots of unity, sorted by code.  Requires n | q-1.
  std::vector<Elem> roots_of_unity(std::uint32_t n) const;
  /// All z with z^n = a.  Requires n | q-1.  Empty when a is not an n-th
  /// power; {0} when a = 0.
  std::vector<Elem> nth_roots(Elem a, std::uint32_t n) const;
  bool is_nth_power(Elem a, std::uint32_t n) const;

  std::string name() const;

 private:
  Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);
  Elem add_digits(Elem a, Elem b) const;

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;  // length 2(q-1) so log sums need no reduction
  std::vector<Elem> neg_;
  Elem primitive_ = 1;
};

bool is_prime(std::uint32_t n);

/// Irreducibility over GF(p) by trial division with every monic
/// polynomial of degree <= deg/2.  `poly` is c_0..c_deg, monic.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

/// The modulus used when none is given: x^4+x+1 for GF(16), x^5+x^2+1
/// for GF(32), otherwise the irreducible with least code.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t m);

/// Parse "x^4+x+1" style modulus text into coefficients c_0..c_m.
std::vector<std::uint32_t> parse_modulus(std::uint32_t p, std::string_view text);

FieldPtr make_field(std::uint32_t p, std::uint32_t m,
                    std::vector<std::uint32_t> modulus = {});

/// Value-type element bound to its field.  Arithmetic between elements of
/// different fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value);
  static FieldElement parse(FieldPtr field, std::string_view literal);

  const FieldPtr& field() const { return field_; }
  Elem value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::int64_t e) const;

  bool operator==(const FieldElement& o) const;
  std::strong_ordering operator<=>(const FieldElement& o) const;
  std::string to_string() const { return field_->format(value_); }

 private:
  const Field& checked(const FieldElement& o) const;

  FieldPtr field_;
  Elem value_;
};

}  // namespace geolrc
