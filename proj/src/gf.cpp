#include "geolrc/gf.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace geolrc {

namespace {

using Poly = std::vector<std::uint32_t>;  // c_0..c_d over GF(p)

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t qt = r / nr;
    std::int64_t tmp = t - qt * nt;
    t = nt;
    nt = tmp;
    tmp = r - qt * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo b (b nonzero) over GF(p).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = c * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  if (f[0] == 0) return false;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t m) {
  if (p == 2 && m == 4) return {1, 1, 0, 0, 1};     // x^4 + x + 1
  if (p == 2 && m == 5) return {1, 0, 1, 0, 0, 1};  // x^5 + x^2 + 1
  if (m == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < m; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly g(m + 1);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < m; ++i) {
      g[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    g[m] = 1;
    if (is_irreducible(p, g)) return g;
  }
  throw FieldError("no irreducible polynomial found");
}

std::vector<std::uint32_t> parse_modulus(std::uint32_t p, std::string_view text) {
  // Terms of the form [c][*]x[^e] or c, separated by + or -.
  Poly out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&](std::uint64_t& v) {
    skip();
    std::size_t start = i;
    v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
      ++i;
    }
    return i > start;
  };
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw ParseError("expected '+' or '-' in modulus", i);
    }
    first = false;
    std::uint64_t coeff = 1;
    bool has_coeff = read_int(coeff);
    if (!has_coeff) coeff = 1;
    skip();
    if (i < text.size() && text[i] == '*') {
      ++i;
      skip();
    }
    std::uint64_t e = 0;
    if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
      ++i;
      e = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        if (!read_int(e)) throw ParseError("expected exponent", i);
      }
    } else if (!has_coeff) {
      throw ParseError("expected term", i);
    }
    if (out.size() <= e) out.resize(e + 1, 0);
    const std::uint64_t c = coeff % p;
    out[e] = static_cast<std::uint32_t>(
        (out[e] + (sign > 0 ? c : (p - c) % p)) % p);
  }
  trim(out);
  if (out.empty()) throw ParseError("empty modulus", 0);
  return out;
}

Field::Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < m; ++i) q_ *= p;
  neg_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    auto c = coefficients(a);
    for (auto& ci : c) ci = (p_ - ci) % p_;
    neg_[a] = from_coefficients(c);
  }
  // Find the least primitive element with the polynomial multiply, then
  // build log/antilog tables from it.
  const std::uint32_t order = q_ - 1;
  std::vector<std::uint32_t> prime_factors;
  {
    std::uint32_t n = order;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime_factors.push_back(d);
        while (n % d == 0) n /= d;
      }
    }
    if (n > 1) prime_factors.push_back(n);
  }
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul_poly(r, a);
      a = mul_poly(a, a);
      e >>= 1;
    }
    return r;
  };
  primitive_ = 0;
  for (Elem g = 1; g < q_; ++g) {
    bool ok = true;
    for (auto f : prime_factors) {
      if (slow_pow(g, order / f) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      primitive_ = g;
      break;
    }
  }
  if (primitive_ == 0) throw FieldError("field has no primitive element; modulus reducible?");
  log_.assign(q_, 0);
  exp_.assign(2 * static_cast<std::size_t>(order), 0);
  Elem cur = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    exp_[i] = cur;
    exp_[i + order] = cur;
    log_[cur] = i;
    cur = mul_poly(cur, primitive_);
  }
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (m < 1) throw FieldError("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw FieldError("field order exceeds 2^16");
  }
  if (modulus.empty()) {
    modulus = default_modulus(p, m);
  } else {
    for (auto& c : modulus) c %= p;
    trim(modulus);
    if (modulus.size() != m + 1) throw FieldError("modulus degree does not match m");
    if (modulus.back() != 1) throw FieldError("modulus must be monic");
    if (!is_irreducible(p, modulus)) throw FieldError("modulus is reducible");
  }
  return FieldPtr(new Field(p, m, std::move(modulus)));
}

FieldPtr make_field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus) {
  return Field::make(p, m, std::move(modulus));
}

bool Field::same_as(const Field& other) const {
  return this == &other ||
         (p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_);
}

Elem Field::generator_literal() const {
  if (m_ < 2) throw FieldError("literal 'a' needs an extension field");
  return p_;
}

Elem Field::add_digits(Elem a, Elem b) const {
  Elem out = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    const Elem d = (a % p_ + b % p_) % p_;
    out += d * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DivisionByZero();
  const std::uint32_t order = q_ - 1;
  return exp_[(order - log_[a]) % order];
}

Elem Field::pow(Elem a, std::int64_t e) const {
  if (e == 0) return 1;
  if (a == 0) {
    if (e < 0) throw DivisionByZero();
    return 0;
  }
  const std::int64_t order = q_ - 1;
  std::int64_t l = (static_cast<std::int64_t>(log_[a]) * (e % order)) % order;
  if (l < 0) l += order;
  return exp_[static_cast<std::size_t>(l)];
}

std::uint32_t Field::log(Elem a) const {
  if (a == 0) throw DivisionByZero();
  return log_[a];
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<std::uint32_t> Field::coefficients(Elem a) const {
  std::vector<std::uint32_t> c(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::from_coefficients(const std::vector<std::uint32_t>& c) const {
  Elem out = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += (i < c.size() ? c[i] % p_ : 0) * scale;
    scale *= p_;
  }
  return out;
}

Elem Field::mul_poly(Elem a, Elem b) const {
  if (m_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  auto ca = coefficients(a);
  auto cb = coefficients(b);
  Poly prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i)
    for (std::uint32_t j = 0; j < m_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
  return from_coefficients(poly_mod(prod, modulus_, p_));
}

Elem Field::parse_literal(std::string_view text) const {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&](std::uint64_t& v) {
    std::size_t start = i;
    v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = (v * 10 + static_cast<std::uint64_t>(text[i] - '0')) % (1ull << 40);
      ++i;
    }
    return i > start;
  };
  Elem acc = 0;
  bool first = true;
  skip();
  if (i >= text.size()) throw ParseError("empty field literal", 0);
  while (true) {
    skip();
    if (i >= text.size()) break;
    bool negate = false;
    if (text[i] == '+' || text[i] == '-') {
      negate = text[i] == '-';
      ++i;
      skip();
    } else if (!first) {
      throw ParseError("unexpected character '" + std::string(1, text[i]) + "' in literal", i);
    }
    first = false;
    std::uint64_t coeff = 1;
    const bool has_coeff = read_int(coeff);
    if (!has_coeff) coeff = 1;
    skip();
    Elem term = from_int(static_cast<std::int64_t>(coeff % p_));
    if (i < text.size() && text[i] == '*') {
      ++i;
      skip();
      if (i >= text.size() || text[i] != 'a') throw ParseError("expected 'a' after '*'", i);
    }
    if (i < text.size() && text[i] == 'a') {
      ++i;
      std::int64_t e = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        bool neg_e = false;
        if (i < text.size() && text[i] == '-') {
          neg_e = true;
          ++i;
        }
        std::uint64_t ue = 0;
        if (!read_int(ue)) throw ParseError("expected exponent", i);
        e = neg_e ? -static_cast<std::int64_t>(ue) : static_cast<std::int64_t>(ue);
      }
      term = mul(term, pow(generator_literal(), e));
    } else if (!has_coeff) {
      throw ParseError("expected field literal", i);
    }
    acc = negate ? sub(acc, term) : add(acc, term);
  }
  return acc;
}

std::string Field::format(Elem a) const {
  if (m_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  auto c = coefficients(a);
  std::string out;
  for (std::uint32_t i = m_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]);
      out += 'a';
      if (i > 1) out += '^' + std::to_string(i);
    }
  }
  return out;
}

std::vector<Elem> Field::roots_of_unity(std::uint32_t n) const {
  if (n == 0 || (q_ - 1) % n != 0)
    throw FieldError(std::to_string(n) + " does not divide q-1 = " + std::to_string(q_ - 1));
  const std::uint32_t step = (q_ - 1) / n;
  std::vector<Elem> out;
  out.reserve(n);
  for (std::uint32_t k = 0; k < n; ++k) out.push_back(exp_[k * step]);
  std::sort(out.begin(), out.end());
  return out;
}

bool Field::is_nth_power(Elem a, std::uint32_t n) const {
  if (n == 0 || (q_ - 1) % n != 0)
    throw FieldError(std::to_string(n) + " does not divide q-1 = " + std::to_string(q_ - 1));
  if (a == 0) return true;
  return log_[a] % n == 0;
}

std::vector<Elem> Field::nth_roots(Elem a, std::uint32_t n) const {
  if (n == 0 || (q_ - 1) % n != 0)
    throw FieldError(std::to_string(n) + " does not divide q-1 = " + std::to_string(q_ - 1));
  if (a == 0) return {0};
  const std::uint32_t l = log_[a];
  if (l % n != 0) return {};
  const Elem base = exp_[l / n];
  std::vector<Elem> out;
  out.reserve(n);
  for (Elem z : roots_of_unity(n)) out.push_back(mul(base, z));
  std::sort(out.begin(), out.end());
  return out;
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << q_ << ")";
  return os.str();
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
  if (!field_) throw FieldError("null field");
  if (value_ >= field_->order()) throw FieldError("element code out of range");
}

FieldElement FieldElement::parse(FieldPtr field, std::string_view literal) {
  Elem v = field->parse_literal(literal);
  return FieldElement(std::move(field), v);
}

const Field& FieldElement::checked(const FieldElement& o) const {
  if (!field_->same_as(*o.field_)) throw FieldMismatch();
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return {field_, checked(o).add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {field_, checked(o).sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  return {field_, checked(o).mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  return {field_, checked(o).div(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::int64_t e) const { return {field_, field_->pow(value_, e)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  return field_->same_as(*o.field_) && value_ == o.value_;
}

std::strong_ordering FieldElement::operator<=>(const FieldElement& o) const {
  checked(o);
  return value_ <=> o.value_;
}

}  // namespace geolrc
