#include "geolrc/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "geolrc/surfaces.hpp"

namespace geolrc {

// Generated from configs/*.cfg at configure time.
namespace detail {
const std::vector<std::pair<std::string, std::string>>& builtin_configs();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

long parse_long(const ConfigValue& v, const std::string& key) {
  const std::string s = trim(v.text);
  try {
    std::size_t pos = 0;
    long x = std::stol(s, &pos);
    if (pos == s.size()) return x;
  } catch (const std::logic_error&) {
  }
  throw ConfigError(key + " must be an integer, got '" + s + "'", v.line);
}

const std::set<std::string> kFamilies = {"elliptic-quotient", "elliptic-variant", "availability",
                                         "quartic-v4",        "quartic-v4-char2", "hyperelliptic-v4",
                                         "kummer",            "hermitian-quotient", "cubic-normalform",
                                         "surface"};

}  // namespace

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> list = {
      {"elliptic-quotient",
       {"curve", "kernel_order", "target", "map_u", "map_v", "t"},
       {"kernel", "e", "f", "delta"},
       "quotient of an elliptic curve by a subgroup; helper sets are the nontrivial cosets"},
      {"elliptic-variant",
       {"curve", "kernel_order", "target", "map_u", "map_v", "e", "pole_poly", "t"},
       {"kernel", "delta"},
       "elliptic quotient with f-poles at a conjugate pair of points over a quadratic extension"},
      {"availability",
       {"curve", "kernel1_order", "kernel2_order", "curve1", "curve2", "phi1_u", "phi1_v", "phi2_u", "phi2_v",
        "t"},
       {"kernel1", "kernel2", "multiplier", "target", "phi_u", "phi_v"},
       "two coset partitions of E(K) from two subgroups (two disjoint recovery sets)"},
      {"quartic-v4", {"quartic", "t"}, {}, "plane quartic f(x^2, y^2, z^2) = 0 in odd characteristic"},
      {"quartic-v4-char2", {"conic", "t"}, {}, "plane quartic f(x^2+x, y^2+y) = 0 in characteristic 2"},
      {"hyperelliptic-v4",
       {"a", "b", "c", "d", "t"},
       {},
       "genus-3 curve y^2 = a x^8 + b x^6 + c x^4 + b d^2 x^2 + a d^4"},
      {"kummer",
       {"curve", "h", "h_degree", "t"},
       {"r", "f", "delta"},
       "cyclic cover z^(r+1) = h of an elliptic curve; delta = (r+1)t + (r-1) deg h"},
      {"hermitian-quotient", {"t"}, {}, "Hermitian curve y^4 + y = x^5 over F16 over its order-3 quotient"},
      {"cubic-normalform",
       {"curve", "f", "f_degree", "t"},
       {"basis", "delta"},
       "cubic Galois cover z^3 - 3f z^2 - 3(f+1) z - 1 of an elliptic curve; delta = 3t + deg f"},
      {"surface", {"f", "m"}, {"r"}, "surface w^(r+1) = f(x, y, z) projected to the plane"},
  };
  return list;
}

void Config::set(const std::string& key, const std::string& value) { params[key] = ConfigValue{value, 0}; }

const ConfigValue& Config::get(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw ConfigError("[" + family + "] needs '" + key + "'", family_line);
  return it->second;
}

int Config::get_int(const std::string& key) const { return static_cast<int>(parse_long(get(key), key)); }

std::optional<int> Config::get_int_opt(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_int(key);
}

Config parse_config(const std::string& text, const std::string& source) {
  Config cfg;
  cfg.source = source;
  std::map<std::string, ConfigValue> field_kv, analysis_kv;
  std::string section;
  int field_line = 0;
  std::set<std::string> seen_sections;
  std::istringstream in(text);
  int no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("unterminated section header", no);
      section = trim(s.substr(1, s.size() - 2));
      if (!seen_sections.insert(section).second) throw ConfigError("duplicate section [" + section + "]", no);
      if (section == "field") {
        field_line = no;
      } else if (section == "analysis" || section == "expect") {
      } else if (kFamilies.count(section)) {
        if (!cfg.family.empty()) throw ConfigError("more than one family block", no);
        cfg.family = section;
        cfg.family_line = no;
      } else {
        throw ConfigError("unknown section [" + section + "]", no);
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", no);
    const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", no);
    if (section.empty()) throw ConfigError("key outside any section", no);
    std::map<std::string, ConfigValue>* dest = nullptr;
    if (section == "field") dest = &field_kv;
    else if (section == "analysis") dest = &analysis_kv;
    else if (section == "expect") dest = &cfg.expect;
    else dest = &cfg.params;
    if (!dest->emplace(key, ConfigValue{value, no}).second) throw ConfigError("duplicate key '" + key + "'", no);
  }
  if (!field_line) throw ConfigError("missing [field] section");
  if (cfg.family.empty()) throw ConfigError("missing family section");

  for (const auto& [k, v] : field_kv)
    if (k != "p" && k != "m" && k != "modulus") throw ConfigError("unknown [field] key '" + k + "'", v.line);
  auto fp = field_kv.find("p");
  if (fp == field_kv.end()) throw ConfigError("[field] needs p", field_line);
  const long p = parse_long(fp->second, "p");
  long m = 1;
  if (auto fm = field_kv.find("m"); fm != field_kv.end()) m = parse_long(fm->second, "m");
  if (p < 2 || m < 1) throw ConfigError("p must be at least 2 and m at least 1", fp->second.line);
  if (!is_prime(static_cast<std::uint32_t>(p))) throw ConfigError("p must be prime", fp->second.line);
  std::vector<std::uint32_t> modulus;
  int modulus_line = field_line;
  try {
    if (auto fmod = field_kv.find("modulus"); fmod != field_kv.end()) {
      modulus_line = fmod->second.line;
      modulus = parse_modulus(static_cast<std::uint32_t>(p), fmod->second.text);
    }
    cfg.field = make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m), modulus);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what(), modulus_line);
  }

  const FamilyInfo* info = nullptr;
  for (const auto& fi : families())
    if (fi.tag == cfg.family) info = &fi;
  for (const auto& [k, v] : cfg.params) {
    const bool known = std::count(info->required.begin(), info->required.end(), k) +
                       std::count(info->optional.begin(), info->optional.end(), k);
    if (!known) throw ConfigError("unknown key '" + k + "' for [" + cfg.family + "]", v.line);
  }
  for (const auto& k : info->required)
    if (!cfg.params.count(k)) throw ConfigError("[" + cfg.family + "] needs '" + k + "'", cfg.family_line);

  for (const auto& [k, v] : analysis_kv) {
    const long x = parse_long(v, k);
    if (k == "exact_budget") {
      if (x < 0) throw ConfigError("exact_budget must be nonnegative", v.line);
      cfg.policy.exact_budget = static_cast<std::uint64_t>(x);
    } else if (k == "low_weight") {
      if (x < 0) throw ConfigError("low_weight must be nonnegative", v.line);
      cfg.policy.low_weight = static_cast<int>(x);
    } else {
      throw ConfigError("unknown [analysis] key '" + k + "'", v.line);
    }
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

namespace {

struct Ctx {
  const Config& cfg;
  FieldPtr F;

  const ConfigValue& v(const std::string& k) const { return cfg.get(k); }

  template <class Fn>
  auto wrap(const std::string& key, Fn fn) const {
    const ConfigValue& val = v(key);
    try {
      return fn(val.text);
    } catch (const ConfigError&) {
      throw;
    } catch (const ParseError& e) {
      throw ConfigError(key + ": " + e.what(), val.line);
    } catch (const FieldError& e) {
      throw ConfigError(key + ": " + e.what(), val.line);
    }
  }

  Elem lit(const std::string& key) const {
    return wrap(key, [&](const std::string& s) { return F->parse_literal(s); });
  }

  RatExpr expr(const std::string& key) const {
    return wrap(key, [&](const std::string& s) { return RatExpr::parse(s, F); });
  }

  std::vector<RatExpr> list(const std::string& key) const {
    if (!cfg.has(key)) return {};
    return wrap(key, [&](const std::string& s) {
      std::vector<RatExpr> out;
      std::string cur;
      std::istringstream in(s);
      while (std::getline(in, cur, ';')) {
        if (trim(cur).empty()) throw ConfigError(key + ": empty list entry", v(key).line);
        out.push_back(RatExpr::parse(trim(cur), F));
      }
      return out;
    });
  }

  WeierstrassCurve curve(const std::string& key) const {
    const ConfigValue& val = v(key);
    auto ws = split_ws(val.text);
    if (ws.size() != 5) throw ConfigError(key + " takes five coefficients a1 a2 a3 a4 a6", val.line);
    std::array<Elem, 5> a{};
    for (std::size_t i = 0; i < 5; ++i) {
      try {
        a[i] = F->parse_literal(ws[i]);
      } catch (const Error& e) {
        throw ConfigError(key + ": " + e.what(), val.line);
      }
    }
    return WeierstrassCurve::make(F, a[0], a[1], a[2], a[3], a[4]);
  }

  Subgroup subgroup(const WeierstrassCurve& E, const std::string& order_key, const std::string& sel_key) const {
    const int n = cfg.get_int(order_key);
    if (n < 2) throw ConfigError(order_key + " must be at least 2", v(order_key).line);
    std::optional<PointSelector> sel;
    if (cfg.has(sel_key))
      sel = wrap(sel_key, [&](const std::string& s) { return PointSelector::parse(*F, s); });
    return select_subgroup(E, ec_points(E), static_cast<std::size_t>(n), sel);
  }

  int positive(const std::string& key) const {
    const int x = cfg.get_int(key);
    if (x < 1) throw ConfigError(key + " must be at least 1", v(key).line);
    return x;
  }
};

EllipticCoverSpec elliptic_spec(const Ctx& c) {
  EllipticCoverSpec s;
  s.E = c.curve("curve");
  s.target = c.curve("target");
  s.kernel = c.subgroup(s.E, "kernel_order", "kernel");
  s.map_u = c.expr("map_u");
  s.map_v = c.expr("map_v");
  s.e = c.list("e");
  if (c.cfg.has("f")) s.f = c.list("f");
  s.t = c.positive("t");
  if (c.cfg.has("delta")) s.delta = c.positive("delta");
  return s;
}

}  // namespace

LinearCode build_from_config(const Config& cfg, bool force) {
  Ctx c{cfg, cfg.field};
  const std::string& fam = cfg.family;
  if (fam == "elliptic-quotient") return build_code(elliptic_quotient_cover(elliptic_spec(c)), force);
  if (fam == "elliptic-variant") {
    auto s = elliptic_spec(c);
    Poly pp = c.wrap("pole_poly", [&](const std::string& t) { return to_polynomial(RatExpr::parse(t, c.F)); });
    VariantPole pole;
    Poly::Mono m0{}, m1{}, m2{};
    m1[0] = 1;
    m2[0] = 2;
    for (const auto& [mono, coef] : pp.terms()) {
      if (mono == m0) pole.c0 = coef;
      else if (mono == m1) pole.c1 = coef;
      else if (mono == m2 && coef == 1) continue;
      else throw ConfigError("pole_poly must be monic x^2 + c1 x + c0", c.v("pole_poly").line);
    }
    if (pp.degree() != 2) throw ConfigError("pole_poly must have degree 2", c.v("pole_poly").line);
    return build_code(elliptic_variant_cover(s, pole), force);
  }
  if (fam == "availability") {
    AvailabilitySpec s;
    s.E = c.curve("curve");
    s.E1 = c.curve("curve1");
    s.E2 = c.curve("curve2");
    s.G1 = c.subgroup(s.E, "kernel1_order", "kernel1");
    s.G2 = c.subgroup(s.E, "kernel2_order", "kernel2");
    s.phi1_u = c.expr("phi1_u");
    s.phi1_v = c.expr("phi1_v");
    s.phi2_u = c.expr("phi2_u");
    s.phi2_v = c.expr("phi2_v");
    if (cfg.has("multiplier")) {
      if (cfg.has("target") || cfg.has("phi_u") || cfg.has("phi_v"))
        throw ConfigError("give either multiplier or target/phi_u/phi_v", cfg.get("multiplier").line);
      s.multiplier = cfg.get_int("multiplier");
      s.target = s.E;
    } else {
      s.target = c.curve("target");
      s.phi_u = c.expr("phi_u");
      s.phi_v = c.expr("phi_v");
    }
    s.t = c.positive("t");
    return build_availability_code(s, force);
  }
  if (fam == "quartic-v4") return build_code(v4_quartic_cover(c.expr("quartic"), c.positive("t")), force);
  if (fam == "quartic-v4-char2")
    return build_code(v4_quartic_cover_char2(c.expr("conic"), c.positive("t")), force);
  if (fam == "hyperelliptic-v4")
    return build_code(v4_hyperelliptic_cover(c.F, c.lit("a"), c.lit("b"), c.lit("c"), c.lit("d"), c.positive("t")),
                      force);
  if (fam == "kummer") {
    const int r = cfg.get_int_opt("r").value_or(2), t = c.positive("t");
    const int delta = cfg.has("delta") ? c.positive("delta") : (r + 1) * t + (r - 1) * c.positive("h_degree");
    KummerSpec s{c.curve("curve"), c.expr("h"), r, t, c.list("f"), delta};
    return build_code(kummer_cover(s), force);
  }
  if (fam == "hermitian-quotient") {
    if (cfg.field->order() != 16) throw ConfigError("the Hermitian instance lives over F16 (p = 2, m = 4)");
    return build_code(hermitian_quotient_cover(c.positive("t")), force);
  }
  if (fam == "cubic-normalform") {
    const int t = c.positive("t");
    const int delta = cfg.has("delta") ? c.positive("delta") : 3 * t + c.positive("f_degree");
    NormalFormSpec s{c.curve("curve"), c.expr("f"), t, c.list("basis"), delta};
    return build_code(cubic_normalform_cover(s), force);
  }
  if (fam == "surface") {
    SurfaceSpec s{c.expr("f"), cfg.get_int_opt("r").value_or(2), cfg.get_int("m")};
    return build_surface_code(s);
  }
  throw ConfigError("unknown family " + fam, cfg.family_line);
}

std::vector<std::string> builtin_config_ids() {
  std::vector<std::string> out;
  for (const auto& [id, text] : detail::builtin_configs()) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> builtin_config_text(const std::string& id) {
  for (const auto& [k, text] : detail::builtin_configs())
    if (k == id) return text;
  return std::nullopt;
}

Config builtin_config(const std::string& id) {
  auto text = builtin_config_text(id);
  if (!text) throw ConfigError("unknown built-in config '" + id + "'");
  return parse_config(*text, id);
}

}  // namespace geolrc
