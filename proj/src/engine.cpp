#include "geolrc/engine.hpp"

#include <algorithm>
#include <set>

namespace geolrc {

namespace {

std::vector<std::size_t> pivots_of(const Matrix& rref_m) {
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < rref_m.rows; ++i)
    for (std::size_t j = 0; j < rref_m.cols; ++j)
      if (rref_m.at(i, j) != 0) {
        piv.push_back(j);
        break;
      }
  return piv;
}

}  // namespace

RecoveryCheck check_recovery_matrix(const Field& f, const Matrix& e) {
  RecoveryCheck out;
  out.singular = singular_deletions(f, e);
  out.pass = out.singular.empty();
  return out;
}

std::vector<ColumnRepair> repair_from_e(const LinearCode& code, const Partition& p) {
  const Field& f = *code.field;
  std::vector<ColumnRepair> out(code.n);
  for (std::size_t s = 0; s < p.sets.size(); ++s) {
    const auto& hs = p.sets[s];
    if (hs.e.rows != hs.columns.size()) {
      Partition one;
      one.r = p.r;
      one.sets = {hs};
      auto part = repair_from_basis(code, one);
      for (auto c : hs.columns) {
        out[c] = part[c];
        out[c].set = s;
      }
      continue;
    }
    for (std::size_t idx = 0; idx < hs.columns.size(); ++idx) {
      ColumnRepair& cr = out[hs.columns[idx]];
      cr.set = s;
      std::vector<std::size_t> keep;
      for (std::size_t i = 0; i < hs.columns.size(); ++i)
        if (i != idx) {
          keep.push_back(i);
          cr.helpers.push_back(hs.columns[i]);
        }
      auto inv = inverse(f, hs.e.select_rows(keep));
      if (!inv) continue;
      cr.coeffs = vec_mat(f, hs.e.row_vector(idx), *inv);
      cr.ok = true;
    }
  }
  return out;
}

std::vector<ColumnRepair> repair_from_basis(const LinearCode& code, const Partition& p) {
  const Field& f = *code.field;
  std::vector<ColumnRepair> out(code.n);
  for (std::size_t s = 0; s < p.sets.size(); ++s) {
    const auto& cols = p.sets[s].columns;
    for (auto c : cols) {
      ColumnRepair& cr = out[c];
      cr.set = s;
      for (auto h : cols)
        if (h != c) cr.helpers.push_back(h);
      if (code.k == 0) {
        cr.coeffs.assign(cr.helpers.size(), 0);
        cr.ok = true;
        continue;
      }
      auto sol = solve(f, code.basis.select_columns(cr.helpers), code.basis.column(c));
      if (!sol) continue;
      cr.coeffs = *sol;
      cr.ok = true;
    }
  }
  return out;
}

void finalize_code(LinearCode& code) {
  code.basis = rref(*code.field, code.generator).m;
  code.k = code.basis.rows;
  for (auto& p : code.partitions) {
    std::vector<bool> seen(code.n, false);
    for (const auto& hs : p.sets)
      for (auto c : hs.columns) {
        if (c >= code.n || seen[c]) throw ConstructionError("helper sets do not partition the columns");
        seen[c] = true;
      }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw ConstructionError("helper sets do not cover every column");
    p.repair = repair_from_e(code, p);
  }
}

LinearCode build_code(const CoverData& cover, bool force) {
  if (cover.fibers.empty()) throw ConstructionError("cover has no helper sets");
  const std::size_t r = static_cast<std::size_t>(cover.r), t = static_cast<std::size_t>(cover.t);
  const Field& f = *cover.field;
  LinearCode code;
  code.field = cover.field;
  code.family = cover.family;
  code.n = cover.n();
  code.delta = cover.delta;
  if (code.delta >= static_cast<int>(code.n) && !force)
    throw ConstructionError("designed distance n - delta = " + std::to_string(code.designed_distance()) +
                            " is not positive");
  code.generator = Matrix(r * t, code.n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < t; ++j)
      code.row_labels.push_back("e" + std::to_string(i + 1) + "*f" + std::to_string(j + 1));
  Partition part;
  part.r = r;
  std::size_t col = 0;
  for (const auto& fb : cover.fibers) {
    if (fb.members.size() != r + 1 || fb.e.rows != r + 1 || fb.e.cols != r || fb.f.size() != t)
      throw ConstructionError("fiber of the wrong shape");
    HelperSet hs;
    hs.e = fb.e;
    hs.label = fb.members[0];
    for (std::size_t m = 0; m < r + 1; ++m, ++col) {
      hs.columns.push_back(col);
      code.column_labels.push_back(fb.members[m]);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < t; ++j) code.generator.at(i * t + j, col) = f.mul(fb.e.at(m, i), fb.f[j]);
    }
    part.sets.push_back(std::move(hs));
  }
  code.partitions.push_back(std::move(part));
  code.diagnostics = cover.coset_checks;
  code.counts = cover.counts;
  code.notes = cover.notes;
  finalize_code(code);
  return code;
}

Elem local_recover(const LinearCode& code, const Word& word, std::size_t partition) {
  if (word.size() != code.n) throw ConstructionError("word has the wrong length");
  if (partition >= code.partitions.size()) throw ConstructionError("no such partition");
  auto it = std::find(word.begin(), word.end(), std::nullopt);
  if (it == word.end()) throw ConstructionError("word has no erasure");
  const std::size_t c = static_cast<std::size_t>(it - word.begin());
  const auto& rep = code.partitions[partition].repair[c];
  if (!rep.ok) throw ConstructionError("helper set of column " + std::to_string(c) + " fails the recovery check");
  const Field& f = *code.field;
  Elem v = 0;
  for (std::size_t i = 0; i < rep.helpers.size(); ++i) {
    const auto& h = word[rep.helpers[i]];
    if (!h) throw ConstructionError("more than one erasure in a helper set");
    v = f.add(v, f.mul(rep.coeffs[i], *h));
  }
  return v;
}

Elem recover_with_choice(const LinearCode& code, const Word& word, std::size_t erased, std::size_t preferred) {
  if (word.size() != code.n || erased >= code.n) throw ConstructionError("bad erasure position");
  std::vector<std::size_t> order;
  if (preferred < code.partitions.size()) order.push_back(preferred);
  for (std::size_t p = 0; p < code.partitions.size(); ++p)
    if (p != preferred) order.push_back(p);
  const Field& f = *code.field;
  for (auto p : order) {
    const auto& rep = code.partitions[p].repair[erased];
    if (!rep.ok) continue;
    bool intact = true;
    for (auto h : rep.helpers) intact = intact && word[h].has_value();
    if (!intact) continue;
    Elem v = 0;
    for (std::size_t i = 0; i < rep.helpers.size(); ++i) v = f.add(v, f.mul(rep.coeffs[i], *word[rep.helpers[i]]));
    return v;
  }
  throw ConstructionError("no intact helper set for column " + std::to_string(erased));
}

std::vector<Elem> recover_erasures(const LinearCode& code, const Word& word, std::size_t preferred) {
  if (word.size() != code.n) throw ConstructionError("word has the wrong length");
  Word w = word;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < code.n; ++c) {
      if (w[c]) continue;
      try {
        w[c] = recover_with_choice(code, w, c, preferred);
        progress = true;
      } catch (const ConstructionError&) {
      }
    }
  }
  std::vector<Elem> out;
  for (std::size_t c = 0; c < code.n; ++c) {
    if (!w[c]) throw ConstructionError("erasure pattern is not recoverable locally");
    out.push_back(*w[c]);
  }
  if (!is_codeword(code, out)) throw ConstructionError("filled word fails the parity check");
  return out;
}

bool is_codeword(const LinearCode& code, const std::vector<Elem>& word) {
  if (word.size() != code.n) return false;
  const Field& f = *code.field;
  std::vector<Elem> w = word;
  auto piv = pivots_of(code.basis);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    const Elem c = w[piv[i]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < code.n; ++j) w[j] = f.sub(w[j], f.mul(c, code.basis.at(i, j)));
  }
  return std::all_of(w.begin(), w.end(), [](Elem x) { return x == 0; });
}

std::vector<Elem> encode(const LinearCode& code, const std::vector<Elem>& message) {
  return vec_mat(*code.field, message, code.basis);
}

// ---------------------------------------------------------------------------
// Two recovery sets

int availability_divisor_degree(int r1, int r2, int t) {
  return (r1 + 1) * (r2 + 1) * t + r2 * (r1 + 1) + r1 * (r2 + 1);
}

namespace {

EcPoint least_outside(const WeierstrassCurve& C, const std::set<EcPoint>& image, const char* name) {
  for (const auto& p : ec_points(C))
    if (!image.count(p)) return p;
  throw ConstructionError(std::string("every point of the curve lies in the image (") + name + ")");
}

std::vector<Elem> translated_values(const WeierstrassCurve& C, const std::vector<RatExpr>& basis,
                                    const EcPoint& P, const EcPoint& Q) {
  const EcPoint R = ec_sub(C, P, Q);
  std::vector<Elem> out;
  for (const auto& b : basis) {
    auto v = function_value(C, b, R);
    if (!v) throw ConstructionError("basis function has a pole at a used point");
    out.push_back(*v);
  }
  return out;
}

}  // namespace

LinearCode build_availability_code(const AvailabilitySpec& s, bool force) {
  if (s.t < 1) throw ConstructionError("t must be at least 1");
  const Field& f = *s.E.field;
  const int r1 = static_cast<int>(s.G1.order()) - 1, r2 = static_cast<int>(s.G2.order()) - 1;
  if (r1 < 1 || r2 < 1) throw ConstructionError("subgroups must be nontrivial");
  for (const auto& g : s.G1.members)
    if (!g.inf && s.G2.contains(g)) throw ConstructionError("subgroups intersect beyond the identity");
  auto v1 = verify_isogeny(s.E, s.E1, s.phi1_u, s.phi1_v, s.G1);
  if (!v1.ok) throw ConstructionError("first map is not an isogeny with kernel G1: " + v1.failures.front());
  auto v2 = verify_isogeny(s.E, s.E2, s.phi2_u, s.phi2_v, s.G2);
  if (!v2.ok) throw ConstructionError("second map is not an isogeny with kernel G2: " + v2.failures.front());

  const auto pts = ec_points(s.E);
  const WeierstrassCurve& T = s.multiplier ? s.E : s.target;
  std::vector<EcPoint> img1, img2, img;
  for (const auto& P : pts) {
    img1.push_back(map_point(s.E, s.phi1_u, s.phi1_v, P));
    img2.push_back(map_point(s.E, s.phi2_u, s.phi2_v, P));
    EcPoint q = s.multiplier ? ec_mul(s.E, P, *s.multiplier) : map_point(s.E, s.phi_u, s.phi_v, P);
    if (!q.inf && !T.contains(q.x, q.y)) throw ConstructionError("phi does not land on the target curve");
    if ((s.G1.contains(P) || s.G2.contains(P)) && !q.inf)
      throw ConstructionError("kernel of phi does not contain G1 and G2");
    img.push_back(q);
  }
  const EcPoint Q1 = least_outside(s.E1, {img1.begin(), img1.end()}, "Q1");
  const EcPoint Q2 = least_outside(s.E2, {img2.begin(), img2.end()}, "Q2");
  const EcPoint Qp = least_outside(T, {img.begin(), img.end()}, "Q'");

  auto B1 = standard_basis(s.E.field, static_cast<std::size_t>(r2));
  auto B2 = standard_basis(s.E.field, static_cast<std::size_t>(r1));
  auto Bf = standard_basis(s.E.field, static_cast<std::size_t>(s.t));
  const std::size_t n = pts.size();
  std::vector<std::vector<Elem>> e1(n), e2(n), fv(n);
  for (std::size_t c = 0; c < n; ++c) {
    e1[c] = translated_values(s.E1, B1, img1[c], Q1);
    e2[c] = translated_values(s.E2, B2, img2[c], Q2);
    fv[c] = translated_values(T, Bf, img[c], Qp);
  }

  LinearCode code;
  code.field = s.E.field;
  code.family = "availability";
  code.n = n;
  code.delta = availability_divisor_degree(r1, r2, s.t);
  if (code.delta >= static_cast<int>(n) && !force)
    throw ConstructionError("designed distance n - delta = " + std::to_string(code.designed_distance()) +
                            " is not positive");
  const std::size_t R1 = static_cast<std::size_t>(r1), R2 = static_cast<std::size_t>(r2),
                    t = static_cast<std::size_t>(s.t);
  code.generator = Matrix(R2 * R1 * t, n);
  for (std::size_t h = 0; h < R2; ++h)
    for (std::size_t i = 0; i < R1; ++i)
      for (std::size_t j = 0; j < t; ++j) {
        const std::size_t row = (h * R1 + i) * t + j;
        code.row_labels.push_back("e1" + std::to_string(h + 1) + "*e2" + std::to_string(i + 1) + "*f" +
                                  std::to_string(j + 1));
        for (std::size_t c = 0; c < n; ++c)
          code.generator.at(row, c) = f.mul(f.mul(e1[c][h], e2[c][i]), fv[c][j]);
      }
  std::map<EcPoint, std::size_t> index;
  for (std::size_t c = 0; c < n; ++c) {
    index[pts[c]] = c;
    code.column_labels.push_back(format_point(f, pts[c]));
  }
  auto make_partition = [&](const Subgroup& G, const std::vector<std::vector<Elem>>& ev, std::size_t r) {
    Partition p;
    p.r = r;
    for (const auto& cs : cosets(s.E, pts, G)) {
      HelperSet hs;
      hs.label = format_point(f, cs.members[0]);
      hs.e = Matrix(cs.members.size(), r);
      for (std::size_t m = 0; m < cs.members.size(); ++m) {
        const std::size_t c = index.at(cs.members[m]);
        hs.columns.push_back(c);
        for (std::size_t u = 0; u < r; ++u) hs.e.at(m, u) = ev[c][u];
      }
      CosetCheck chk;
      chk.label = "G" + std::to_string(code.partitions.size() + 1) + " coset of " + hs.label;
      chk.trivial = cs.trivial;
      chk.used = true;
      chk.verdict = check_recovery_matrix(f, hs.e).pass ? "pass" : "singular";
      code.diagnostics.push_back(chk);
      p.sets.push_back(std::move(hs));
    }
    code.partitions.push_back(std::move(p));
  };
  make_partition(s.G1, e2, R1);
  make_partition(s.G2, e1, R2);
  code.counts["points"] = static_cast<long long>(n);
  code.notes.push_back("Q1 = " + format_point(f, Q1) + ", Q2 = " + format_point(f, Q2) + ", Q' = " +
                       format_point(f, Qp));
  finalize_code(code);
  return code;
}

}  // namespace geolrc
