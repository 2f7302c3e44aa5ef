#include "geolrc/surfaces.hpp"

namespace geolrc {

std::vector<std::array<int, 3>> monomials(int m) {
  std::vector<std::array<int, 3>> out;
  for (int i = m; i >= 0; --i)
    for (int j = m - i; j >= 0; --j) out.push_back({i, j, m - i - j});
  return out;
}

long cubic_distance_bound(long n, int m, long q) { return n - (3L * m + 1) * q - 1; }

LinearCode build_surface_code(const SurfaceSpec& s) {
  FieldPtr fp = s.f.field();
  const Field& f = *fp;
  const int deg = s.r + 1;
  if (s.r < 1 || (f.order() - 1) % static_cast<std::uint64_t>(deg) != 0)
    throw ConstructionError("r+1 must divide q-1");
  if (s.m < s.r - 1 || s.m < 0) throw ConstructionError("m must be at least r-1");
  Poly P = to_polynomial(s.f);
  if (!P.is_homogeneous() || P.degree() != deg) throw ConstructionError("f must be homogeneous of degree r+1");
  for (const auto& [mono, c] : P.terms())
    for (int v = 3; v < kNumVars; ++v)
      if (mono[v]) throw ConstructionError("f must be written in x, y, z");

  struct Col {
    Elem x, y, w;
  };
  std::vector<Col> cols;
  LinearCode code;
  code.field = fp;
  code.family = "surface";
  Partition part;
  part.r = static_cast<std::size_t>(s.r);
  long long branch = 0, nonsplit = 0, split = 0;
  for (Elem x = 0; x < f.order(); ++x)
    for (Elem y = 0; y < f.order(); ++y) {
      const Elem v = P.eval({x, y, 1, 0, 0, 0});
      if (v == 0) {
        ++branch;
        continue;
      }
      auto ws = f.nth_roots(v, static_cast<std::uint64_t>(deg));
      if (ws.empty()) {
        ++nonsplit;
        continue;
      }
      ++split;
      HelperSet hs;
      hs.e = Matrix(ws.size(), static_cast<std::size_t>(s.r));
      for (std::size_t i = 0; i < ws.size(); ++i) {
        hs.columns.push_back(cols.size());
        cols.push_back({x, y, ws[i]});
        code.column_labels.push_back("[" + f.format(x) + ":" + f.format(y) + ":1:" + f.format(ws[i]) + "]");
        for (int o = 0; o < s.r; ++o) hs.e.at(i, static_cast<std::size_t>(o)) = f.pow(ws[i], o);
      }
      hs.label = code.column_labels[hs.columns[0]];
      part.sets.push_back(std::move(hs));
    }
  code.n = cols.size();
  if (code.n == 0) throw ConstructionError("no usable points");

  std::vector<std::vector<Elem>> rows;
  for (int o = 0; o < s.r; ++o)
    for (const auto& [i, j, l] : monomials(s.m - o)) {
      std::vector<Elem> row(code.n);
      for (std::size_t c = 0; c < code.n; ++c)
        row[c] = f.mul(f.pow(cols[c].w, o), f.mul(f.pow(cols[c].x, i), f.pow(cols[c].y, j)));
      rows.push_back(std::move(row));
      std::string label = "w^" + std::to_string(o) + " x^" + std::to_string(i) + " y^" + std::to_string(j) +
                          " z^" + std::to_string(l);
      code.row_labels.push_back(label);
    }
  code.generator = Matrix::from_rows(rows);
  // Designed distance: the cubic-surface bound for r = 2, vacuous otherwise.
  code.delta = s.r == 2 ? static_cast<int>((3L * s.m + 1) * static_cast<long>(f.order()) + 1)
                        : static_cast<int>(code.n);
  code.partitions.push_back(std::move(part));
  code.counts["base_points"] = static_cast<long long>(f.order()) * static_cast<long long>(f.order());
  code.counts["branch"] = branch;
  code.counts["nonsplit"] = nonsplit;
  code.counts["split"] = split;
  finalize_code(code);
  return code;
}

}  // namespace geolrc
