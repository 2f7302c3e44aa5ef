#include "geolrc/matrix.hpp"

#include <utility>

namespace geolrc {

Matrix Matrix::from_rows(const std::vector<std::vector<Elem>>& rows) {
  Matrix m;
  m.rows = rows.size();
  m.cols = rows.empty() ? 0 : rows[0].size();
  m.a.reserve(m.rows * m.cols);
  for (const auto& r : rows) {
    if (r.size() != m.cols) throw Error("ragged matrix");
    m.a.insert(m.a.end(), r.begin(), r.end());
  }
  return m;
}

std::vector<Elem> Matrix::column(std::size_t j) const {
  std::vector<Elem> c(rows);
  for (std::size_t i = 0; i < rows; ++i) c[i] = at(i, j);
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cs) const {
  Matrix m(rows, cs.size());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) m.at(i, j) = at(i, cs[j]);
  return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rs) const {
  Matrix m(rs.size(), cols);
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = at(rs[i], j);
  return m;
}

RrefResult rref(const Field& f, Matrix m) {
  RrefResult out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    const Elem s = f.inv(m.at(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), s);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      const Elem factor = m.at(i, c);
      if (factor == 0) continue;
      for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.rows = r;
  m.a.resize(r * m.cols);
  out.m = std::move(m);
  return out;
}

std::size_t rank(const Field& f, const Matrix& m) { return rref(f, m).pivots.size(); }

Matrix nullspace(const Field& f, const Matrix& m) {
  auto rr = rref(f, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix ns(free_cols.size(), m.cols);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    ns.at(k, fc) = 1;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) ns.at(k, rr.pivots[i]) = f.neg(rr.m.at(i, fc));
  }
  return ns;
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw Error("matrix shapes do not match");
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Elem x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) = f.add(c.at(i, j), f.mul(x, b.at(k, j)));
    }
  return c;
}

std::optional<Matrix> inverse(const Field& f, const Matrix& m) {
  if (m.rows != m.cols) throw Error("inverse of a non-square matrix");
  const std::size_t n = m.rows;
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto rr = rref(f, aug);
  if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rr.m.at(i, n + j);
  return inv;
}

Elem determinant(const Field& f, Matrix m) {
  if (m.rows != m.cols) throw Error("determinant of a non-square matrix");
  const std::size_t n = m.rows;
  Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m.at(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, m.at(c, c));
    const Elem s = f.inv(m.at(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      const Elem factor = f.mul(m.at(i, c), s);
      if (factor == 0) continue;
      for (std::size_t j = c; j < n; ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(c, j)));
    }
  }
  return det;
}

std::optional<std::vector<Elem>> solve(const Field& f, const Matrix& m, const std::vector<Elem>& b) {
  if (b.size() != m.rows) throw Error("right-hand side has the wrong length");
  Matrix aug(m.rows, m.cols + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto rr = rref(f, aug);
  std::vector<Elem> x(m.cols, 0);
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
    if (rr.pivots[i] == m.cols) return std::nullopt;
    x[rr.pivots[i]] = rr.m.at(i, m.cols);
  }
  return x;
}

std::vector<Elem> vec_mat(const Field& f, const std::vector<Elem>& x, const Matrix& m) {
  if (x.size() != m.rows) throw Error("vector has the wrong length");
  std::vector<Elem> out(m.cols, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols; ++j) out[j] = f.add(out[j], f.mul(x[i], m.at(i, j)));
  }
  return out;
}

std::vector<std::size_t> singular_deletions(const Field& f, const Matrix& e) {
  if (e.rows != e.cols + 1) throw Error("recovery matrix must have one more row than columns");
  std::vector<std::size_t> bad;
  for (std::size_t c = 0; c < e.rows; ++c) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < e.rows; ++i)
      if (i != c) keep.push_back(i);
    if (determinant(f, e.select_rows(keep)) == 0) bad.push_back(c);
  }
  return bad;
}

std::string format_matrix(const Field& f, const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j) out += ' ';
      out += f.format(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace geolrc
