#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geolrc/gf.hpp"

namespace geolrc {

/// Dense row-major matrix of field element codes.  The field travels
/// separately.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Elem> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  /// Throws Error when the rows are ragged.
  static Matrix from_rows(const std::vector<std::vector<Elem>>& rows);

  Elem& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  Elem at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  const Elem* row(std::size_t i) const { return a.data() + i * cols; }
  Elem* row(std::size_t i) { return a.data() + i * cols; }
  std::vector<Elem> row_vector(std::size_t i) const { return {row(i), row(i) + cols}; }
  std::vector<Elem> column(std::size_t j) const;
  Matrix transpose() const;
  Matrix select_columns(const std::vector<std::size_t>& cols) const;
  Matrix select_rows(const std::vector<std::size_t>& rows) const;
  bool operator==(const Matrix&) const = default;
};

struct RrefResult {
  Matrix m;                        // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

RrefResult rref(const Field& f, Matrix m);
std::size_t rank(const Field& f, const Matrix& m);
/// Basis of {x : m x = 0} as rows.
Matrix nullspace(const Field& f, const Matrix& m);
Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Field& f, const Matrix& m);
Elem determinant(const Field& f, Matrix m);
/// Some x with m x = b, or nullopt when inconsistent.
std::optional<std::vector<Elem>> solve(const Field& f, const Matrix& m, const std::vector<Elem>& b);
/// x^T m (row vector times matrix).
std::vector<Elem> vec_mat(const Field& f, const std::vector<Elem>& x, const Matrix& m);

/// Rows c of an (r+1) x r matrix whose deletion leaves a singular r x r
/// matrix.  Throws Error on any other shape.
std::vector<std::size_t> singular_deletions(const Field& f, const Matrix& e);

std::string format_matrix(const Field& f, const Matrix& m);

}  // namespace geolrc
