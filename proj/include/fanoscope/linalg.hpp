#pragma once

// Dense exact linear algebra over a field (Rational or Q(i)). Matrices are row-major
// vectors of rows; sizes in this project never exceed a few dozen.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fanoscope::linalg {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// In-place reduced row echelon form. Returns the pivot column of each nonzero row.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == T(0)) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    const T inv = T(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == T(0)) continue;
      const T f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> a) {
  return rref(a).size();
}

/// Basis of { x : a x = 0 }, one vector per free column.
template <class T>
Matrix<T> kernel(Matrix<T> a, std::size_t cols) {
  Matrix<T> basis;
  if (a.empty()) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::vector<T> e(cols, T(0));
      e[c] = T(1);
      basis.push_back(std::move(e));
    }
    return basis;
  }
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> x(cols, T(0));
    x[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = T(0) - a[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Inverse of a square matrix, or nullopt when singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  const std::size_t n = a.size();
  Matrix<T> aug(n, std::vector<T>(2 * n, T(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("inverse: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = T(1);
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> inv(n, std::vector<T>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k == 0 ? 0 : b.front().size();
  Matrix<T> c(n, std::vector<T>(m, T(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == T(0)) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] = c[i][j] + a[i][l] * b[l][j];
    }
  return c;
}

}  // namespace fanoscope::linalg
