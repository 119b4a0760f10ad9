#pragma once

#include <vector>

#include "centroaffine/scalar.hpp"

namespace centroaffine {

// Gaussian elimination with magnitude pivoting; false on a singular system.
template <class S>
bool solve_linear(std::vector<std::vector<S>> a, std::vector<S> b, std::vector<S>& out) {
  const size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (scalar_traits<S>::magnitude(a[r][col]) > scalar_traits<S>::magnitude(a[piv][col]))
        piv = r;
    if (near_zero(a[piv][col], 1e-13)) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      S f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  out.assign(n, S(0));
  for (size_t i = 0; i < n; ++i) out[i] = b[i] / a[i][i];
  return true;
}

// Basis of the kernel of a (rows x cols) matrix; exact over rationals.
template <class S>
std::vector<std::vector<S>> nullspace(std::vector<std::vector<S>> a, double tol = 1e-11) {
  if (a.empty()) return {};
  const size_t rows = a.size(), cols = a[0].size();
  std::vector<long> pivot_col(rows, -1);
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    for (size_t r = rank + 1; r < rows; ++r)
      if (scalar_traits<S>::magnitude(a[r][col]) > scalar_traits<S>::magnitude(a[piv][col]))
        piv = r;
    if (near_zero(a[piv][col], tol)) continue;
    std::swap(a[piv], a[rank]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      S f = a[r][col] / a[rank][col];
      for (size_t c = 0; c < cols; ++c) a[r][c] -= f * a[rank][c];
    }
    pivot_col[rank] = static_cast<long>(col);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (size_t r = 0; r < rank; ++r) is_pivot[static_cast<size_t>(pivot_col[r])] = true;
  std::vector<std::vector<S>> basis;
  for (size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<S> vec(cols, S(0));
    vec[free_col] = S(1);
    for (size_t r = 0; r < rank; ++r) {
      const size_t pc = static_cast<size_t>(pivot_col[r]);
      vec[pc] = -a[r][free_col] / a[r][pc];
    }
    basis.push_back(std::move(vec));
  }
  return basis;
}

}  // namespace centroaffine
