#pragma once

#include <gmpxx.h>

#include <vector>

#include "crushkit/bigint.hpp"

namespace crushkit::detail {

using QMatrix = std::vector<std::vector<mpq_class>>;

/// In-place reduced row echelon form.  Returns the pivot column of each
/// nonzero row; zero rows are dropped.
inline std::vector<size_t> rref(QMatrix& a, size_t cols) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t c = 0; c < cols && row < a.size(); ++c) {
    size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const mpq_class inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      const mpq_class k = a[r][c];
      for (size_t j = c; j < cols; ++j) a[r][j] -= k * a[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  a.resize(row);
  return pivots;
}

/// Basis of {x : A x = 0} for an r x cols matrix.
inline QMatrix nullspace(QMatrix a, size_t cols) {
  const auto pivots = rref(a, cols);
  std::vector<bool> isPivot(cols, false);
  for (size_t c : pivots) isPivot[c] = true;
  QMatrix basis;
  for (size_t free = 0; free < cols; ++free) {
    if (isPivot[free]) continue;
    std::vector<mpq_class> v(cols, 0);
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Scales a rational row to a primitive integer row.
inline IntVector toPrimitiveInteger(const std::vector<mpq_class>& row) {
  BigInt den = 1;
  for (const auto& x : row) den = lcm(den, BigInt(x.get_den()));
  IntVector out;
  out.reserve(row.size());
  for (const auto& x : row) out.emplace_back(BigInt(x.get_num() * (den / x.get_den())));
  makePrimitive(out);
  return out;
}

}  // namespace crushkit::detail
