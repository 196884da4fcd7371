#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crushkit/bigint.hpp"
#include "crushkit/triangulation.hpp"

namespace crushkit {

struct SmithForm {
  /// Nonzero diagonal entries d1 | d2 | ... (all positive, 1s included).
  std::vector<BigInt> diagonal;
  /// Present when requested: U * M * V == S, with U and V unimodular.
  std::optional<IntMatrix> U;
  std::optional<IntMatrix> V;
  std::optional<IntMatrix> S;

  int rank() const { return static_cast<int>(diagonal.size()); }
  /// Diagonal entries greater than one.
  std::vector<BigInt> invariantFactors() const;
};

/// Smith normal form by unimodular row and column operations, always
/// pivoting on an entry of smallest absolute value.
SmithForm smithNormalForm(const IntMatrix& m, size_t cols, bool withTransforms = false);
inline SmithForm smithNormalForm(const IntMatrix& m, bool withTransforms = false) {
  return smithNormalForm(m, m.empty() ? 0 : m.front().size(), withTransforms);
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
BigInt determinant(IntMatrix m);

struct HomologySummary {
  int r = 0;   // free rank
  int t2 = 0;  // invariant factors divisible by 2
  int t3 = 0;  // invariant factors divisible by 3
  std::vector<BigInt> factors;

  /// `r=<r> factors=<d1>,<d2>,...` (`-` for no torsion).
  std::string str() const;
  bool trivial() const { return r == 0 && factors.empty(); }
  bool operator==(const HomologySummary&) const = default;
};

/// Boundary matrices of the quotient cell structure.  Rows of `d2` are
/// triangle classes over edge-class columns; rows of `d1` are edge classes
/// over vertex-class columns.
IntMatrix boundaryMatrix1(const Triangulation& tri);
IntMatrix boundaryMatrix2(const Triangulation& tri);

/// First homology of a valid triangulation.
HomologySummary h1(const Triangulation& tri);

}  // namespace crushkit
