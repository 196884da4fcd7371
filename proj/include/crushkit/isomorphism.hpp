#pragma once

#include <optional>
#include <vector>

#include "crushkit/triangulation.hpp"

namespace crushkit {

/// A combinatorial isomorphism: tetrahedron t maps to `tetImage[t]` with its
/// vertices relabelled by `vertexMap[t]`.
struct Isomorphism {
  std::vector<int> tetImage;
  std::vector<Perm4> vertexMap;

  /// The image of `tri` under this isomorphism.
  Triangulation apply(const Triangulation& tri) const;
};

/// Exhaustive backtracking search for an isomorphism from `a` to `b`
/// respecting all gluings and boundary faces.
std::optional<Isomorphism> findIsomorphism(const Triangulation& a, const Triangulation& b);

inline bool isIsomorphic(const Triangulation& a, const Triangulation& b) {
  return findIsomorphism(a, b).has_value();
}

}  // namespace crushkit
