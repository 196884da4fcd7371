#pragma once

#include <vector>

#include "crushkit/normal.hpp"
#include "crushkit/triangulation.hpp"

namespace crushkit {

/// How a destroyed tetrahedron with one quad type passes a walk through it:
/// the entry face is flattened onto `exitFace` by the transposition `swap`.
struct FacePairing {
  int exitFace;
  Perm4 swap;
};

/// For the quad type separating {a,b} from {c,d}: faces c and d pair via
/// (c d), faces a and b pair via (a b).
FacePairing throughFacePairing(int quadType, int entryFace);

struct CrushOutcome {
  Triangulation result;
  int destroyedTets = 0;
  /// Output index of each input tetrahedron, or -1 if destroyed.
  std::vector<int> survivorMap;
};

/// Full destructive crush of an admissible normal surface, computed one
/// tetrahedron at a time: tetrahedra with quads are destroyed and the faces
/// around them are flattened together.
CrushOutcome crushBulk(const Triangulation& tri, const StandardCoords& s);

}  // namespace crushkit
