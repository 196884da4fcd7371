#include "crushkit/crush.hpp"

#include <stdexcept>

#include "crushkit/errors.hpp"
#include "crushkit/skeleton.hpp"

namespace crushkit {

FacePairing throughFacePairing(int quadType, int entryFace) {
  if (quadType < 0 || quadType > 2 || entryFace < 0 || entryFace > 3)
    throw std::out_of_range("quad type or face out of range");
  const auto& P = kQuadPartition[static_cast<size_t>(quadType)];
  for (int half = 0; half < 2; ++half) {
    const int x = P[static_cast<size_t>(2 * half)];
    const int y = P[static_cast<size_t>(2 * half + 1)];
    if (entryFace == x) return {y, Perm4::transposition(x, y)};
    if (entryFace == y) return {x, Perm4::transposition(x, y)};
  }
  throw InvariantFailure("face not in quad partition");
}

CrushOutcome crushBulk(const Triangulation& tri, const StandardCoords& s) {
  if (!Skeleton(tri).isValid()) throw PreconditionError("crush requires a valid triangulation");
  if (!isAdmissible(tri, s)) throw InadmissibleSurface("surface is not admissible for this triangulation");

  const int n = tri.size();
  std::vector<int> quadType(static_cast<size_t>(n), -1);
  CrushOutcome out;
  out.survivorMap.assign(static_cast<size_t>(n), -1);
  int survivors = 0;
  for (int t = 0; t < n; ++t) {
    for (int q = 0; q < 3; ++q)
      if (s.quad(t, q) != 0) quadType[static_cast<size_t>(t)] = q;
    if (quadType[static_cast<size_t>(t)] < 0) out.survivorMap[static_cast<size_t>(t)] = survivors++;
  }
  out.destroyedTets = n - survivors;
  out.result = Triangulation(survivors);

  const int maxSteps = 2 * out.destroyedTets + 2;
  for (int t = 0; t < n; ++t) {
    const int nt = out.survivorMap[static_cast<size_t>(t)];
    if (nt < 0) continue;
    for (int f = 0; f < 4; ++f) {
      if (!out.result.isBoundary(nt, f)) continue;
      // Walk: cross the gluing, then through destroyed tetrahedra.
      int cur = t;
      int face = f;
      Perm4 acc;  // maps t's labels to cur's labels
      bool boundary = false;
      for (int step = 0;; ++step) {
        if (step > maxSteps) throw InvariantFailure("crush walk did not terminate");
        const auto& g = tri.gluing(cur, face);
        if (!g) {
          boundary = true;
          break;
        }
        acc = g->perm * acc;
        cur = g->tet;
        face = g->perm[face];
        const int qt = quadType[static_cast<size_t>(cur)];
        if (qt < 0) break;
        const FacePairing fp = throughFacePairing(qt, face);
        acc = fp.swap * acc;
        face = fp.exitFace;
      }
      if (boundary) continue;
      const int dest = out.survivorMap[static_cast<size_t>(cur)];
      if (dest == nt && face == f) throw InvariantFailure("crush walk returned to its start face");
      out.result.join(nt, f, dest, acc);
    }
  }
  out.result.checkInvolution();
  return out;
}

}  // namespace crushkit
