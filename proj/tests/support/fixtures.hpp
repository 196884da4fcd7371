#pragma once

#include <string>
#include <vector>

#include "crushkit/bigint.hpp"
#include "crushkit/homology.hpp"
#include "crushkit/normal.hpp"
#include "crushkit/triangulation.hpp"

namespace fixtures {

using namespace crushkit;

struct CorpusEntry {
  std::string name;  // closed_<tets>_<index>
  Triangulation tri;
};

/// Closed census members with 1..maxTets tetrahedra, generated once per process.
const std::vector<CorpusEntry>& corpus(int maxTets);

/// Quad vertex surfaces of `tri` that are spheres, plus doubled one-sided
/// projective planes, in enumeration order.
std::vector<StandardCoords> sphereSurfaces(const Triangulation& tri);

/// Derived named triangulations, all found by searching the census.
const Triangulation& s3OneTet(int which);  // which = 0, 1
const Triangulation& rp3();
const Triangulation& l31();
const Triangulation& rp2xs1();
/// Two copies of rp3() with a ball removed from each, joined along the
/// boundary spheres.
const Triangulation& rp3SumRp3();

/// Replaces tetrahedron `tet` by a 12-tetrahedron shell (the tetrahedron
/// minus a smaller concentric one).  The inner boundary faces are face 0 of
/// the returned tetrahedra `inner[f]`, one per face f of the removed
/// tetrahedron, with inner vertex k on local vertex k of that face's
/// ordered labels.
struct Shelled {
  Triangulation tri;
  std::array<int, 4> inner;
};
Shelled removeBall(const Triangulation& tri, int tet);

/// Extreme rays of {x >= 0, eq x = 0} by trying every support set, keeping
/// those on which the solution space is a single ray with positive entries.
std::vector<IntVector> bruteForceRays(const IntMatrix& eq, size_t dim);

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1} with
/// D_k the gcd of all k x k minors.
std::vector<BigInt> determinantalFactors(const IntMatrix& m, size_t cols);

/// H1 read off independently over GF(2): dim H1(M; Z2) = E - rank d1 - rank d2.
int betti1Mod2(const Triangulation& tri);

bool isRp2TwoSided(const SurfaceClass& c);

}  // namespace fixtures
