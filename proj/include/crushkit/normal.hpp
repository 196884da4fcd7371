#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crushkit/bigint.hpp"
#include "crushkit/disc_layout.hpp"
#include "crushkit/triangulation.hpp"

namespace crushkit {

/// Quadrilateral coordinates: three quad counts per tetrahedron.
struct QuadCoords {
  IntVector coords;  // 3n entries

  QuadCoords() = default;
  explicit QuadCoords(int tets) : coords(static_cast<size_t>(3 * tets), 0) {}
  explicit QuadCoords(IntVector v) : coords(std::move(v)) {}

  int tets() const { return static_cast<int>(coords.size() / 3); }
  const BigInt& quad(int tet, int type) const { return coords[static_cast<size_t>(3 * tet + type)]; }
  BigInt& quad(int tet, int type) { return coords[static_cast<size_t>(3 * tet + type)]; }

  bool operator==(const QuadCoords&) const = default;
};

/// Standard coordinates, per tetrahedron: tri0 tri1 tri2 tri3 quad0 quad1 quad2.
struct StandardCoords {
  IntVector coords;  // 7n entries

  StandardCoords() = default;
  explicit StandardCoords(int tets) : coords(static_cast<size_t>(7 * tets), 0) {}
  explicit StandardCoords(IntVector v) : coords(std::move(v)) {}

  int tets() const { return static_cast<int>(coords.size() / 7); }
  const BigInt& tri(int tet, int v) const { return coords[static_cast<size_t>(7 * tet + v)]; }
  BigInt& tri(int tet, int v) { return coords[static_cast<size_t>(7 * tet + v)]; }
  const BigInt& quad(int tet, int type) const { return coords[static_cast<size_t>(7 * tet + 4 + type)]; }
  BigInt& quad(int tet, int type) { return coords[static_cast<size_t>(7 * tet + 4 + type)]; }

  bool hasQuads() const;
  bool isZero() const;
  StandardCoords operator+(const StandardCoords& rhs) const;
  StandardCoords scaled(long k) const;

  /// Disc counts for one tetrahedron.  Requires admissibility and that every
  /// count fits in 64 bits.
  TetDiscCounts discCounts(int tet) const;

  bool operator==(const StandardCoords&) const = default;
};

/// Matching equations in standard coordinates: one row per internal triangle
/// class and normal arc type (three per internal triangle).
IntMatrix standardMatchingEquations(const Triangulation& tri);

/// Independent integer equations cutting out the projection of the standard
/// solution space onto quad coordinates.
IntMatrix quadMatchingEquations(const Triangulation& tri);

/// Checks non-negativity and the quadrilateral constraint (at most one quad
/// type per tetrahedron).
bool satisfiesQuadConstraint(const IntVector& quads, int stride, int offset);
bool isAdmissible(const Triangulation& tri, const StandardCoords& s);

/// Completes quad coordinates with the unique triangle counts that satisfy
/// the matching equations and have a zero triangle count at some corner of
/// every vertex.  Throws InadmissibleSurface if no completion exists.
StandardCoords quadToStandard(const Triangulation& tri, const QuadCoords& q);

/// The vertex-linking surface of a vertex class (all triangles, one per corner).
StandardCoords vertexLink(const Triangulation& tri, int vertexClass);

struct EnumerationOptions {
  int jobs = 1;
};

/// Primitive extreme rays of the quad cone satisfying the quadrilateral
/// constraint, in lexicographic order.
std::vector<QuadCoords> enumerateQuadVertexSurfaces(const Triangulation& tri,
                                                    const EnumerationOptions& opts = {});

/// Topological summary of a normal surface.
struct SurfaceClass {
  long eulerChar = 0;
  bool connected = false;
  bool orientable = true;
  bool twoSided = true;
  bool vertexLinking = false;
  int boundaryCurves = 0;
  int components = 0;

  bool isSphere() const { return connected && boundaryCurves == 0 && eulerChar == 2; }
  bool isProjectivePlane() const { return connected && boundaryCurves == 0 && eulerChar == 1; }
  bool isDisc() const { return connected && boundaryCurves == 1 && eulerChar == 1; }
};

/// Builds the abstract disc complex of the surface and reads off its topology.
SurfaceClass recognizeSurface(const Triangulation& tri, const StandardCoords& s);

/// First quad vertex surface (lexicographically) that is a sphere, or whose
/// double is a sphere because it is a one-sided projective plane.
std::optional<StandardCoords> findNontrivialSphere(const Triangulation& tri,
                                                   const EnumerationOptions& opts = {});

bool isZeroEfficient(const Triangulation& tri, const EnumerationOptions& opts = {});

/// SURF1 text for a single surface: `surf <n> <std|quad>`, then one line per
/// tetrahedron holding its 7 (std) or 3 (quad) coordinates.
std::string writeSurface(const StandardCoords& s);
std::string writeSurface(const QuadCoords& q);

struct ParsedSurface {
  bool standard = true;
  IntVector coords;
};
ParsedSurface parseSurface(std::string_view text);

}  // namespace crushkit
