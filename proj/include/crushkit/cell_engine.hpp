#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crushkit/normal.hpp"
#include "crushkit/triangulation.hpp"

namespace crushkit {

enum class CellKind {
  Tetrahedron,
  ThreeSidedFootball,
  FourSidedFootball,
  TriangularPurse,
  TriangularPillow,
  BigonalPillow,
  BigonalPyramid,
};

const char* toString(CellKind k);

enum class FaceShape { Triangle, Bigon };

/// Element of the dihedral group of a k-gon acting on its corners:
/// corner i goes to rot+i, or to rot-i when reflected.
struct Dihedral {
  int rot = 0;
  bool refl = false;

  int corner(int i, int k) const;
  /// Image of slot i (the side from corner i to corner i+1), and whether its
  /// direction is reversed.
  std::pair<int, bool> slot(int i, int k) const;
  Dihedral inverse(int k) const;
  /// (*this) after rhs.
  Dihedral compose(const Dihedral& rhs, int k) const;

  bool operator==(const Dihedral&) const = default;
};

struct FaceGlue {
  int face;
  Dihedral map;  // this face's corners -> partner's corners
};

struct EdgeSlot {
  int edge;      // edge atom
  bool forward;  // the atom's own direction runs from corner i to corner i+1
};

struct CellFace {
  int cell = -1;
  bool alive = true;
  std::vector<int> corners;  // vertex atoms
  std::vector<EdgeSlot> slots;
  std::optional<FaceGlue> glue;

  int size() const { return static_cast<int>(corners.size()); }
  FaceShape shape() const { return corners.size() == 2 ? FaceShape::Bigon : FaceShape::Triangle; }
};

struct Cell {
  CellKind kind = CellKind::Tetrahedron;
  bool alive = true;
  std::vector<int> faces;  // live faces
  int sourceTet = -1;
  /// Tetrahedron cells only: the vertex atom carrying each original label.
  std::array<int, 4> tetVertices{-1, -1, -1, -1};
};

struct ParityReport {
  int invalidEdges = 0;
  int oddVertices = 0;

  bool operator==(const ParityReport&) const = default;
};

enum class MoveKind { TriangularPillow, BigonalPillow, Bigon };

enum class MoveOutcome {
  Reglued,             // pillow faces' partners glued together
  MadeBoundary,        // one partner left as boundary
  Deleted3Ball,        // both pillow faces boundary
  DeletedS3,           // pillow faces identified without twist
  DeletedL31,          // triangular pillow identified with a twist
  DeletedRP3,          // bigonal pillow identified with a twist
  DeletedInvalidPair,  // bigonal pillow with each edge reversed onto itself
  Flattened,           // bigon flattened to an edge, manifold unchanged
  CappedSphere,        // boundary bigon closing up as a sphere, filled with a ball
  SplitSphere,         // internal bigon forming a sphere, cut and capped
  RemovedRP3,          // internal bigon forming a one-sided projective plane
  CutProjectivePlane,  // internal bigon forming a two-sided projective plane
  CutAlongDisc,        // internal bigon whose distinct edges both lie in the boundary
};

const char* toString(MoveKind k);
const char* toString(MoveOutcome o);

struct MoveRecord {
  int step = 0;  // 1..5, the stage of the flattening loop
  MoveKind kind;
  int target;  // cell id (pillows) or face id (bigons)
  MoveOutcome outcome;
  ParityReport before;
  ParityReport after;
  long measureAfter = 0;

  /// A bigon whose flattening created two invalid edges.
  bool createdInvalidPair() const { return kind == MoveKind::Bigon && after.invalidEdges == before.invalidEdges + 2; }
};

/// A 3-dimensional cell decomposition built from tetrahedra cut along a
/// normal surface, with the surface copies shrunk to points.
///
/// Every cell owns its vertex and edge atoms.  Vertex and edge classes are
/// derived on demand from live face gluings plus the edge merges recorded
/// inside each cell, so pieces that only touch along edges or vertices fall
/// apart automatically.
class CellComplex {
 public:
  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<CellFace>& faces() const { return faces_; }
  int vertexAtomCount() const { return static_cast<int>(vertexCell_.size()); }
  int edgeAtomCount() const { return static_cast<int>(edgeCell_.size()); }

  int liveCellCount() const;
  int countKind(CellKind k) const;
  long terminationMeasure() const;

  ParityReport parity() const;
  /// Euler characteristic of each vertex link (one entry per vertex class).
  std::vector<int> vertexLinkEulerChars() const;
  /// Components under face gluings.
  int componentCount() const;

  /// Atomic moves.  Each throws PreconditionError if the target is not a
  /// live cell or face of the right kind.
  MoveOutcome flattenTriangularPillow(int cell);
  MoveOutcome flattenBigonalPillow(int cell);
  MoveOutcome flattenBigon(int face);

  /// Removes dead cells and faces and atoms not used by a live cell,
  /// renumbering everything in order.
  CellComplex compacted() const;

  /// Read-off once every live cell is a tetrahedron.
  Triangulation toTriangulation() const;

  /// One line per live cell: id, kind, and its faces with their partners.
  std::string dump() const;

  void checkInvariants() const;

 private:
  friend CellComplex buildCrushedComplex(const Triangulation&, const StandardCoords&);
  friend class ComplexBuilder;

  struct Merge {
    int cell;
    int a;
    int b;
    int rel;  // 0 when the atoms' directions agree
  };
  struct Derived;

  Derived derive() const;
  MoveOutcome flattenPillow(int cell, FaceShape shape);
  MoveOutcome bigonOutcome(int face) const;
  void mergeBigonEdges(int face);
  void killFace(int face);
  void reclassify(int cell);

  std::vector<Cell> cells_;
  std::vector<CellFace> faces_;
  std::vector<int> vertexCell_;
  std::vector<int> edgeCell_;
  std::vector<Merge> merges_;
};

/// Cuts the triangulation along the surface and shrinks each copy of the
/// surface to a point.  Produces tetrahedra, 3-sided footballs, triangular
/// purses and 4-sided footballs.
CellComplex buildCrushedComplex(const Triangulation& tri, const StandardCoords& s);

/// Functional wrappers around the atomic moves.
CellComplex flattenTriangularPillow(CellComplex c, int cell);
CellComplex flattenBigonalPillow(CellComplex c, int cell);
CellComplex flattenBigon(CellComplex c, int face);
CellComplex cleanup(const CellComplex& c);

ParityReport parityReport(const CellComplex& c);

struct FlattenOptions {
  /// Unset: lowest id first in every step.  Set: uniformly random choice
  /// within each step, driven by this seed.
  std::optional<std::uint64_t> seed;
  /// Re-check structural invariants after every move (slow).
  bool checkInvariants = false;
  /// Called after every move with the complex in its new state.
  std::function<void(const CellComplex&, const MoveRecord&)> observer;
};

struct FlattenResult {
  Triangulation result;
  std::vector<MoveRecord> trace;
  ParityReport final;
  std::vector<int> invalidEdges;  // edge classes of `result`
};

/// The sequential flattening loop: pillows, then 3-sided footballs, then
/// 4-sided footballs, then pyramids and purses, until only tetrahedra remain.
FlattenResult runSequentialFlatten(CellComplex c, const FlattenOptions& opts = {});

}  // namespace crushkit
