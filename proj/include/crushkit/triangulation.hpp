#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crushkit/perm4.hpp"

namespace crushkit {

/// Destination of a face gluing: the partner tetrahedron and the vertex map
/// from this tetrahedron's labels to the partner's.  Face f is glued to face
/// `perm[f]` of the partner.
struct Gluing {
  int tet;
  Perm4 perm;

  bool operator==(const Gluing&) const = default;
};

/// A generalised triangulation: n abstract tetrahedra with vertices 0..3,
/// face i opposite vertex i, and some faces identified in pairs.
///
/// Gluings are stored per face in both directions.  The public mutators keep
/// the two directions consistent, so every Triangulation satisfies the
/// involution invariant.
class Triangulation {
 public:
  Triangulation() = default;
  explicit Triangulation(int tetCount) : faces_(static_cast<size_t>(tetCount)) {}

  int size() const { return static_cast<int>(faces_.size()); }
  bool empty() const { return faces_.empty(); }

  /// Appends a tetrahedron with all faces boundary; returns its index.
  int addTetrahedron();

  const std::optional<Gluing>& gluing(int tet, int face) const {
    return faces_[static_cast<size_t>(tet)][static_cast<size_t>(face)];
  }
  bool isBoundary(int tet, int face) const { return !gluing(tet, face).has_value(); }

  /// Glues face `face` of `tet` to face `perm[face]` of `dest`.  Both faces
  /// must currently be boundary and must not be the same face.
  void join(int tet, int face, int dest, Perm4 perm);

  /// Makes the face (and its partner) boundary.
  void unjoin(int tet, int face);

  int boundaryFaceCount() const;

  /// Disjoint union: the tetrahedra of `other` are appended after ours.
  void append(const Triangulation& other);

  /// Checks the involution invariant; throws InvariantFailure on violation.
  void checkInvolution() const;

  bool operator==(const Triangulation&) const = default;

 private:
  std::vector<std::array<std::optional<Gluing>, 4>> faces_;
};

/// Parses TRI1 text.  Throws ParseError carrying the offending line number.
Triangulation parseTriangulation(std::string_view text);

/// Serialises to TRI1 text (LF line endings, trailing newline).
std::string writeTriangulation(const Triangulation& tri);

Triangulation readTriangulationFile(const std::string& path);
void writeTriangulationFile(const std::string& path, const Triangulation& tri);

/// Components under face-gluing adjacency, each re-indexed from 0.  Tetrahedra
/// keep their relative order; components are ordered by smallest member.
std::vector<Triangulation> connectedComponents(const Triangulation& tri);

/// True iff each tetrahedron can be signed so that every gluing between
/// equally signed tetrahedra is an odd permutation (and between opposite signs
/// an even one).
bool isOrientable(const Triangulation& tri);

}  // namespace crushkit
