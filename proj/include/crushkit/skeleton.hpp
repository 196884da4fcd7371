#pragma once

#include <array>
#include <vector>

#include "crushkit/triangulation.hpp"

namespace crushkit {

/// Tetrahedron edge numbering: edge e joins kEdgeVertices[e][0] < kEdgeVertices[e][1].
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Index of the tetrahedron edge joining vertices a != b.
constexpr int edgeIndex(int a, int b) {
  if (a > b) {
    const int t = a;
    a = b;
    b = t;
  }
  return a == 0 ? b - 1 : a + b;  // {0,1}->0 {0,2}->1 {0,3}->2 {1,2}->3 {1,3}->4 {2,3}->5
}

struct VertexEmbedding {
  int tet;
  int vertex;
};

struct EdgeEmbedding {
  int tet;
  int edge;
  /// True if the tetrahedron's low->high direction opposes the class direction.
  bool reversed;
};

struct TriangleEmbedding {
  int tet;
  int face;
};

struct VertexLink {
  int eulerChar = 0;
  bool orientable = true;
  bool closed = true;

  bool isSphere() const { return closed && eulerChar == 2; }
  bool isDisc() const { return !closed && eulerChar == 1; }
};

struct VertexClass {
  std::vector<VertexEmbedding> embeddings;
  VertexLink link;
};

struct EdgeClass {
  std::vector<EdgeEmbedding> embeddings;
  bool valid = true;
  bool boundary = false;
  /// Vertex classes at the start and end of the class direction.
  int start = -1;
  int end = -1;
};

struct TriangleClass {
  std::vector<TriangleEmbedding> embeddings;
  bool boundary() const { return embeddings.size() == 1; }
};

/// Vertex, edge and triangle classes of a triangulation under the
/// identifications generated by its face gluings.
class Skeleton {
 public:
  explicit Skeleton(const Triangulation& tri);

  const std::vector<VertexClass>& vertices() const { return vertices_; }
  const std::vector<EdgeClass>& edges() const { return edges_; }
  const std::vector<TriangleClass>& triangles() const { return triangles_; }

  int vertexOf(int tet, int vertex) const { return vertexOf_[static_cast<size_t>(tet)][static_cast<size_t>(vertex)]; }
  int edgeOf(int tet, int edge) const { return edgeOf_[static_cast<size_t>(tet)][static_cast<size_t>(edge)]; }
  int triangleOf(int tet, int face) const { return triangleOf_[static_cast<size_t>(tet)][static_cast<size_t>(face)]; }

  /// True if the tetrahedron edge (low->high) runs against its class direction.
  bool edgeReversed(int tet, int edge) const {
    return edgeReversed_[static_cast<size_t>(tet)][static_cast<size_t>(edge)];
  }

  /// +1 if travelling a->b along the tetrahedron edge follows the class
  /// direction, -1 otherwise.
  int edgeDirection(int tet, int a, int b) const {
    const bool rev = edgeReversed(tet, edgeIndex(a, b)) != (a > b);
    return rev ? -1 : 1;
  }

  bool isValid() const;
  std::vector<int> invalidEdges() const;

 private:
  std::vector<VertexClass> vertices_;
  std::vector<EdgeClass> edges_;
  std::vector<TriangleClass> triangles_;
  std::vector<std::array<int, 4>> vertexOf_;
  std::vector<std::array<int, 6>> edgeOf_;
  std::vector<std::array<bool, 6>> edgeReversed_;
  std::vector<std::array<int, 4>> triangleOf_;
};

enum class TriangulationClass { Closed, Bounded, Ideal, Invalid };

const char* toString(TriangulationClass c);

TriangulationClass classify(const Skeleton& skel, const Triangulation& tri);
TriangulationClass classify(const Triangulation& tri);

struct MinimalityLint {
  int vertexCount = 0;
  std::vector<int> degreeOneEdges;
  std::vector<int> coneFaces;
};

/// Combinatorial checks that minimal triangulations of closed
/// P^2-irreducible manifolds satisfy.  Requires a closed, valid input.
MinimalityLint lintMinimal(const Triangulation& tri);

}  // namespace crushkit
