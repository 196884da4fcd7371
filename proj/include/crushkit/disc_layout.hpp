#pragma once

#include <array>
#include <cstdint>

namespace crushkit {

/// The two vertex pairs split by each quadrilateral type.  The first pair
/// always contains vertex 0.
inline constexpr std::array<std::array<int, 4>, 3> kQuadPartition{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};

/// Quad type separating {a,b} from the other two vertices.
constexpr int quadSeparating(int a, int b) {
  const int s = a + b;
  return (a == 0 || b == 0) ? s - 1 : 5 - s;
}

/// Whether vertex v lies in the pair of quad type `type` that contains vertex 0.
constexpr bool onZeroSide(int type, int v) {
  return v == kQuadPartition[static_cast<size_t>(type)][0] || v == kQuadPartition[static_cast<size_t>(type)][1];
}

/// Normal disc counts inside one tetrahedron.  At most one quad type is present.
struct TetDiscCounts {
  std::array<std::int64_t, 4> tri{};
  int quadType = -1;
  std::int64_t quads = 0;
};

enum class DiscKind : std::uint8_t { Triangle, Quad };

/// One normal disc inside a tetrahedron.
///
/// Triangles at vertex v are indexed by depth from v (0 = closest).  Quads are
/// indexed from the side holding vertex 0.  Each disc has two sides: side 0
/// faces its vertex (triangles) or the vertex-0 pair (quads).
struct DiscRef {
  DiscKind kind;
  int which;  // vertex for triangles, quad type for quads
  std::int64_t index;

  bool operator==(const DiscRef&) const = default;
};

/// Index of a quad counted `fromSide` steps from the side containing vertex v.
constexpr std::int64_t quadIndexFrom(const TetDiscCounts& c, int v, std::int64_t fromSide) {
  return onZeroSide(c.quadType, v) ? fromSide : c.quads - 1 - fromSide;
}

/// Side of a quad that faces vertex v.
constexpr int quadSideFacing(int type, int v) { return onZeroSide(type, v) ? 0 : 1; }

/// Normal arcs cutting corner v of face f (v != f): triangles at v, then
/// quads separating {v,f} from the rest.
constexpr std::int64_t arcCount(const TetDiscCounts& c, int v, int f) {
  std::int64_t n = c.tri[static_cast<size_t>(v)];
  if (c.quads > 0 && c.quadType == quadSeparating(v, f)) n += c.quads;
  return n;
}

/// The disc owning the arc at corner v of face f at the given depth from v.
constexpr DiscRef discAtArc(const TetDiscCounts& c, int v, int /*f*/, std::int64_t depth) {
  const std::int64_t t = c.tri[static_cast<size_t>(v)];
  if (depth < t) return {DiscKind::Triangle, v, depth};
  return {DiscKind::Quad, c.quadType, quadIndexFrom(c, v, depth - t)};
}

/// Side of the disc at corner v (depth `depth`) that faces corner v.
constexpr int sideFacingCorner(const TetDiscCounts& c, int v, std::int64_t depth) {
  return depth < c.tri[static_cast<size_t>(v)] ? 0 : quadSideFacing(c.quadType, v);
}

/// Points where the surface meets tetrahedron edge ab.
constexpr std::int64_t edgePointCount(const TetDiscCounts& c, int a, int b) {
  std::int64_t n = c.tri[static_cast<size_t>(a)] + c.tri[static_cast<size_t>(b)];
  if (c.quads > 0 && c.quadType != quadSeparating(a, b)) n += c.quads;
  return n;
}

/// Disc meeting edge ab at the k-th point counted from a.
constexpr DiscRef discOnEdge(const TetDiscCounts& c, int a, int b, std::int64_t k) {
  const std::int64_t ta = c.tri[static_cast<size_t>(a)];
  if (k < ta) return {DiscKind::Triangle, a, k};
  k -= ta;
  const std::int64_t q = (c.quads > 0 && c.quadType != quadSeparating(a, b)) ? c.quads : 0;
  if (k < q) return {DiscKind::Quad, c.quadType, quadIndexFrom(c, a, k)};
  k -= q;
  return {DiscKind::Triangle, b, c.tri[static_cast<size_t>(b)] - 1 - k};
}

}  // namespace crushkit
