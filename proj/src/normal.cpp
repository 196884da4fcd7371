#include "crushkit/normal.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "crushkit/cone.hpp"
#include "crushkit/errors.hpp"
#include "crushkit/skeleton.hpp"
#include "rational_linalg.hpp"
#include "union_find.hpp"

namespace crushkit {

bool StandardCoords::hasQuads() const {
  for (int t = 0; t < tets(); ++t)
    for (int q = 0; q < 3; ++q)
      if (quad(t, q) != 0) return true;
  return false;
}

bool StandardCoords::isZero() const {
  return std::all_of(coords.begin(), coords.end(), [](const BigInt& x) { return x == 0; });
}

StandardCoords StandardCoords::operator+(const StandardCoords& rhs) const {
  if (rhs.coords.size() != coords.size()) throw std::invalid_argument("coordinate length mismatch");
  StandardCoords out(*this);
  for (size_t i = 0; i < coords.size(); ++i) out.coords[i] += rhs.coords[i];
  return out;
}

StandardCoords StandardCoords::scaled(long k) const {
  StandardCoords out(*this);
  for (auto& x : out.coords) x *= k;
  return out;
}

TetDiscCounts StandardCoords::discCounts(int tet) const {
  TetDiscCounts c;
  for (int v = 0; v < 4; ++v) {
    if (!tri(tet, v).fits_slong_p()) throw InadmissibleSurface("disc count exceeds 64 bits");
    c.tri[static_cast<size_t>(v)] = tri(tet, v).get_si();
  }
  for (int q = 0; q < 3; ++q) {
    if (quad(tet, q) == 0) continue;
    if (c.quadType >= 0) throw InadmissibleSurface("two quad types in tetrahedron " + std::to_string(tet));
    if (!quad(tet, q).fits_slong_p()) throw InadmissibleSurface("disc count exceeds 64 bits");
    c.quadType = q;
    c.quads = quad(tet, q).get_si();
  }
  return c;
}

namespace {

void requireValid(const Triangulation& tri) {
  if (!Skeleton(tri).isValid()) throw PreconditionError("triangulation has an invalid edge");
}

void requireClosed(const Triangulation& tri) {
  if (classify(tri) != TriangulationClass::Closed) throw PreconditionError("triangulation is not closed and valid");
}

// Each internal face once, from the side with the smaller (tet, face).
template <typename Fn>
void forEachInternalFace(const Triangulation& tri, Fn fn) {
  for (int t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (g && std::make_pair(t, f) < std::make_pair(g->tet, g->perm[f])) fn(t, f, *g);
    }
}

}  // namespace

IntMatrix standardMatchingEquations(const Triangulation& tri) {
  requireValid(tri);
  const auto dim = static_cast<size_t>(7 * tri.size());
  IntMatrix rows;
  forEachInternalFace(tri, [&](int t, int f, const Gluing& g) {
    const Perm4& p = g.perm;
    for (int v = 0; v < 4; ++v) {
      if (v == f) continue;
      IntVector row(dim, 0);
      row[static_cast<size_t>(7 * t + v)] += 1;
      row[static_cast<size_t>(7 * t + 4 + quadSeparating(v, f))] += 1;
      row[static_cast<size_t>(7 * g.tet + p[v])] -= 1;
      row[static_cast<size_t>(7 * g.tet + 4 + quadSeparating(p[v], p[f]))] -= 1;
      rows.push_back(std::move(row));
    }
  });
  return rows;
}

IntMatrix quadMatchingEquations(const Triangulation& tri) {
  const IntMatrix std = standardMatchingEquations(tri);
  const int n = tri.size();
  if (std.empty()) return {};
  const size_t m = std.size();

  // Left nullspace of the triangle block: y with y^T M_T = 0.
  detail::QMatrix mtT(static_cast<size_t>(4 * n), std::vector<mpq_class>(m));
  for (size_t r = 0; r < m; ++r)
    for (int t = 0; t < n; ++t)
      for (int v = 0; v < 4; ++v)
        mtT[static_cast<size_t>(4 * t + v)][r] = std[r][static_cast<size_t>(7 * t + v)];
  const detail::QMatrix ys = detail::nullspace(std::move(mtT), m);

  detail::QMatrix projected;
  for (const auto& y : ys) {
    std::vector<mpq_class> row(static_cast<size_t>(3 * n), 0);
    for (size_t r = 0; r < m; ++r) {
      if (y[r] == 0) continue;
      for (int t = 0; t < n; ++t)
        for (int q = 0; q < 3; ++q)
          row[static_cast<size_t>(3 * t + q)] += y[r] * std[r][static_cast<size_t>(7 * t + 4 + q)];
    }
    projected.push_back(std::move(row));
  }
  detail::rref(projected, static_cast<size_t>(3 * n));

  IntMatrix out;
  for (const auto& row : projected) out.push_back(detail::toPrimitiveInteger(row));
  return out;
}

bool satisfiesQuadConstraint(const IntVector& quads, int stride, int offset) {
  const size_t tets = quads.size() / static_cast<size_t>(stride);
  for (size_t t = 0; t < tets; ++t) {
    int nonzero = 0;
    for (int q = 0; q < 3; ++q) {
      const BigInt& x = quads[t * static_cast<size_t>(stride) + static_cast<size_t>(offset + q)];
      if (x < 0) return false;
      if (x != 0) ++nonzero;
    }
    if (nonzero > 1) return false;
  }
  return true;
}

bool isAdmissible(const Triangulation& tri, const StandardCoords& s) {
  if (s.tets() != tri.size() || s.coords.size() != static_cast<size_t>(7 * tri.size())) return false;
  if (std::any_of(s.coords.begin(), s.coords.end(), [](const BigInt& x) { return x < 0; })) return false;
  if (!satisfiesQuadConstraint(s.coords, 7, 4)) return false;
  for (const auto& row : standardMatchingEquations(tri)) {
    BigInt sum = 0;
    for (size_t i = 0; i < row.size(); ++i)
      if (row[i] != 0) sum += row[i] * s.coords[i];
    if (sum != 0) return false;
  }
  return true;
}

StandardCoords quadToStandard(const Triangulation& tri, const QuadCoords& q) {
  const int n = tri.size();
  if (q.tets() != n || q.coords.size() != static_cast<size_t>(3 * n))
    throw InadmissibleSurface("quad vector has the wrong length");
  if (!satisfiesQuadConstraint(q.coords, 3, 0))
    throw InadmissibleSurface("quad vector is negative or breaks the quadrilateral constraint");

  StandardCoords s(n);
  for (int t = 0; t < n; ++t)
    for (int k = 0; k < 3; ++k) s.quad(t, k) = q.quad(t, k);

  // Propagate triangle counts around each vertex class from a zero seed.
  std::vector<bool> known(static_cast<size_t>(4 * n), false);
  for (int t0 = 0; t0 < n; ++t0) {
    for (int v0 = 0; v0 < 4; ++v0) {
      if (known[static_cast<size_t>(4 * t0 + v0)]) continue;
      std::vector<std::pair<int, int>> cls{{t0, v0}};
      known[static_cast<size_t>(4 * t0 + v0)] = true;
      s.tri(t0, v0) = 0;
      for (size_t i = 0; i < cls.size(); ++i) {
        const auto [t, v] = cls[i];
        for (int f = 0; f < 4; ++f) {
          if (f == v) continue;
          const auto& g = tri.gluing(t, f);
          if (!g) continue;
          const int u = g->perm[v];
          const BigInt want = s.tri(t, v) + q.quad(t, quadSeparating(v, f)) - q.quad(g->tet, quadSeparating(u, g->perm[f]));
          if (known[static_cast<size_t>(4 * g->tet + u)]) {
            if (s.tri(g->tet, u) != want) throw InadmissibleSurface("quad vector fails the matching equations");
          } else {
            known[static_cast<size_t>(4 * g->tet + u)] = true;
            s.tri(g->tet, u) = want;
            cls.emplace_back(g->tet, u);
          }
        }
      }
      BigInt lo = s.tri(t0, v0);
      for (const auto& [t, v] : cls) lo = std::min(lo, s.tri(t, v));
      for (const auto& [t, v] : cls) s.tri(t, v) -= lo;
    }
  }
  return s;
}

StandardCoords vertexLink(const Triangulation& tri, int vertexClass) {
  const Skeleton skel(tri);
  if (vertexClass < 0 || vertexClass >= static_cast<int>(skel.vertices().size()))
    throw std::out_of_range("vertex class out of range");
  StandardCoords s(tri.size());
  for (const auto& emb : skel.vertices()[static_cast<size_t>(vertexClass)].embeddings) s.tri(emb.tet, emb.vertex) += 1;
  return s;
}

std::vector<QuadCoords> enumerateQuadVertexSurfaces(const Triangulation& tri, const EnumerationOptions& opts) {
  if (tri.empty()) return {};
  const IntMatrix eqs = quadMatchingEquations(tri);
  const auto tets = static_cast<size_t>(tri.size());
  const SupportFilter filter = [tets](const Support& s) {
    for (size_t t = 0; t < tets; ++t)
      if (static_cast<int>(s[3 * t]) + static_cast<int>(s[3 * t + 1]) + static_cast<int>(s[3 * t + 2]) > 1)
        return false;
    return true;
  };
  std::vector<QuadCoords> out;
  for (auto& ray : extremeRays(eqs, 3 * tets, filter, opts.jobs)) out.emplace_back(std::move(ray));
  return out;
}

// ---------------------------------------------------------------------------
// Surface recognition.

namespace {

// An arc of a disc on face f cuts corner v and runs, along the disc's
// boundary cycle, from the point on edge {v,from} to the point on edge {v,to}.
struct ArcShape {
  int corner;
  int from;
  int to;
};

ArcShape arcShape(const DiscRef& d, int f) {
  if (d.kind == DiscKind::Triangle) {
    const int v = d.which;
    int x[3];
    int k = 0;
    for (int w = 0; w < 4; ++w)
      if (w != v) x[k++] = w;
    // Boundary cycle x0 -> x1 -> x2 -> x0 around the corner.
    if (f == x[0]) return {v, x[1], x[2]};
    if (f == x[1]) return {v, x[2], x[0]};
    return {v, x[0], x[1]};
  }
  const auto& P = kQuadPartition[static_cast<size_t>(d.which)];
  const int a = P[0], b = P[1], c = P[2], e = P[3];
  // Boundary cycle ac -> ae -> be -> bc -> ac.
  if (f == b) return {a, c, e};
  if (f == a) return {b, e, c};
  if (f == e) return {c, b, a};
  return {e, a, b};
}

class DiscComplex {
 public:
  DiscComplex(const Triangulation& tri, const StandardCoords& s) : tri_(tri) {
    const int n = tri.size();
    counts_.reserve(static_cast<size_t>(n));
    discBase_.assign(static_cast<size_t>(n) + 1, 0);
    pointBase_.assign(static_cast<size_t>(n), {});
    std::int64_t discs = 0, points = 0;
    for (int t = 0; t < n; ++t) {
      counts_.push_back(s.discCounts(t));
      const auto& c = counts_.back();
      discBase_[static_cast<size_t>(t)] = discs;
      discs += c.tri[0] + c.tri[1] + c.tri[2] + c.tri[3] + c.quads;
      for (int e = 0; e < 6; ++e) {
        pointBase_[static_cast<size_t>(t)][static_cast<size_t>(e)] = points;
        points += edgePointCount(c, kEdgeVertices[static_cast<size_t>(e)][0], kEdgeVertices[static_cast<size_t>(e)][1]);
      }
    }
    discBase_[static_cast<size_t>(n)] = discs;
    discCount_ = discs;
    pointCount_ = points;
  }

  std::int64_t discCount() const { return discCount_; }
  std::int64_t pointCount() const { return pointCount_; }
  const TetDiscCounts& counts(int t) const { return counts_[static_cast<size_t>(t)]; }

  std::int64_t discId(int t, const DiscRef& d) const {
    const auto& c = counts(t);
    std::int64_t off = discBase_[static_cast<size_t>(t)];
    if (d.kind == DiscKind::Triangle) {
      for (int v = 0; v < d.which; ++v) off += c.tri[static_cast<size_t>(v)];
      return off + d.index;
    }
    return off + c.tri[0] + c.tri[1] + c.tri[2] + c.tri[3] + d.index;
  }

  // Point k (counted from a) on tetrahedron edge {a,b}.
  std::int64_t pointId(int t, int a, int b, std::int64_t k) const {
    const int e = edgeIndex(a, b);
    const std::int64_t base = pointBase_[static_cast<size_t>(t)][static_cast<size_t>(e)];
    if (a < b) return base + k;
    return base + edgePointCount(counts(t), a, b) - 1 - k;
  }

 private:
  const Triangulation& tri_;
  std::vector<TetDiscCounts> counts_;
  std::vector<std::int64_t> discBase_;
  std::vector<std::array<std::int64_t, 6>> pointBase_;
  std::int64_t discCount_ = 0;
  std::int64_t pointCount_ = 0;
};

}  // namespace

SurfaceClass recognizeSurface(const Triangulation& tri, const StandardCoords& s) {
  if (!isAdmissible(tri, s)) throw PreconditionError("surface is not an admissible normal surface");
  SurfaceClass out;
  if (s.isZero()) return out;

  const DiscComplex dc(tri, s);
  const auto D = static_cast<size_t>(dc.discCount());
  detail::UnionFind comp(D);
  detail::ParityUnionFind orient(D);
  detail::ParityUnionFind side(D);
  detail::UnionFind points(static_cast<size_t>(dc.pointCount()));

  std::int64_t edges = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> boundaryArcs;

  for (int t = 0; t < tri.size(); ++t) {
    const auto& c = dc.counts(t);
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g) {
        for (int v = 0; v < 4; ++v) {
          if (v == f) continue;
          const std::int64_t arcs = arcCount(c, v, f);
          edges += arcs;
          int xs[2];
          int k = 0;
          for (int w = 0; w < 4; ++w)
            if (w != f && w != v) xs[k++] = w;
          for (std::int64_t d = 0; d < arcs; ++d)
            boundaryArcs.emplace_back(dc.pointId(t, v, xs[0], d), dc.pointId(t, v, xs[1], d));
        }
        continue;
      }
      // Points on the three edges of the face.
      const Perm4& p = g->perm;
      for (int e = 0; e < 6; ++e) {
        const int a = kEdgeVertices[static_cast<size_t>(e)][0];
        const int b = kEdgeVertices[static_cast<size_t>(e)][1];
        if (a == f || b == f) continue;
        const std::int64_t np = edgePointCount(c, a, b);
        for (std::int64_t k = 0; k < np; ++k)
          points.unite(static_cast<size_t>(dc.pointId(t, a, b, k)), static_cast<size_t>(dc.pointId(g->tet, p[a], p[b], k)));
      }
      if (std::make_pair(g->tet, p[f]) < std::make_pair(t, f)) continue;
      const auto& c2 = dc.counts(g->tet);
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        const std::int64_t arcs = arcCount(c, v, f);
        edges += arcs;
        for (std::int64_t d = 0; d < arcs; ++d) {
          const DiscRef d1 = discAtArc(c, v, f, d);
          const DiscRef d2 = discAtArc(c2, p[v], p[f], d);
          const auto i1 = static_cast<size_t>(dc.discId(t, d1));
          const auto i2 = static_cast<size_t>(dc.discId(g->tet, d2));
          comp.unite(i1, i2);
          const ArcShape s1 = arcShape(d1, f);
          const ArcShape s2 = arcShape(d2, p[f]);
          orient.unite(i1, i2, s2.from == p[s1.from] ? 1 : 0);
          side.unite(i1, i2, sideFacingCorner(c, v, d) ^ sideFacingCorner(c2, p[v], d));
        }
      }
    }
  }

  std::int64_t vertices = 0;
  for (size_t i = 0; i < static_cast<size_t>(dc.pointCount()); ++i)
    if (points.find(i) == i) ++vertices;
  out.eulerChar = static_cast<long>(vertices - edges + dc.discCount());

  for (size_t i = 0; i < D; ++i) {
    if (comp.find(i) == i) ++out.components;
    if (orient.conflicted(i)) out.orientable = false;
    if (side.conflicted(i)) out.twoSided = false;
  }
  out.connected = out.components == 1;

  detail::UnionFind curves(static_cast<size_t>(dc.pointCount()));
  for (const auto& [a, b] : boundaryArcs)
    curves.unite(points.find(static_cast<size_t>(a)), points.find(static_cast<size_t>(b)));
  std::vector<size_t> roots;
  for (const auto& [a, b] : boundaryArcs) roots.push_back(curves.find(points.find(static_cast<size_t>(a))));
  std::sort(roots.begin(), roots.end());
  out.boundaryCurves = static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());

  out.vertexLinking = !s.hasQuads();
  return out;
}

std::optional<StandardCoords> findNontrivialSphere(const Triangulation& tri, const EnumerationOptions& opts) {
  requireClosed(tri);
  for (const auto& q : enumerateQuadVertexSurfaces(tri, opts)) {
    StandardCoords s = quadToStandard(tri, q);
    if (!s.hasQuads()) continue;
    const SurfaceClass cls = recognizeSurface(tri, s);
    if (cls.isSphere()) return s;
    if (cls.isProjectivePlane() && !cls.twoSided) return s.scaled(2);
  }
  return std::nullopt;
}

bool isZeroEfficient(const Triangulation& tri, const EnumerationOptions& opts) {
  return !findNontrivialSphere(tri, opts).has_value();
}

// ---------------------------------------------------------------------------
// SURF1.

namespace {

std::string writeRows(int tets, const IntVector& coords, int width, const char* kind) {
  std::ostringstream os;
  os << "surf " << tets << ' ' << kind << '\n';
  for (int t = 0; t < tets; ++t) {
    for (int k = 0; k < width; ++k) {
      if (k) os << ' ';
      os << coords[static_cast<size_t>(t * width + k)].get_str();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string writeSurface(const StandardCoords& s) { return writeRows(s.tets(), s.coords, 7, "std"); }
std::string writeSurface(const QuadCoords& q) { return writeRows(q.tets(), q.coords, 3, "quad"); }

ParsedSurface parseSurface(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  int tets = -1;
  int width = 0;
  int rows = 0;
  ParsedSurface out;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') throw ParseError(lineNo, "CR line endings are not allowed");
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '%') continue;
    std::istringstream ls(line);
    if (tets < 0) {
      std::string kw, kind;
      if (!(ls >> kw >> tets >> kind) || kw != "surf" || tets < 0) throw ParseError(lineNo, "expected `surf <n> <std|quad>`");
      if (kind == "std") width = 7;
      else if (kind == "quad") width = 3;
      else throw ParseError(lineNo, "unknown coordinate system `" + kind + "`");
      std::string extra;
      if (ls >> extra) throw ParseError(lineNo, "trailing text after header");
      out.standard = width == 7;
      continue;
    }
    if (rows == tets) throw ParseError(lineNo, "more rows than tetrahedra");
    std::string tok;
    int k = 0;
    while (ls >> tok) {
      if (k == width) throw ParseError(lineNo, "too many coordinates");
      BigInt x;
      if (tok.find_first_not_of("0123456789") != std::string::npos || x.set_str(tok, 10) != 0)
        throw ParseError(lineNo, "coordinates must be non-negative integers");
      out.coords.push_back(x);
      ++k;
    }
    if (k != width) throw ParseError(lineNo, "expected " + std::to_string(width) + " coordinates");
    ++rows;
  }
  if (tets < 0) throw ParseError(0, "missing `surf` header");
  if (rows != tets) throw ParseError(lineNo, "expected " + std::to_string(tets) + " rows, found " + std::to_string(rows));
  return out;
}

}  // namespace crushkit
