#include "crushkit/skeleton.hpp"

#include <algorithm>
#include <map>

#include "crushkit/errors.hpp"
#include "union_find.hpp"

namespace crushkit {

namespace {

size_t corner(int tet, int v) { return static_cast<size_t>(tet) * 4 + static_cast<size_t>(v); }
size_t edgeSlot(int tet, int e) { return static_cast<size_t>(tet) * 6 + static_cast<size_t>(e); }
// Link vertex of vertex v in direction w, i.e. the end of tetrahedron edge vw at v.
size_t linkVertex(int tet, int v, int w) { return static_cast<size_t>(tet) * 16 + static_cast<size_t>(v * 4 + w); }

}  // namespace

Skeleton::Skeleton(const Triangulation& tri) {
  const int n = tri.size();
  const auto N = static_cast<size_t>(n);
  vertexOf_.assign(N, {});
  edgeOf_.assign(N, {});
  edgeReversed_.assign(N, {});
  triangleOf_.assign(N, {});

  detail::UnionFind vuf(4 * N);
  detail::ParityUnionFind euf(6 * N);
  detail::UnionFind luf(16 * N);

  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g) continue;
      const Perm4& p = g->perm;
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        vuf.unite(corner(t, v), corner(g->tet, p[v]));
        for (int w = 0; w < 4; ++w)
          if (w != f && w != v) luf.unite(linkVertex(t, v, w), linkVertex(g->tet, p[v], p[w]));
      }
      for (int e = 0; e < 6; ++e) {
        const int a = kEdgeVertices[static_cast<size_t>(e)][0];
        const int b = kEdgeVertices[static_cast<size_t>(e)][1];
        if (a == f || b == f) continue;
        const int rel = p[a] > p[b] ? 1 : 0;
        euf.unite(edgeSlot(t, e), edgeSlot(g->tet, edgeIndex(p[a], p[b])), rel);
      }
    }
  }

  // Vertex classes, numbered by first appearance.
  std::map<size_t, int> vroot;
  for (int t = 0; t < n; ++t) {
    for (int v = 0; v < 4; ++v) {
      const size_t r = vuf.find(corner(t, v));
      auto [it, inserted] = vroot.emplace(r, static_cast<int>(vertices_.size()));
      if (inserted) vertices_.emplace_back();
      vertexOf_[static_cast<size_t>(t)][static_cast<size_t>(v)] = it->second;
      vertices_[static_cast<size_t>(it->second)].embeddings.push_back({t, v});
    }
  }

  // Edge classes.
  std::map<size_t, int> eroot;
  for (int t = 0; t < n; ++t) {
    for (int e = 0; e < 6; ++e) {
      const auto [r, parity] = euf.find(edgeSlot(t, e));
      auto [it, inserted] = eroot.emplace(r, static_cast<int>(edges_.size()));
      if (inserted) {
        edges_.emplace_back();
        edges_.back().valid = !euf.conflicted(r);
      }
      const bool reversed = parity != 0;
      edgeOf_[static_cast<size_t>(t)][static_cast<size_t>(e)] = it->second;
      edgeReversed_[static_cast<size_t>(t)][static_cast<size_t>(e)] = reversed;
      auto& cls = edges_[static_cast<size_t>(it->second)];
      cls.embeddings.push_back({t, e, reversed});
      if (inserted) {
        const int a = kEdgeVertices[static_cast<size_t>(e)][0];
        const int b = kEdgeVertices[static_cast<size_t>(e)][1];
        cls.start = vertexOf_[static_cast<size_t>(t)][static_cast<size_t>(reversed ? b : a)];
        cls.end = vertexOf_[static_cast<size_t>(t)][static_cast<size_t>(reversed ? a : b)];
      }
    }
  }

  // Triangle classes.
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (g && std::make_pair(g->tet, g->perm[f]) < std::make_pair(t, f)) {
        const int id = triangleOf_[static_cast<size_t>(g->tet)][static_cast<size_t>(g->perm[f])];
        triangleOf_[static_cast<size_t>(t)][static_cast<size_t>(f)] = id;
        triangles_[static_cast<size_t>(id)].embeddings.push_back({t, f});
        continue;
      }
      triangleOf_[static_cast<size_t>(t)][static_cast<size_t>(f)] = static_cast<int>(triangles_.size());
      triangles_.emplace_back().embeddings.push_back({t, f});
    }
  }

  // Edge boundary flags: an edge is boundary if it lies in a boundary triangle.
  for (const auto& tc : triangles_) {
    if (!tc.boundary()) continue;
    const auto [t, f] = tc.embeddings.front();
    for (int e = 0; e < 6; ++e) {
      const int a = kEdgeVertices[static_cast<size_t>(e)][0];
      const int b = kEdgeVertices[static_cast<size_t>(e)][1];
      if (a != f && b != f) edges_[static_cast<size_t>(edgeOf(t, e))].boundary = true;
    }
  }

  // Vertex links: one triangle per corner, one edge per (corner, face) with
  // glued pairs counted once, and link vertices as luf classes.
  std::vector<int> linkFaces(vertices_.size(), 0);
  std::vector<int> linkEdgesTwice(vertices_.size(), 0);
  std::vector<std::map<size_t, int>> linkVertexRoots(vertices_.size());
  for (int t = 0; t < n; ++t) {
    for (int v = 0; v < 4; ++v) {
      const auto vc = static_cast<size_t>(vertexOf(t, v));
      ++linkFaces[vc];
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        if (tri.isBoundary(t, f)) {
          linkEdgesTwice[vc] += 2;
          vertices_[vc].link.closed = false;
        } else {
          linkEdgesTwice[vc] += 1;
        }
      }
      for (int w = 0; w < 4; ++w)
        if (w != v) linkVertexRoots[vc].emplace(luf.find(linkVertex(t, v, w)), 0);
    }
  }
  for (size_t vc = 0; vc < vertices_.size(); ++vc) {
    vertices_[vc].link.eulerChar =
        static_cast<int>(linkVertexRoots[vc].size()) - linkEdgesTwice[vc] / 2 + linkFaces[vc];
  }

  // Link orientability by sign propagation over the corners of each vertex.
  std::vector<int> sign(4 * N, 0);
  for (int t = 0; t < n; ++t) {
    for (int v = 0; v < 4; ++v) {
      if (sign[corner(t, v)] != 0) continue;
      sign[corner(t, v)] = 1;
      std::vector<std::pair<int, int>> stack{{t, v}};
      while (!stack.empty()) {
        const auto [ct, cv] = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
          if (f == cv) continue;
          const auto& g = tri.gluing(ct, f);
          if (!g) continue;
          const int want = sign[corner(ct, cv)] * -g->perm.sign();
          int& have = sign[corner(g->tet, g->perm[cv])];
          if (have == 0) {
            have = want;
            stack.emplace_back(g->tet, g->perm[cv]);
          } else if (have != want) {
            vertices_[static_cast<size_t>(vertexOf(ct, cv))].link.orientable = false;
          }
        }
      }
    }
  }
}

bool Skeleton::isValid() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const EdgeClass& e) { return e.valid; });
}

std::vector<int> Skeleton::invalidEdges() const {
  std::vector<int> out;
  for (size_t i = 0; i < edges_.size(); ++i)
    if (!edges_[i].valid) out.push_back(static_cast<int>(i));
  return out;
}

const char* toString(TriangulationClass c) {
  switch (c) {
    case TriangulationClass::Closed: return "closed";
    case TriangulationClass::Bounded: return "bounded";
    case TriangulationClass::Ideal: return "ideal";
    case TriangulationClass::Invalid: return "invalid";
  }
  return "?";
}

TriangulationClass classify(const Skeleton& skel, const Triangulation& tri) {
  if (!skel.isValid()) return TriangulationClass::Invalid;
  const bool anyBoundary = tri.boundaryFaceCount() > 0;
  const auto& vs = skel.vertices();
  if (!anyBoundary &&
      std::all_of(vs.begin(), vs.end(), [](const VertexClass& v) { return v.link.isSphere(); }))
    return TriangulationClass::Closed;
  if (anyBoundary && std::all_of(vs.begin(), vs.end(), [](const VertexClass& v) {
        return v.link.isSphere() || v.link.isDisc();
      }))
    return TriangulationClass::Bounded;
  return TriangulationClass::Ideal;
}

TriangulationClass classify(const Triangulation& tri) { return classify(Skeleton(tri), tri); }

MinimalityLint lintMinimal(const Triangulation& tri) {
  const Skeleton skel(tri);
  if (classify(skel, tri) != TriangulationClass::Closed)
    throw PreconditionError("minimality lint requires a closed, valid triangulation");

  MinimalityLint out;
  out.vertexCount = static_cast<int>(skel.vertices().size());
  for (size_t e = 0; e < skel.edges().size(); ++e)
    if (skel.edges()[e].embeddings.size() == 1) out.degreeOneEdges.push_back(static_cast<int>(e));

  for (size_t id = 0; id < skel.triangles().size(); ++id) {
    const auto [t, f] = skel.triangles()[id].embeddings.front();
    bool cone = false;
    for (int apex = 0; apex < 4 && !cone; ++apex) {
      if (apex == f) continue;
      int others[2];
      int k = 0;
      for (int w = 0; w < 4; ++w)
        if (w != f && w != apex) others[k++] = w;
      // Two sides leaving the apex that are the same edge, traversed the same way.
      cone = skel.edgeOf(t, edgeIndex(apex, others[0])) == skel.edgeOf(t, edgeIndex(apex, others[1])) &&
             skel.edgeDirection(t, apex, others[0]) == skel.edgeDirection(t, apex, others[1]);
    }
    if (cone) out.coneFaces.push_back(static_cast<int>(id));
  }
  return out;
}

}  // namespace crushkit
