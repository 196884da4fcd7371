#include "crushkit/census.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "crushkit/skeleton.hpp"
#include "union_find.hpp"

namespace crushkit {

namespace {

// (partner, perm index) per face in canonical order; boundary is (-1, -1).
using Code = std::vector<std::pair<int, int>>;

Code relabelledCode(const Triangulation& tri, int start, Perm4 startLabel, std::vector<int>& order,
                    std::vector<Perm4>& label, const Code* bound) {
  const int n = tri.size();
  std::vector<int> newIndex(static_cast<size_t>(n), -1);
  order.assign(1, start);
  label.assign(static_cast<size_t>(n), Perm4());
  newIndex[static_cast<size_t>(start)] = 0;
  label[static_cast<size_t>(start)] = startLabel;
  Code code;
  code.reserve(static_cast<size_t>(4 * n));
  bool tied = bound != nullptr;
  for (size_t k = 0; k < order.size(); ++k) {
    const int t = order[k];
    const Perm4 sigma = label[static_cast<size_t>(t)];
    const Perm4 sigmaInv = sigma.inverse();
    for (int nf = 0; nf < 4; ++nf) {
      const auto& g = tri.gluing(t, sigmaInv[nf]);
      std::pair<int, int> entry{-1, -1};
      if (g) {
        auto& idx = newIndex[static_cast<size_t>(g->tet)];
        if (idx < 0) {
          idx = static_cast<int>(order.size());
          order.push_back(g->tet);
          label[static_cast<size_t>(g->tet)] = sigma * g->perm.inverse();
        }
        const Perm4 p = label[static_cast<size_t>(g->tet)] * g->perm * sigmaInv;
        entry = {idx, p.index()};
      }
      if (tied) {
        const auto& b = (*bound)[code.size()];
        if (entry > b) return {};  // already worse than the best
        if (entry < b) tied = false;
      }
      code.push_back(entry);
    }
  }
  return code;
}

}  // namespace

Triangulation canonicalForm(const Triangulation& tri) {
  const int n = tri.size();
  if (n == 0) return tri;
  if (connectedComponents(tri).size() != 1) throw std::invalid_argument("canonical form needs a connected triangulation");
  Code best;
  std::vector<int> bestOrder, order;
  std::vector<Perm4> bestLabel, label;
  for (int s = 0; s < n; ++s)
    for (const Perm4& p : Perm4::all()) {
      Code c = relabelledCode(tri, s, p, order, label, best.empty() ? nullptr : &best);
      if (c.empty()) continue;
      if (best.empty() || c < best) {
        best = std::move(c);
        bestOrder = order;
        bestLabel = label;
      }
    }
  Triangulation out(n);
  for (int i = 0; i < n; ++i)
    for (int f = 0; f < 4; ++f) {
      const auto [partner, perm] = best[static_cast<size_t>(4 * i + f)];
      if (partner < 0 || !out.isBoundary(i, f)) continue;
      out.join(i, f, partner, Perm4::all()[static_cast<size_t>(perm)]);
    }
  return out;
}

namespace {

// Parity union-find over tetrahedron edges with undo, so the search can
// detect an edge identified with itself in reverse as soon as it happens.
class EdgeTracker {
 public:
  explicit EdgeTracker(int tets)
      : parent_(static_cast<size_t>(6 * tets)), parity_(parent_.size(), 0), size_(parent_.size(), 1) {
    for (size_t i = 0; i < parent_.size(); ++i) parent_[i] = static_cast<int>(i);
  }

  size_t mark() const { return history_.size(); }
  int classCount() const { return static_cast<int>(parent_.size() - history_.size()); }
  void rollback(size_t m) {
    while (history_.size() > m) {
      const int child = history_.back();
      history_.pop_back();
      const int root = parent_[static_cast<size_t>(child)];
      size_[static_cast<size_t>(root)] -= size_[static_cast<size_t>(child)];
      parent_[static_cast<size_t>(child)] = child;
      parity_[static_cast<size_t>(child)] = 0;
    }
  }

  // False if the union makes some edge class invalid.
  bool unite(int a, int b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    if (size_[static_cast<size_t>(ra)] > size_[static_cast<size_t>(rb)]) std::swap(ra, rb);
    parent_[static_cast<size_t>(ra)] = rb;
    parity_[static_cast<size_t>(ra)] = pa ^ pb ^ rel;
    size_[static_cast<size_t>(rb)] += size_[static_cast<size_t>(ra)];
    history_.push_back(ra);
    return true;
  }

  // Glues face f of t to t' via p; false on an invalid edge.
  bool glue(int t, int f, int t2, Perm4 p) {
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        if (a == f || b == f) continue;
        const int rel = p[a] > p[b] ? 1 : 0;
        if (!unite(6 * t + edgeIndex(a, b), 6 * t2 + edgeIndex(p[a], p[b]), rel)) return false;
      }
    return true;
  }

 private:
  std::pair<int, int> find(int x) const {
    int par = 0;
    while (parent_[static_cast<size_t>(x)] != x) {
      par ^= parity_[static_cast<size_t>(x)];
      x = parent_[static_cast<size_t>(x)];
    }
    return {x, par};
  }

  std::vector<int> parent_;
  std::vector<int> parity_;
  std::vector<int> size_;
  std::vector<int> history_;
};

class CensusSearch {
 public:
  explicit CensusSearch(int n) : n_(n), tri_(n), edges_(n) {}

  std::vector<Triangulation> run() {
    if (n_ > 0) search(1);
    std::vector<Triangulation> out;
    out.reserve(found_.size());
    for (auto& [text, tri] : found_) out.push_back(std::move(tri));
    return out;
  }

 private:
  void search(int used) {
    int t = 0, f = 0;
    while (t < n_ && !tri_.isBoundary(t, f)) {
      if (++f == 4) f = 0, ++t;
    }
    if (t == n_) {
      leaf();
      return;
    }
    if (t >= used) return;  // the used tetrahedra closed up on their own
    // A fresh tetrahedron can be labelled so the gluing is the identity.
    if (used < n_) {
      const size_t m = edges_.mark();
      tri_.join(t, f, used, Perm4());
      if (edges_.glue(t, f, used, Perm4())) search(used + 1);
      tri_.unjoin(t, f);
      edges_.rollback(m);
    }
    for (int t2 = t; t2 < used; ++t2)
      for (int f2 = 0; f2 < 4; ++f2) {
        if ((t2 == t && f2 <= f) || !tri_.isBoundary(t2, f2)) continue;
        for (const Perm4& p : Perm4::all()) {
          if (p[f] != f2) continue;
          const size_t m = edges_.mark();
          tri_.join(t, f, t2, p);
          if (edges_.glue(t, f, t2, p)) search(used);
          tri_.unjoin(t, f);
          edges_.rollback(m);
        }
      }
  }

  // With valid edges every vertex link is a closed surface, and all links
  // are spheres iff V - E + F - T == 0.  Cheap filter before the skeleton.
  int vertexCount() const {
    detail::UnionFind uf(static_cast<size_t>(4 * n_));
    int classes = 4 * n_;
    for (int t = 0; t < n_; ++t)
      for (int f = 0; f < 4; ++f) {
        const auto& g = tri_.gluing(t, f);
        for (int v = 0; v < 4; ++v)
          if (v != f && uf.unite(static_cast<size_t>(4 * t + v), static_cast<size_t>(4 * g->tet + g->perm[v])))
            --classes;
      }
    return classes;
  }

  void leaf() {
    if (vertexCount() - edges_.classCount() + n_ != 0) return;
    const Skeleton skel(tri_);
    if (classify(skel, tri_) != TriangulationClass::Closed) return;
    Triangulation canon = canonicalForm(tri_);
    std::string key = writeTriangulation(canon);
    found_.try_emplace(std::move(key), std::move(canon));
  }

  int n_;
  Triangulation tri_;
  EdgeTracker edges_;
  std::map<std::string, Triangulation> found_;
};

}  // namespace

std::vector<Triangulation> closedCensus(int tets) {
  if (tets < 0) throw std::invalid_argument("negative tetrahedron count");
  return CensusSearch(tets).run();
}

}  // namespace crushkit
