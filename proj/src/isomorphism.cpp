#include "crushkit/isomorphism.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace crushkit {

Triangulation Isomorphism::apply(const Triangulation& tri) const {
  Triangulation out(tri.size());
  for (int t = 0; t < tri.size(); ++t) {
    const Perm4& pt = vertexMap[static_cast<size_t>(t)];
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g || std::make_pair(g->tet, g->perm[f]) < std::make_pair(t, f)) continue;
      const Perm4& pu = vertexMap[static_cast<size_t>(g->tet)];
      out.join(tetImage[static_cast<size_t>(t)], pt[f], tetImage[static_cast<size_t>(g->tet)],
               pu * g->perm * pt.inverse());
    }
  }
  return out;
}

namespace {

class Matcher {
 public:
  Matcher(const Triangulation& a, const Triangulation& b)
      : a_(a), b_(b), image_(static_cast<size_t>(a.size()), -1), preimage_(static_cast<size_t>(b.size()), -1),
        map_(static_cast<size_t>(a.size())) {
    // Component roots of `a` in index order.
    std::vector<bool> seen(static_cast<size_t>(a.size()), false);
    for (int t = 0; t < a.size(); ++t) {
      if (seen[static_cast<size_t>(t)]) continue;
      roots_.push_back(t);
      std::vector<int> stack{t};
      seen[static_cast<size_t>(t)] = true;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
          const auto& g = a.gluing(x, f);
          if (g && !seen[static_cast<size_t>(g->tet)]) {
            seen[static_cast<size_t>(g->tet)] = true;
            stack.push_back(g->tet);
          }
        }
      }
    }
  }

  std::optional<Isomorphism> run() {
    if (a_.size() != b_.size() || a_.boundaryFaceCount() != b_.boundaryFaceCount()) return std::nullopt;
    if (!matchComponent(0)) return std::nullopt;
    return Isomorphism{image_, map_};
  }

 private:
  bool matchComponent(size_t c) {
    if (c == roots_.size()) return true;
    const int root = roots_[c];
    for (int target = 0; target < b_.size(); ++target) {
      if (preimage_[static_cast<size_t>(target)] >= 0) continue;
      for (const Perm4& p : Perm4::all()) {
        std::vector<int> assigned;
        if (propagate(root, target, p, assigned) && matchComponent(c + 1)) return true;
        for (int t : assigned) {
          preimage_[static_cast<size_t>(image_[static_cast<size_t>(t)])] = -1;
          image_[static_cast<size_t>(t)] = -1;
        }
      }
    }
    return false;
  }

  bool assign(int t, int u, Perm4 p, std::vector<int>& assigned) {
    image_[static_cast<size_t>(t)] = u;
    preimage_[static_cast<size_t>(u)] = t;
    map_[static_cast<size_t>(t)] = p;
    assigned.push_back(t);
    return true;
  }

  bool propagate(int root, int target, Perm4 p, std::vector<int>& assigned) {
    assign(root, target, p, assigned);
    for (size_t i = 0; i < assigned.size(); ++i) {
      const int t = assigned[i];
      const int u = image_[static_cast<size_t>(t)];
      const Perm4 pt = map_[static_cast<size_t>(t)];
      for (int f = 0; f < 4; ++f) {
        const auto& ga = a_.gluing(t, f);
        const auto& gb = b_.gluing(u, pt[f]);
        if (ga.has_value() != gb.has_value()) return false;
        if (!ga) continue;
        const Perm4 want = gb->perm * pt * ga->perm.inverse();
        const int mapped = image_[static_cast<size_t>(ga->tet)];
        if (mapped >= 0) {
          if (mapped != gb->tet || map_[static_cast<size_t>(ga->tet)] != want) return false;
        } else {
          if (preimage_[static_cast<size_t>(gb->tet)] >= 0) return false;
          assign(ga->tet, gb->tet, want, assigned);
        }
      }
    }
    return true;
  }

  const Triangulation& a_;
  const Triangulation& b_;
  std::vector<int> roots_;
  std::vector<int> image_;
  std::vector<int> preimage_;
  std::vector<Perm4> map_;
};

}  // namespace

std::optional<Isomorphism> findIsomorphism(const Triangulation& a, const Triangulation& b) {
  return Matcher(a, b).run();
}

}  // namespace crushkit
