#pragma once

#include <numeric>
#include <utility>
#include <vector>

namespace crushkit::detail {

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), size_t{0}); }

  size_t find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[a] = b;  // smallest index stays root
    return true;
  }

 private:
  std::vector<size_t> parent_;
};

/// Union-find where each element carries a parity relative to its root.
/// Uniting with an inconsistent parity marks the class as conflicted.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(size_t n) : parent_(n), parity_(n, 0), conflict_(n, false) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }

  /// Returns (root, parity of x relative to root).
  std::pair<size_t, int> find(size_t x) {
    int par = 0;
    size_t r = x;
    while (parent_[r] != r) {
      par ^= parity_[r];
      r = parent_[r];
    }
    // Path compression with parity fix-up.
    int acc = par;
    while (parent_[x] != x) {
      const size_t next = parent_[x];
      const int old = parity_[x];
      parent_[x] = r;
      parity_[x] = acc;
      acc ^= old;
      x = next;
    }
    return {r, par};
  }

  /// Records that parity(a) xor parity(b) == rel.
  void unite(size_t a, size_t b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if ((pa ^ pb) != rel) conflict_[ra] = true;
      return;
    }
    if (ra < rb) {
      std::swap(ra, rb);
      std::swap(pa, pb);
    }
    parent_[ra] = rb;
    parity_[ra] = pa ^ pb ^ rel;
    if (conflict_[ra]) conflict_[rb] = true;
  }

  bool conflicted(size_t x) { return conflict_[find(x).first]; }

 private:
  std::vector<size_t> parent_;
  std::vector<int> parity_;
  std::vector<bool> conflict_;
};

}  // namespace crushkit::detail
