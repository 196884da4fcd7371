#include "fixtures.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

#include "crushkit/census.hpp"
#include "crushkit/skeleton.hpp"

namespace fixtures {

namespace {

// Census members with exactly n tetrahedra, generated once per process.
const std::vector<CorpusEntry>& censusOf(int n) {
  static std::map<int, std::vector<CorpusEntry>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<CorpusEntry> out;
  auto members = closedCensus(n);
  for (size_t i = 0; i < members.size(); ++i)
    out.push_back({"closed_" + std::to_string(n) + "_" + std::to_string(i), std::move(members[i])});
  return cache.emplace(n, std::move(out)).first->second;
}

}  // namespace

const std::vector<CorpusEntry>& corpus(int maxTets) {
  static std::map<int, std::vector<CorpusEntry>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(maxTets);
  if (it != cache.end()) return it->second;
  std::vector<CorpusEntry> out;
  for (int n = 1; n <= maxTets; ++n)
    for (const auto& e : censusOf(n)) out.push_back(e);
  return cache.emplace(maxTets, std::move(out)).first->second;
}

bool isRp2TwoSided(const SurfaceClass& c) { return c.isProjectivePlane() && c.twoSided; }

std::vector<StandardCoords> sphereSurfaces(const Triangulation& tri) {
  std::vector<StandardCoords> out;
  for (const auto& q : enumerateQuadVertexSurfaces(tri)) {
    StandardCoords s = quadToStandard(tri, q);
    const SurfaceClass c = recognizeSurface(tri, s);
    if (c.isSphere()) out.push_back(s);
    else if (c.isProjectivePlane() && !c.twoSided) out.push_back(s.scaled(2));
  }
  return out;
}

namespace {

bool hasH1(const Triangulation& t, int r, std::vector<int> factors) {
  const HomologySummary h = h1(t);
  if (h.r != r || h.factors.size() != factors.size()) return false;
  for (size_t i = 0; i < factors.size(); ++i)
    if (h.factors[i] != factors[i]) return false;
  return true;
}

const Triangulation& firstMatch(const char* what, bool (*pred)(const Triangulation&)) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& e : censusOf(n))
      if (pred(e.tri)) return e.tri;
  throw std::runtime_error(std::string("no census member for ") + what);
}

}  // namespace

const Triangulation& s3OneTet(int which) {
  static const std::vector<Triangulation> found = [] {
    std::vector<Triangulation> v;
    for (const auto& e : corpus(1))
      if (hasH1(e.tri, 0, {})) v.push_back(e.tri);
    return v;
  }();
  return found.at(static_cast<size_t>(which));
}

const Triangulation& rp3() {
  static const Triangulation& t =
      firstMatch("RP3", [](const Triangulation& x) { return isOrientable(x) && hasH1(x, 0, {2}); });
  return t;
}

const Triangulation& l31() {
  static const Triangulation& t =
      firstMatch("L(3,1)", [](const Triangulation& x) { return isOrientable(x) && hasH1(x, 0, {3}); });
  return t;
}

const Triangulation& rp2xs1() {
  static const Triangulation& t = firstMatch("RP2 x S1", [](const Triangulation& x) {
    if (isOrientable(x) || !hasH1(x, 1, {2})) return false;
    for (const auto& q : enumerateQuadVertexSurfaces(x))
      if (isRp2TwoSided(recognizeSurface(x, quadToStandard(x, q)))) return true;
    return false;
  });
  return t;
}

Shelled removeBall(const Triangulation& tri, int d) {
  const int n = tri.size();
  std::vector<int> idx(static_cast<size_t>(n));
  for (int t = 0, k = 0; t < n; ++t) idx[static_cast<size_t>(t)] = t == d ? -1 : k++;
  const int base = n - 1;
  Triangulation out(base + 12);

  // Outer vertices are 0..3 (those of the removed tetrahedron), inner ones
  // 4..7.  Each face prism is cut into three tetrahedra by the staircase
  // rule, which agrees on the shared quadrilateral sides.
  std::vector<std::array<int, 4>> names;
  std::array<int, 4> outer{}, inner{};
  std::array<Perm4, 4> toTet{};
  for (int f = 0; f < 4; ++f) {
    int v[3], m = 0;
    for (int x = 0; x < 4; ++x)
      if (x != f) v[m++] = x;
    outer[static_cast<size_t>(f)] = base + static_cast<int>(names.size());
    names.push_back({v[0], v[1], v[2], 4 + v[2]});
    names.push_back({v[0], v[1], 4 + v[1], 4 + v[2]});
    inner[static_cast<size_t>(f)] = base + static_cast<int>(names.size());
    names.push_back({v[0], 4 + v[0], 4 + v[1], 4 + v[2]});
    toTet[static_cast<size_t>(f)] = Perm4(v[0], v[1], v[2], f);
  }

  for (int t = 0; t < n; ++t) {
    if (t == d) continue;
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g || g->tet == d || !out.isBoundary(idx[static_cast<size_t>(t)], f)) continue;
      out.join(idx[static_cast<size_t>(t)], f, idx[static_cast<size_t>(g->tet)], g->perm);
    }
  }

  std::map<std::array<int, 3>, std::pair<int, int>> open;
  for (int a = 0; a < 12; ++a)
    for (int f = 0; f < 4; ++f) {
      std::array<int, 3> key{};
      int m = 0;
      for (int x = 0; x < 4; ++x)
        if (x != f) key[static_cast<size_t>(m++)] = names[static_cast<size_t>(a)][static_cast<size_t>(x)];
      std::sort(key.begin(), key.end());
      if (key[2] < 4 || key[0] >= 4) continue;  // outer or inner boundary
      auto it = open.find(key);
      if (it == open.end()) {
        open[key] = {a, f};
        continue;
      }
      const auto [b, fb] = it->second;
      std::array<int, 4> img{};
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          if (names[static_cast<size_t>(b)][static_cast<size_t>(y)] == names[static_cast<size_t>(a)][static_cast<size_t>(x)])
            img[static_cast<size_t>(x)] = y;
      img[static_cast<size_t>(f)] = fb;
      out.join(base + a, f, base + b, Perm4::fromImages(img));
      open.erase(it);
    }
  if (!open.empty()) throw std::logic_error("unmatched shell faces");

  for (int f = 0; f < 4; ++f) {
    const auto& g = tri.gluing(d, f);
    const int o = outer[static_cast<size_t>(f)];
    if (!g || !out.isBoundary(o, 3)) continue;
    const Perm4 s = toTet[static_cast<size_t>(f)];
    if (g->tet == d) {
      const int f2 = g->perm[f];
      out.join(o, 3, outer[static_cast<size_t>(f2)], toTet[static_cast<size_t>(f2)].inverse() * g->perm * s);
    } else {
      out.join(o, 3, idx[static_cast<size_t>(g->tet)], g->perm * s);
    }
  }
  return {std::move(out), inner};
}

const Triangulation& rp3SumRp3() {
  static const Triangulation t = [] {
    const Shelled s = removeBall(rp3(), 0);
    Triangulation both = s.tri;
    both.append(s.tri);
    for (int f = 0; f < 4; ++f) both.join(s.inner[static_cast<size_t>(f)], 0, s.tri.size() + s.inner[static_cast<size_t>(f)], Perm4());
    return both;
  }();
  return t;
}

// ---------------------------------------------------------------------------

namespace {

// Kernel of the column-selected matrix over Q, by plain Gaussian elimination.
std::vector<std::vector<mpq_class>> kernel(const IntMatrix& eq, const std::vector<size_t>& cols) {
  std::vector<std::vector<mpq_class>> a;
  for (const auto& row : eq) {
    std::vector<mpq_class> r;
    for (size_t c : cols) r.emplace_back(row[c]);
    a.push_back(std::move(r));
  }
  const size_t k = cols.size();
  std::vector<int> pivotCol;
  size_t rank = 0;
  for (size_t c = 0; c < k && rank < a.size(); ++c) {
    size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    const mpq_class inv = 1 / a[rank][c];
    for (auto& x : a[rank]) x *= inv;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (size_t j = 0; j < k; ++j) a[i][j] -= f * a[rank][j];
    }
    pivotCol.push_back(static_cast<int>(c));
    ++rank;
  }
  std::vector<std::vector<mpq_class>> basis;
  for (size_t free = 0; free < k; ++free) {
    if (std::find(pivotCol.begin(), pivotCol.end(), static_cast<int>(free)) != pivotCol.end()) continue;
    std::vector<mpq_class> v(k, 0);
    v[free] = 1;
    for (size_t r = 0; r < rank; ++r) v[static_cast<size_t>(pivotCol[r])] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<IntVector> bruteForceRays(const IntMatrix& eq, size_t dim) {
  if (dim > 20) throw std::invalid_argument("too many coordinates for brute force");
  std::vector<IntVector> out;
  for (unsigned long mask = 1; mask < (1UL << dim); ++mask) {
    std::vector<size_t> cols;
    for (size_t i = 0; i < dim; ++i)
      if (mask & (1UL << i)) cols.push_back(i);
    const auto ker = kernel(eq, cols);
    if (ker.size() != 1) continue;
    const auto& v = ker.front();
    const int sign = sgn(v.front());
    bool ok = sign != 0;
    for (const auto& x : v) ok = ok && sgn(x) == sign;
    if (!ok) continue;
    BigInt l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVector ray(dim, 0);
    for (size_t i = 0; i < cols.size(); ++i) {
      mpq_class y = v[i] * l * sign;
      ray[cols[i]] = y.get_num();
    }
    makePrimitive(ray);
    out.push_back(std::move(ray));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BigInt> determinantalFactors(const IntMatrix& m, size_t cols) {
  const size_t rows = m.size();
  std::vector<BigInt> D{1};
  for (size_t k = 1; k <= std::min(rows, cols); ++k) {
    BigInt g = 0;
    std::vector<size_t> ri(k), ci(k);
    // All k-subsets of rows and columns.
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
      do {
        IntMatrix sub;
        for (size_t r = 0; r < rows; ++r) {
          if (!rsel[r]) continue;
          IntVector row;
          for (size_t c = 0; c < cols; ++c)
            if (csel[c]) row.push_back(m[r][c]);
          sub.push_back(std::move(row));
        }
        const BigInt det = determinant(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    D.push_back(g);
  }
  std::vector<BigInt> out;
  for (size_t k = 1; k < D.size(); ++k) out.push_back(D[k] / D[k - 1]);
  return out;
}

int betti1Mod2(const Triangulation& tri) {
  const Skeleton skel(tri);
  const size_t V = skel.vertices().size(), E = skel.edges().size();
  auto rank2 = [](std::vector<boost::dynamic_bitset<>> rows) {
    int rank = 0;
    if (rows.empty()) return 0;
    const size_t width = rows.front().size();
    size_t next = 0;
    for (size_t c = 0; c < width; ++c) {
      size_t p = next;
      while (p < rows.size() && !rows[p][c]) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[next]);
      for (size_t i = 0; i < rows.size(); ++i)
        if (i != next && rows[i][c]) rows[i] ^= rows[next];
      ++next;
      ++rank;
    }
    return rank;
  };
  std::vector<boost::dynamic_bitset<>> d1;
  for (const auto& e : skel.edges()) {
    boost::dynamic_bitset<> row(V);
    row.flip(static_cast<size_t>(e.start));
    row.flip(static_cast<size_t>(e.end));
    d1.push_back(row);
  }
  std::vector<boost::dynamic_bitset<>> d2;
  for (const auto& tr : skel.triangles()) {
    boost::dynamic_bitset<> row(E);
    const auto [t, f] = tr.embeddings.front();
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (a != f && b != f) row.flip(static_cast<size_t>(skel.edgeOf(t, edgeIndex(a, b))));
    d2.push_back(row);
  }
  return static_cast<int>(E) - rank2(d1) - rank2(d2);
}

}  // namespace fixtures
