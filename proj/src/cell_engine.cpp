#include "crushkit/cell_engine.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "crushkit/errors.hpp"
#include "crushkit/skeleton.hpp"
#include "union_find.hpp"

namespace crushkit {

namespace {

int mod(int a, int k) { return ((a % k) + k) % k; }

}  // namespace

int Dihedral::corner(int i, int k) const { return refl ? mod(rot - i, k) : mod(rot + i, k); }

std::pair<int, bool> Dihedral::slot(int i, int k) const {
  if (refl) return {mod(rot - i - 1, k), true};
  return {mod(rot + i, k), false};
}

Dihedral Dihedral::inverse(int k) const { return refl ? *this : Dihedral{mod(-rot, k), false}; }

Dihedral Dihedral::compose(const Dihedral& rhs, int k) const {
  if (!refl) return {mod(rot + rhs.rot, k), rhs.refl};
  return {mod(rot - rhs.rot, k), !rhs.refl};
}

const char* toString(CellKind k) {
  switch (k) {
    case CellKind::Tetrahedron: return "tetrahedron";
    case CellKind::ThreeSidedFootball: return "football3";
    case CellKind::FourSidedFootball: return "football4";
    case CellKind::TriangularPurse: return "purse";
    case CellKind::TriangularPillow: return "pillow3";
    case CellKind::BigonalPillow: return "pillow2";
    case CellKind::BigonalPyramid: return "pyramid";
  }
  return "?";
}

const char* toString(MoveKind k) {
  switch (k) {
    case MoveKind::TriangularPillow: return "flatten-pillow3";
    case MoveKind::BigonalPillow: return "flatten-pillow2";
    case MoveKind::Bigon: return "flatten-bigon";
  }
  return "?";
}

const char* toString(MoveOutcome o) {
  switch (o) {
    case MoveOutcome::Reglued: return "reglued";
    case MoveOutcome::MadeBoundary: return "boundary";
    case MoveOutcome::Deleted3Ball: return "deleted-ball";
    case MoveOutcome::DeletedS3: return "deleted-s3";
    case MoveOutcome::DeletedL31: return "deleted-l31";
    case MoveOutcome::DeletedRP3: return "deleted-rp3";
    case MoveOutcome::DeletedInvalidPair: return "deleted-invalid-pair";
    case MoveOutcome::Flattened: return "flattened";
    case MoveOutcome::CappedSphere: return "capped-sphere";
    case MoveOutcome::SplitSphere: return "split-sphere";
    case MoveOutcome::RemovedRP3: return "removed-rp3";
    case MoveOutcome::CutProjectivePlane: return "cut-projective-plane";
    case MoveOutcome::CutAlongDisc: return "cut-disc";
  }
  return "?";
}

namespace {

std::optional<CellKind> kindFromShapes(int triangles, int bigons) {
  if (triangles == 4 && bigons == 0) return CellKind::Tetrahedron;
  if (triangles == 0 && bigons == 3) return CellKind::ThreeSidedFootball;
  if (triangles == 0 && bigons == 4) return CellKind::FourSidedFootball;
  if (triangles == 2 && bigons == 2) return CellKind::TriangularPurse;
  if (triangles == 2 && bigons == 0) return CellKind::TriangularPillow;
  if (triangles == 0 && bigons == 2) return CellKind::BigonalPillow;
  if (triangles == 2 && bigons == 1) return CellKind::BigonalPyramid;
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Derived classes.

struct CellComplex::Derived {
  std::vector<int> edgeClass;    // per edge atom, -1 if dead
  std::vector<int> edgeParity;   // atom direction relative to its class
  std::vector<int> vertexClass;  // per vertex atom, -1 if dead
  std::vector<bool> edgeValid;   // per edge class
  std::vector<int> edgeStart;    // vertex class at the start of each edge class
  std::vector<int> edgeEnd;
  int vertexClasses = 0;
};

CellComplex::Derived CellComplex::derive() const {
  const auto E = edgeCell_.size();
  const auto V = vertexCell_.size();
  detail::ParityUnionFind euf(E);
  detail::UnionFind vuf(V);

  for (size_t fa = 0; fa < faces_.size(); ++fa) {
    const CellFace& A = faces_[fa];
    if (!A.alive || !A.glue || static_cast<size_t>(A.glue->face) < fa) continue;
    const CellFace& B = faces_[static_cast<size_t>(A.glue->face)];
    const int k = A.size();
    for (int i = 0; i < k; ++i) {
      vuf.unite(static_cast<size_t>(A.corners[static_cast<size_t>(i)]),
                static_cast<size_t>(B.corners[static_cast<size_t>(A.glue->map.corner(i, k))]));
      const auto [j, reversed] = A.glue->map.slot(i, k);
      const EdgeSlot& sa = A.slots[static_cast<size_t>(i)];
      const EdgeSlot& sb = B.slots[static_cast<size_t>(j)];
      euf.unite(static_cast<size_t>(sa.edge), static_cast<size_t>(sb.edge), (sa.forward != sb.forward) != reversed ? 1 : 0);
    }
  }
  for (const Merge& m : merges_)
    if (cells_[static_cast<size_t>(m.cell)].alive) euf.unite(static_cast<size_t>(m.a), static_cast<size_t>(m.b), m.rel);

  // Endpoints of every edge atom, from the faces that use it.
  std::vector<std::pair<int, int>> ends(E, {-1, -1});
  for (const CellFace& f : faces_) {
    if (!f.alive) continue;
    const int k = f.size();
    for (int i = 0; i < k; ++i) {
      const EdgeSlot& s = f.slots[static_cast<size_t>(i)];
      const int c0 = f.corners[static_cast<size_t>(i)];
      const int c1 = f.corners[static_cast<size_t>((i + 1) % k)];
      ends[static_cast<size_t>(s.edge)] = s.forward ? std::make_pair(c0, c1) : std::make_pair(c1, c0);
    }
  }

  Derived d;
  d.vertexClass.assign(V, -1);
  std::map<size_t, int> vroots;
  for (size_t v = 0; v < V; ++v) {
    if (!cells_[static_cast<size_t>(vertexCell_[v])].alive) continue;
    auto [it, inserted] = vroots.emplace(vuf.find(v), static_cast<int>(vroots.size()));
    d.vertexClass[v] = it->second;
  }
  d.vertexClasses = static_cast<int>(vroots.size());

  d.edgeClass.assign(E, -1);
  d.edgeParity.assign(E, 0);
  std::map<size_t, int> eroots;
  for (size_t e = 0; e < E; ++e) {
    if (!cells_[static_cast<size_t>(edgeCell_[e])].alive) continue;
    const auto [r, par] = euf.find(e);
    auto [it, inserted] = eroots.emplace(r, static_cast<int>(eroots.size()));
    if (inserted) {
      d.edgeValid.push_back(!euf.conflicted(r));
      d.edgeStart.push_back(-1);
      d.edgeEnd.push_back(-1);
    }
    d.edgeClass[e] = it->second;
    d.edgeParity[e] = par;
    const auto cls = static_cast<size_t>(it->second);
    if (d.edgeStart[cls] < 0 && ends[e].first >= 0) {
      const int s = d.vertexClass[static_cast<size_t>(ends[e].first)];
      const int t = d.vertexClass[static_cast<size_t>(ends[e].second)];
      d.edgeStart[cls] = par ? t : s;
      d.edgeEnd[cls] = par ? s : t;
    }
  }
  return d;
}

int CellComplex::liveCellCount() const {
  return static_cast<int>(std::count_if(cells_.begin(), cells_.end(), [](const Cell& c) { return c.alive; }));
}

int CellComplex::countKind(CellKind k) const {
  return static_cast<int>(
      std::count_if(cells_.begin(), cells_.end(), [k](const Cell& c) { return c.alive && c.kind == k; }));
}

long CellComplex::terminationMeasure() const {
  long m = 0;
  for (const Cell& c : cells_)
    if (c.alive && c.kind != CellKind::Tetrahedron) ++m;
  for (const CellFace& f : faces_)
    if (f.alive && f.shape() == FaceShape::Bigon) ++m;
  return m;
}

ParityReport CellComplex::parity() const {
  const Derived d = derive();
  ParityReport r;
  std::vector<int> incident(static_cast<size_t>(d.vertexClasses), 0);
  for (size_t e = 0; e < d.edgeValid.size(); ++e) {
    if (d.edgeValid[e]) continue;
    ++r.invalidEdges;
    if (d.edgeStart[e] >= 0) ++incident[static_cast<size_t>(d.edgeStart[e])];
  }
  r.oddVertices = static_cast<int>(std::count_if(incident.begin(), incident.end(), [](int x) { return x % 2 == 1; }));
  return r;
}

std::vector<int> CellComplex::vertexLinkEulerChars() const {
  const Derived d = derive();
  const auto n = static_cast<size_t>(d.vertexClasses);
  std::vector<int> linkVerts(n, 0), linkEdgesTwice(n, 0), linkFaces(n, 0);
  for (size_t e = 0; e < d.edgeValid.size(); ++e) {
    if (d.edgeStart[e] < 0) continue;
    ++linkVerts[static_cast<size_t>(d.edgeStart[e])];
    if (d.edgeValid[e]) ++linkVerts[static_cast<size_t>(d.edgeEnd[e])];
  }
  for (const CellFace& f : faces_) {
    if (!f.alive) continue;
    for (int v : f.corners) linkEdgesTwice[static_cast<size_t>(d.vertexClass[static_cast<size_t>(v)])] += f.glue ? 1 : 2;
  }
  for (size_t v = 0; v < vertexCell_.size(); ++v)
    if (d.vertexClass[v] >= 0) ++linkFaces[static_cast<size_t>(d.vertexClass[v])];
  std::vector<int> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = linkVerts[i] - linkEdgesTwice[i] / 2 + linkFaces[i];
  return out;
}

int CellComplex::componentCount() const {
  detail::UnionFind uf(cells_.size());
  for (const CellFace& f : faces_)
    if (f.alive && f.glue) uf.unite(static_cast<size_t>(f.cell), static_cast<size_t>(faces_[static_cast<size_t>(f.glue->face)].cell));
  int n = 0;
  for (size_t c = 0; c < cells_.size(); ++c)
    if (cells_[c].alive && uf.find(c) == c) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// Atomic moves.

void CellComplex::killFace(int face) {
  CellFace& f = faces_[static_cast<size_t>(face)];
  f.alive = false;
  f.glue.reset();
  auto& list = cells_[static_cast<size_t>(f.cell)].faces;
  list.erase(std::remove(list.begin(), list.end(), face), list.end());
}

void CellComplex::reclassify(int cell) {
  Cell& c = cells_[static_cast<size_t>(cell)];
  int tris = 0, bigons = 0;
  for (int f : c.faces) (faces_[static_cast<size_t>(f)].shape() == FaceShape::Bigon ? bigons : tris)++;
  const auto k = kindFromShapes(tris, bigons);
  if (!k)
    throw InvariantFailure("cell " + std::to_string(cell) + " has " + std::to_string(tris) + " triangles and " +
                           std::to_string(bigons) + " bigons");
  c.kind = *k;
}

MoveOutcome CellComplex::flattenTriangularPillow(int cell) { return flattenPillow(cell, FaceShape::Triangle); }
MoveOutcome CellComplex::flattenBigonalPillow(int cell) { return flattenPillow(cell, FaceShape::Bigon); }

MoveOutcome CellComplex::flattenPillow(int cellId, FaceShape shape) {
  if (cellId < 0 || static_cast<size_t>(cellId) >= cells_.size() || !cells_[static_cast<size_t>(cellId)].alive)
    throw PreconditionError("no live cell " + std::to_string(cellId));
  Cell& P = cells_[static_cast<size_t>(cellId)];
  const CellKind want = shape == FaceShape::Triangle ? CellKind::TriangularPillow : CellKind::BigonalPillow;
  if (P.kind != want) throw PreconditionError("cell " + std::to_string(cellId) + " is a " + toString(P.kind));

  const int f1 = P.faces[0];
  const int f2 = P.faces[1];
  const CellFace& F1 = faces_[static_cast<size_t>(f1)];
  const CellFace& F2 = faces_[static_cast<size_t>(f2)];
  const int k = F1.size();

  // The map F1 -> F2 fixing the pillow's boundary.
  std::optional<Dihedral> delta;
  {
    detail::ParityUnionFind local(edgeCell_.size());
    for (const Merge& m : merges_)
      if (m.cell == cellId) local.unite(static_cast<size_t>(m.a), static_cast<size_t>(m.b), m.rel);
    for (int rot = 0; rot < k && !delta; ++rot)
      for (bool refl : {false, true}) {
        const Dihedral d{rot, refl};
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
          ok = F1.corners[static_cast<size_t>(i)] == F2.corners[static_cast<size_t>(d.corner(i, k))];
          const auto [j, rev] = d.slot(i, k);
          const EdgeSlot& a = F1.slots[static_cast<size_t>(i)];
          const EdgeSlot& b = F2.slots[static_cast<size_t>(j)];
          const auto [ra, pa] = local.find(static_cast<size_t>(a.edge));
          const auto [rb, pb] = local.find(static_cast<size_t>(b.edge));
          ok = ok && ra == rb && ((pa ^ pb) == ((a.forward != b.forward) != rev ? 1 : 0));
        }
        if (ok) {
          delta = d;
          break;
        }
      }
  }
  if (!delta) throw InvariantFailure("pillow " + std::to_string(cellId) + " faces do not share their boundary");

  const auto g1 = F1.glue;
  const auto g2 = F2.glue;
  MoveOutcome outcome;
  if (g1 && g1->face == f2) {
    const Dihedral h = delta->inverse(k).compose(g1->map, k);
    if (!h.refl) {
      outcome = h.rot == 0 ? MoveOutcome::DeletedS3 : (k == 3 ? MoveOutcome::DeletedL31 : MoveOutcome::DeletedRP3);
    } else if (k == 2 && h.rot == 1) {
      outcome = MoveOutcome::DeletedInvalidPair;
    } else {
      throw InvariantFailure("pillow " + std::to_string(cellId) + " folds onto itself with a non-orientable vertex link");
    }
  } else if (g1 && g2) {
    const Dihedral m = g2->map.compose(*delta, k).compose(g1->map.inverse(k), k);
    faces_[static_cast<size_t>(g1->face)].glue = FaceGlue{g2->face, m};
    faces_[static_cast<size_t>(g2->face)].glue = FaceGlue{g1->face, m.inverse(k)};
    outcome = MoveOutcome::Reglued;
  } else if (g1 || g2) {
    faces_[static_cast<size_t>((g1 ? g1 : g2)->face)].glue.reset();
    outcome = MoveOutcome::MadeBoundary;
  } else {
    outcome = MoveOutcome::Deleted3Ball;
  }
  killFace(f1);
  killFace(f2);
  P.alive = false;
  return outcome;
}

void CellComplex::mergeBigonEdges(int face) {
  const CellFace& F = faces_[static_cast<size_t>(face)];
  const EdgeSlot& s0 = F.slots[0];
  const EdgeSlot& s1 = F.slots[1];
  // Slot 0 runs c0 -> c1 and slot 1 runs c1 -> c0.
  merges_.push_back({F.cell, s0.edge, s1.edge, s0.forward == s1.forward ? 1 : 0});
}

MoveOutcome CellComplex::flattenBigon(int face) {
  if (face < 0 || static_cast<size_t>(face) >= faces_.size() || !faces_[static_cast<size_t>(face)].alive)
    throw PreconditionError("no live face " + std::to_string(face));
  if (faces_[static_cast<size_t>(face)].shape() != FaceShape::Bigon)
    throw PreconditionError("face " + std::to_string(face) + " is not a bigon");
  const int x = faces_[static_cast<size_t>(face)].cell;
  const auto g = faces_[static_cast<size_t>(face)].glue;
  MoveOutcome outcome = bigonOutcome(face);
  const int invalidBefore = outcome == MoveOutcome::RemovedRP3 ? parity().invalidEdges : 0;
  mergeBigonEdges(face);
  int y = -1;
  if (g) {
    y = faces_[static_cast<size_t>(g->face)].cell;
    mergeBigonEdges(g->face);
    killFace(g->face);
  }
  killFace(face);
  reclassify(x);
  if (y >= 0 && y != x) reclassify(y);
  if (outcome == MoveOutcome::RemovedRP3 && parity().invalidEdges > invalidBefore)
    outcome = MoveOutcome::CutProjectivePlane;
  return outcome;
}

MoveOutcome CellComplex::bigonOutcome(int face) const {
  const CellFace& F = faces_[static_cast<size_t>(face)];
  const Derived d = derive();
  const auto e0 = static_cast<size_t>(F.slots[0].edge);
  const auto e1 = static_cast<size_t>(F.slots[1].edge);
  const int cls = d.edgeClass[e0];
  if (cls != d.edgeClass[e1]) {
    if (!F.glue) return MoveOutcome::Flattened;
    std::vector<bool> boundary(d.edgeValid.size(), false);
    for (const CellFace& g : faces_)
      if (g.alive && !g.glue)
        for (const EdgeSlot& sl : g.slots) boundary[static_cast<size_t>(d.edgeClass[static_cast<size_t>(sl.edge)])] = true;
    const bool both = boundary[static_cast<size_t>(cls)] && boundary[static_cast<size_t>(d.edgeClass[e1])];
    return both ? MoveOutcome::CutAlongDisc : MoveOutcome::Flattened;
  }
  if (!d.edgeValid[static_cast<size_t>(cls)]) return MoveOutcome::Flattened;
  // Direction of each side, read from corner 0 to corner 1, within the class.
  const int dir0 = (F.slots[0].forward ? 0 : 1) ^ d.edgeParity[e0];
  const int dir1 = (F.slots[1].forward ? 1 : 0) ^ d.edgeParity[e1];
  if (dir0 == dir1) return F.glue ? MoveOutcome::SplitSphere : MoveOutcome::CappedSphere;
  return F.glue ? MoveOutcome::RemovedRP3 : MoveOutcome::Flattened;
}

// ---------------------------------------------------------------------------
// Construction.

class ComplexBuilder {
 public:
  ComplexBuilder(const Triangulation& tri, const StandardCoords& s) : tri_(tri) {
    if (!isAdmissible(tri, s)) throw InadmissibleSurface("surface is not admissible for this triangulation");
    for (int t = 0; t < tri.size(); ++t) counts_.push_back(s.discCounts(t));
  }

  CellComplex build() {
    for (int t = 0; t < tri_.size(); ++t) makeCells(t);
    for (int t = 0; t < tri_.size(); ++t)
      for (int f = 0; f < 4; ++f) makePieces(t, f);
    for (int t = 0; t < tri_.size(); ++t)
      for (int f = 0; f < 4; ++f) gluePieces(t, f);
    for (size_t c = 0; c < out_.cells_.size(); ++c) out_.reclassify(static_cast<int>(c));
    out_.checkInvariants();
    return std::move(out_);
  }

 private:
  using CellKey = std::tuple<int, int, int, std::int64_t>;  // tet, kind, a, b
  using VertexKey = std::tuple<int, int, int, std::int64_t, int>;  // tet, disc kind (-1 = vertex), which, index, side
  using EdgeKey = std::tuple<int, int, std::int64_t>;  // tet, edge, segment from the low end

  enum { kFootball3, kTet, kPurse, kFootball4 };

  int newCell(int t, CellKey key) {
    const int id = static_cast<int>(out_.cells_.size());
    out_.cells_.emplace_back().sourceTet = t;
    cellIds_.emplace(key, id);
    return id;
  }

  void makeCells(int t) {
    const auto& c = counts_[static_cast<size_t>(t)];
    for (int v = 0; v < 4; ++v)
      for (std::int64_t k = 0; k < c.tri[static_cast<size_t>(v)]; ++k) newCell(t, {t, kFootball3, v, k});
    if (c.quads == 0) {
      newCell(t, {t, kTet, 0, 0});
    } else {
      newCell(t, {t, kPurse, 0, 0});
      newCell(t, {t, kPurse, 1, 0});
      for (std::int64_t j = 1; j < c.quads; ++j) newCell(t, {t, kFootball4, 0, j});
    }
  }

  int cell(const CellKey& key) const { return cellIds_.at(key); }

  int vertexAtom(int cell, const VertexKey& key) {
    auto [it, inserted] = vertexIds_.emplace(key, static_cast<int>(out_.vertexCell_.size()));
    if (inserted) out_.vertexCell_.push_back(cell);
    else if (out_.vertexCell_[static_cast<size_t>(it->second)] != cell) throw InvariantFailure("vertex atom shared by two cells");
    return it->second;
  }

  int edgeAtom(int cell, int t, int a, int b, std::int64_t segFromA) {
    const std::int64_t n = edgePointCount(counts_[static_cast<size_t>(t)], a, b);
    const EdgeKey key{t, edgeIndex(a, b), a < b ? segFromA : n - segFromA};
    auto [it, inserted] = edgeIds_.emplace(key, static_cast<int>(out_.edgeCell_.size()));
    if (inserted) out_.edgeCell_.push_back(cell);
    else if (out_.edgeCell_[static_cast<size_t>(it->second)] != cell) throw InvariantFailure("edge atom shared by two cells");
    return it->second;
  }

  // The surface-side vertex beyond the arc at the given depth, or the
  // original vertex if depth is -1.
  VertexKey beyondArc(int t, int v, int f, std::int64_t depth, bool facingCorner) const {
    if (depth < 0) return {t, -1, v, 0, 0};
    const auto& c = counts_[static_cast<size_t>(t)];
    const DiscRef d = discAtArc(c, v, f, depth);
    const int side = sideFacingCorner(c, v, depth);
    return {t, static_cast<int>(d.kind), d.which, d.index, facingCorner ? side : 1 - side};
  }

  int halfOf(int quadType, int v) const { return onZeroSide(quadType, v) ? 0 : 1; }

  int addFace(int cell, std::vector<int> corners, std::vector<EdgeSlot> slots) {
    const int id = static_cast<int>(out_.faces_.size());
    CellFace f;
    f.cell = cell;
    f.corners = std::move(corners);
    f.slots = std::move(slots);
    out_.faces_.push_back(std::move(f));
    out_.cells_[static_cast<size_t>(cell)].faces.push_back(id);
    return id;
  }

  void makePieces(int t, int f) {
    const auto& c = counts_[static_cast<size_t>(t)];
    std::array<int, 3> u{};
    int n = 0;
    for (int w = 0; w < 4; ++w)
      if (w != f) u[static_cast<size_t>(n++)] = w;

    for (int v : u) {
      int x = -1, y = -1;
      for (int w : u)
        if (w != v) (x < 0 ? x : y) = w;
      const std::int64_t arcs = arcCount(c, v, f);
      const std::int64_t tv = c.tri[static_cast<size_t>(v)];
      for (std::int64_t k = 0; k < arcs; ++k) {
        int id;
        if (k < tv) id = cell({t, kFootball3, v, k});
        else if (k == tv) id = cell({t, kPurse, halfOf(c.quadType, v), 0});
        else {
          const std::int64_t m = k - tv;
          id = cell({t, kFootball4, 0, onZeroSide(c.quadType, v) ? m : c.quads - m});
        }
        const int c0 = vertexAtom(id, beyondArc(t, v, f, k - 1, false));
        const int c1 = vertexAtom(id, beyondArc(t, v, f, k, true));
        const int ex = edgeAtom(id, t, v, x, k);
        const int ey = edgeAtom(id, t, v, y, k);
        cornerPiece_[{t, f, v, k}] = addFace(id, {c0, c1}, {{ex, v < x}, {ey, y < v}});
      }
    }

    int id;
    if (c.quads == 0) id = cell({t, kTet, 0, 0});
    else id = cell({t, kPurse, 1 - halfOf(c.quadType, f), 0});
    std::vector<int> corners;
    std::vector<EdgeSlot> slots;
    for (size_t i = 0; i < 3; ++i) {
      const int a = u[i];
      const int b = u[(i + 1) % 3];
      const std::int64_t arcsA = arcCount(c, a, f);
      corners.push_back(vertexAtom(id, beyondArc(t, a, f, arcsA - 1, false)));
      slots.push_back({edgeAtom(id, t, a, b, arcsA), a < b});
      if (c.quads == 0) out_.cells_[static_cast<size_t>(id)].tetVertices[static_cast<size_t>(a)] = corners.back();
    }
    central_[{t, f}] = addFace(id, std::move(corners), std::move(slots));
  }

  void glue(int a, int b, Dihedral m) {
    const int k = out_.faces_[static_cast<size_t>(a)].size();
    out_.faces_[static_cast<size_t>(a)].glue = FaceGlue{b, m};
    out_.faces_[static_cast<size_t>(b)].glue = FaceGlue{a, m.inverse(k)};
  }

  void gluePieces(int t, int f) {
    const auto& g = tri_.gluing(t, f);
    if (!g || std::make_pair(g->tet, g->perm[f]) < std::make_pair(t, f)) return;
    const Perm4& p = g->perm;
    const int t2 = g->tet;
    const int f2 = p[f];
    const auto& c = counts_[static_cast<size_t>(t)];
    std::array<int, 3> u{}, u2{};
    int n = 0;
    for (int w = 0; w < 4; ++w)
      if (w != f) u[static_cast<size_t>(n++)] = w;
    n = 0;
    for (int w = 0; w < 4; ++w)
      if (w != f2) u2[static_cast<size_t>(n++)] = w;

    for (int v : u) {
      int x = -1, y = -1;
      for (int w : u)
        if (w != v) (x < 0 ? x : y) = w;
      for (std::int64_t k = 0; k < arcCount(c, v, f); ++k)
        glue(cornerPiece_.at({t, f, v, k}), cornerPiece_.at({t2, f2, p[v], k}), Dihedral{0, p[x] > p[y]});
    }

    auto pos = [&](int w) { return static_cast<int>(std::find(u2.begin(), u2.end(), w) - u2.begin()); };
    const int r0 = pos(p[u[0]]);
    const int r1 = pos(p[u[1]]);
    glue(central_.at({t, f}), central_.at({t2, f2}), Dihedral{r0, r1 != (r0 + 1) % 3});
  }

  const Triangulation& tri_;
  std::vector<TetDiscCounts> counts_;
  CellComplex out_;
  std::map<CellKey, int> cellIds_;
  std::map<VertexKey, int> vertexIds_;
  std::map<EdgeKey, int> edgeIds_;
  std::map<std::tuple<int, int, int, std::int64_t>, int> cornerPiece_;
  std::map<std::pair<int, int>, int> central_;
};

CellComplex buildCrushedComplex(const Triangulation& tri, const StandardCoords& s) {
  return ComplexBuilder(tri, s).build();
}

// ---------------------------------------------------------------------------

void CellComplex::checkInvariants() const {
  for (size_t i = 0; i < faces_.size(); ++i) {
    const CellFace& f = faces_[i];
    if (!f.alive) continue;
    const Cell& c = cells_[static_cast<size_t>(f.cell)];
    if (!c.alive || std::find(c.faces.begin(), c.faces.end(), static_cast<int>(i)) == c.faces.end())
      throw InvariantFailure("face " + std::to_string(i) + " not owned by its cell");
    if (!f.glue) continue;
    if (f.glue->face == static_cast<int>(i)) throw InvariantFailure("face glued to itself");
    const CellFace& g = faces_[static_cast<size_t>(f.glue->face)];
    if (!g.alive || !g.glue || g.glue->face != static_cast<int>(i) || g.size() != f.size() ||
        !(g.glue->map == f.glue->map.inverse(f.size())))
      throw InvariantFailure("face gluing is not an involution at face " + std::to_string(i));
  }
  for (size_t c = 0; c < cells_.size(); ++c) {
    if (!cells_[c].alive) continue;
    int tris = 0, bigons = 0;
    for (int f : cells_[c].faces) (faces_[static_cast<size_t>(f)].shape() == FaceShape::Bigon ? bigons : tris)++;
    const auto k = kindFromShapes(tris, bigons);
    if (!k || *k != cells_[c].kind) throw InvariantFailure("cell " + std::to_string(c) + " kind does not match its faces");
  }
}

CellComplex CellComplex::compacted() const {
  CellComplex out;
  std::vector<int> cellMap(cells_.size(), -1), faceMap(faces_.size(), -1);
  std::vector<int> vmap(vertexCell_.size(), -1), emap(edgeCell_.size(), -1);
  for (size_t c = 0; c < cells_.size(); ++c)
    if (cells_[c].alive) cellMap[c] = static_cast<int>(out.cells_.size()), out.cells_.push_back(cells_[c]);
  for (size_t f = 0; f < faces_.size(); ++f)
    if (faces_[f].alive) faceMap[f] = static_cast<int>(out.faces_.size()), out.faces_.push_back(faces_[f]);
  for (size_t v = 0; v < vertexCell_.size(); ++v)
    if (cellMap[static_cast<size_t>(vertexCell_[v])] >= 0)
      vmap[v] = static_cast<int>(out.vertexCell_.size()), out.vertexCell_.push_back(cellMap[static_cast<size_t>(vertexCell_[v])]);
  for (size_t e = 0; e < edgeCell_.size(); ++e)
    if (cellMap[static_cast<size_t>(edgeCell_[e])] >= 0)
      emap[e] = static_cast<int>(out.edgeCell_.size()), out.edgeCell_.push_back(cellMap[static_cast<size_t>(edgeCell_[e])]);
  for (Cell& c : out.cells_) {
    for (int& f : c.faces) f = faceMap[static_cast<size_t>(f)];
    for (int& v : c.tetVertices)
      if (v >= 0) v = vmap[static_cast<size_t>(v)];
  }
  for (CellFace& f : out.faces_) {
    f.cell = cellMap[static_cast<size_t>(f.cell)];
    for (int& v : f.corners) v = vmap[static_cast<size_t>(v)];
    for (EdgeSlot& s : f.slots) s.edge = emap[static_cast<size_t>(s.edge)];
    if (f.glue) f.glue->face = faceMap[static_cast<size_t>(f.glue->face)];
  }
  for (const Merge& m : merges_)
    if (cellMap[static_cast<size_t>(m.cell)] >= 0)
      out.merges_.push_back({cellMap[static_cast<size_t>(m.cell)], emap[static_cast<size_t>(m.a)], emap[static_cast<size_t>(m.b)], m.rel});
  return out;
}

Triangulation CellComplex::toTriangulation() const {
  std::vector<int> index(cells_.size(), -1);
  int n = 0;
  for (size_t c = 0; c < cells_.size(); ++c) {
    if (!cells_[c].alive) continue;
    if (cells_[c].kind != CellKind::Tetrahedron)
      throw InvariantFailure(std::string("cannot read off a triangulation with a live ") + toString(cells_[c].kind));
    index[c] = n++;
  }
  auto label = [&](const Cell& c, int atom) {
    for (int l = 0; l < 4; ++l)
      if (c.tetVertices[static_cast<size_t>(l)] == atom) return l;
    throw InvariantFailure("vertex atom is not a tetrahedron corner");
  };
  auto missing = [&](const Cell& c, const CellFace& f) {
    int sum = 6;
    for (int v : f.corners) sum -= label(c, v);
    return sum;
  };

  Triangulation tri(n);
  for (size_t fi = 0; fi < faces_.size(); ++fi) {
    const CellFace& A = faces_[fi];
    if (!A.alive || !A.glue || static_cast<size_t>(A.glue->face) < fi) continue;
    const CellFace& B = faces_[static_cast<size_t>(A.glue->face)];
    const Cell& X = cells_[static_cast<size_t>(A.cell)];
    const Cell& Y = cells_[static_cast<size_t>(B.cell)];
    std::array<int, 4> img{};
    const int fa = missing(X, A);
    img[static_cast<size_t>(fa)] = missing(Y, B);
    for (int i = 0; i < 3; ++i)
      img[static_cast<size_t>(label(X, A.corners[static_cast<size_t>(i)]))] =
          label(Y, B.corners[static_cast<size_t>(A.glue->map.corner(i, 3))]);
    tri.join(index[static_cast<size_t>(A.cell)], fa, index[static_cast<size_t>(B.cell)], Perm4::fromImages(img));
  }
  return tri;
}

std::string CellComplex::dump() const {
  std::ostringstream os;
  for (size_t c = 0; c < cells_.size(); ++c) {
    if (!cells_[c].alive) continue;
    os << "cell " << c << ' ' << toString(cells_[c].kind) << " :";
    for (int f : cells_[c].faces) {
      const CellFace& F = faces_[static_cast<size_t>(f)];
      os << ' ' << f << (F.shape() == FaceShape::Bigon ? 'b' : 't');
      if (F.glue) os << "->" << F.glue->face << (F.glue->map.refl ? 's' : 'r') << F.glue->map.rot;
      else os << "->x";
    }
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

CellComplex flattenTriangularPillow(CellComplex c, int cell) {
  c.flattenTriangularPillow(cell);
  return c;
}

CellComplex flattenBigonalPillow(CellComplex c, int cell) {
  c.flattenBigonalPillow(cell);
  return c;
}

CellComplex flattenBigon(CellComplex c, int face) {
  c.flattenBigon(face);
  return c;
}

CellComplex cleanup(const CellComplex& c) { return c.compacted(); }

ParityReport parityReport(const CellComplex& c) { return c.parity(); }

namespace {

class Flattener {
 public:
  Flattener(CellComplex& c, const FlattenOptions& opts) : c_(c), opts_(opts) {
    if (opts.seed) rng_.emplace(*opts.seed);
  }

  std::vector<MoveRecord> run() {
    for (const Cell& cell : c_.cells())
      if (cell.alive && cell.kind != CellKind::Tetrahedron && cell.kind != CellKind::ThreeSidedFootball &&
          cell.kind != CellKind::FourSidedFootball && cell.kind != CellKind::TriangularPurse)
        throw PreconditionError("sequential flattening starts from a freshly crushed complex");
    measure_ = c_.terminationMeasure();
    parity_ = c_.parity();
    for (;;) {
      while (auto id = pickCell({CellKind::TriangularPillow})) pillow(1, *id, MoveKind::TriangularPillow);
      while (auto id = pickCell({CellKind::BigonalPillow})) pillow(2, *id, MoveKind::BigonalPillow);
      if (auto id = pickCell({CellKind::ThreeSidedFootball})) {
        bigon(3, pickBigon(*id, true));
        continue;
      }
      if (auto id = pickCell({CellKind::FourSidedFootball})) {
        bigon(4, pickBigon(*id, false));
        continue;
      }
      bool any = false;
      while (auto id = pickCell({CellKind::BigonalPyramid, CellKind::TriangularPurse})) {
        bigon(5, pickBigon(*id, false));
        any = true;
      }
      if (!any) break;
    }
    return std::move(trace_);
  }

 private:
  size_t choose(size_t n) {
    if (!rng_) return 0;
    return std::uniform_int_distribution<size_t>(0, n - 1)(*rng_);
  }

  std::optional<int> pickCell(std::initializer_list<CellKind> kinds) {
    std::vector<int> ids;
    for (size_t i = 0; i < c_.cells().size(); ++i) {
      const Cell& cell = c_.cells()[i];
      if (cell.alive && std::find(kinds.begin(), kinds.end(), cell.kind) != kinds.end()) ids.push_back(static_cast<int>(i));
    }
    if (ids.empty()) return std::nullopt;
    return ids[choose(ids.size())];
  }

  int pickBigon(int cell, bool avoidSelfGlued) {
    std::vector<int> ids;
    for (int f : c_.cells()[static_cast<size_t>(cell)].faces) {
      const CellFace& F = c_.faces()[static_cast<size_t>(f)];
      if (F.shape() != FaceShape::Bigon) continue;
      if (avoidSelfGlued && F.glue && c_.faces()[static_cast<size_t>(F.glue->face)].cell == cell) continue;
      ids.push_back(f);
    }
    if (ids.empty()) throw InvariantFailure("no eligible bigon in cell " + std::to_string(cell));
    std::sort(ids.begin(), ids.end());
    return ids[choose(ids.size())];
  }

  void record(int step, MoveKind kind, int target, MoveOutcome outcome) {
    MoveRecord r{step, kind, target, outcome, parity_, c_.parity(), c_.terminationMeasure()};
    if (r.measureAfter >= measure_) throw InvariantFailure("termination measure did not decrease");
    if (opts_.checkInvariants) c_.checkInvariants();
    if (opts_.observer) opts_.observer(c_, r);
    measure_ = r.measureAfter;
    parity_ = r.after;
    trace_.push_back(r);
  }

  void pillow(int step, int cell, MoveKind kind) {
    const MoveOutcome o =
        kind == MoveKind::TriangularPillow ? c_.flattenTriangularPillow(cell) : c_.flattenBigonalPillow(cell);
    record(step, kind, cell, o);
  }

  void bigon(int step, int face) { record(step, MoveKind::Bigon, face, c_.flattenBigon(face)); }

  CellComplex& c_;
  const FlattenOptions& opts_;
  std::optional<std::mt19937_64> rng_;
  std::vector<MoveRecord> trace_;
  long measure_ = 0;
  ParityReport parity_;
};

}  // namespace

FlattenResult runSequentialFlatten(CellComplex c, const FlattenOptions& opts) {
  FlattenResult out;
  out.trace = Flattener(c, opts).run();
  out.final = c.parity();
  out.result = c.toTriangulation();
  out.invalidEdges = Skeleton(out.result).invalidEdges();
  return out;
}

}  // namespace crushkit
