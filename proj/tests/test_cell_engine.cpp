#include <gtest/gtest.h>

#include <algorithm>

#include "crushkit/cell_engine.hpp"
#include "crushkit/crush.hpp"
#include "crushkit/errors.hpp"
#include "crushkit/isomorphism.hpp"
#include "crushkit/skeleton.hpp"
#include "support/fixtures.hpp"

using namespace crushkit;

namespace {

int count(const std::vector<MoveRecord>& trace, MoveOutcome o) {
  return static_cast<int>(std::count_if(trace.begin(), trace.end(), [o](const MoveRecord& r) { return r.outcome == o; }));
}

}  // namespace

TEST(Dihedral, GroupLaws) {
  for (int k : {2, 3}) {
    std::vector<Dihedral> all;
    for (int r = 0; r < k; ++r)
      for (bool refl : {false, true}) all.push_back({r, refl});
    for (const auto& a : all) {
      EXPECT_EQ(a.compose(a.inverse(k), k), Dihedral{});
      for (const auto& b : all)
        for (int i = 0; i < k; ++i) {
          EXPECT_EQ(a.compose(b, k).corner(i, k), a.corner(b.corner(i, k), k));
          for (const auto& c : all) EXPECT_EQ(a.compose(b, k).compose(c, k), a.compose(b.compose(c, k), k));
        }
      // Slot i joins corners i and i+1; its image joins their images.
      for (int i = 0; i < k; ++i) {
        const auto [j, rev] = a.slot(i, k);
        const int from = a.corner(i, k), to = a.corner((i + 1) % k, k);
        EXPECT_EQ(rev ? to : from, j);
        EXPECT_EQ(rev ? from : to, (j + 1) % k);
      }
    }
  }
}

TEST(CrushedComplex, Inventory) {
  const Triangulation& rp3 = fixtures::rp3();
  const CellComplex zero = buildCrushedComplex(rp3, StandardCoords(rp3.size()));
  EXPECT_EQ(zero.liveCellCount(), rp3.size());
  EXPECT_EQ(zero.countKind(CellKind::Tetrahedron), rp3.size());
  EXPECT_EQ(zero.terminationMeasure(), 0);

  StandardCoords quad(1);
  quad.quad(0, 0) = 1;
  const CellComplex purses = buildCrushedComplex(Triangulation(1), quad);
  EXPECT_EQ(purses.liveCellCount(), 2);
  EXPECT_EQ(purses.countKind(CellKind::TriangularPurse), 2);

  StandardCoords corner(1);
  corner.tri(0, 0) = 1;
  const CellComplex cut = buildCrushedComplex(Triangulation(1), corner);
  EXPECT_EQ(cut.countKind(CellKind::ThreeSidedFootball), 1);
  EXPECT_EQ(cut.countKind(CellKind::Tetrahedron), 1);

  StandardCoords stacked(1);
  stacked.quad(0, 2) = 3;
  const CellComplex layers = buildCrushedComplex(Triangulation(1), stacked);
  EXPECT_EQ(layers.countKind(CellKind::TriangularPurse), 2);
  EXPECT_EQ(layers.countKind(CellKind::FourSidedFootball), 2);

  StandardCoords bad(1);
  bad.quad(0, 0) = 1;
  bad.quad(0, 1) = 1;
  EXPECT_THROW(buildCrushedComplex(Triangulation(1), bad), InadmissibleSurface);
}

TEST(CrushedComplex, InventoryMatchesDiscCounts) {
  for (const auto& e : fixtures::corpus(3)) {
    for (const auto& s : fixtures::sphereSurfaces(e.tri)) {
      const CellComplex c = buildCrushedComplex(e.tri, s);
      c.checkInvariants();
      int tets = 0, purses = 0, f3 = 0, f4 = 0;
      for (int t = 0; t < e.tri.size(); ++t) {
        const auto d = s.discCounts(t);
        for (const auto& x : d.tri) f3 += static_cast<int>(x);
        if (d.quads == 0) ++tets;
        else purses += 2, f4 += static_cast<int>(d.quads) - 1;
      }
      EXPECT_EQ(c.countKind(CellKind::Tetrahedron), tets) << e.name;
      EXPECT_EQ(c.countKind(CellKind::TriangularPurse), purses) << e.name;
      EXPECT_EQ(c.countKind(CellKind::ThreeSidedFootball), f3) << e.name;
      EXPECT_EQ(c.countKind(CellKind::FourSidedFootball), f4) << e.name;
      EXPECT_EQ(c.parity(), ParityReport{}) << e.name;
    }
  }
}

TEST(Moves, Preconditions) {
  StandardCoords corner(1);
  corner.tri(0, 0) = 1;
  CellComplex c = buildCrushedComplex(Triangulation(1), corner);
  int tet = -1, triangle = -1;
  for (size_t i = 0; i < c.cells().size(); ++i)
    if (c.cells()[i].kind == CellKind::Tetrahedron) tet = static_cast<int>(i);
  for (size_t i = 0; i < c.faces().size(); ++i)
    if (c.faces()[i].shape() == FaceShape::Triangle) triangle = static_cast<int>(i);
  EXPECT_THROW(c.flattenTriangularPillow(tet), PreconditionError);
  EXPECT_THROW(c.flattenBigonalPillow(tet), PreconditionError);
  EXPECT_THROW(c.flattenBigon(triangle), PreconditionError);
  EXPECT_THROW(c.flattenBigon(-1), PreconditionError);
  EXPECT_THROW(c.flattenTriangularPillow(99), PreconditionError);
}

TEST(Moves, BoundaryQuadCollapsesToNothing) {
  StandardCoords quad(1);
  quad.quad(0, 0) = 1;
  const FlattenResult r = runSequentialFlatten(buildCrushedComplex(Triangulation(1), quad));
  EXPECT_EQ(r.result.size(), 0);
  EXPECT_FALSE(r.trace.empty());
  EXPECT_EQ(r.final, ParityReport{});
  // Each purse ends as a pillow with both faces on the boundary.
  EXPECT_GE(count(r.trace, MoveOutcome::Deleted3Ball), 1);
}

TEST(Moves, FourSidedFootballBigonLeavesFootballOrPillow) {
  int seen = 0;
  for (const auto& e : fixtures::corpus(3)) {
    for (const auto& s : fixtures::sphereSurfaces(e.tri)) {
      FlattenOptions opts;
      opts.observer = [&](const CellComplex& c, const MoveRecord& r) {
        if (r.step != 4) return;
        const int cell = c.faces()[static_cast<size_t>(r.target)].cell;
        const CellKind k = c.cells()[static_cast<size_t>(cell)].kind;
        EXPECT_TRUE(k == CellKind::ThreeSidedFootball || k == CellKind::BigonalPillow) << toString(k);
        ++seen;
      };
      runSequentialFlatten(buildCrushedComplex(e.tri, s), opts);
    }
  }
  EXPECT_GT(seen, 0);
}

TEST(Moves, MeasureDecreasesAndLinksStaySpheres) {
  for (const auto& e : fixtures::corpus(3)) {
    for (const auto& s : fixtures::sphereSurfaces(e.tri)) {
      const CellComplex start = buildCrushedComplex(e.tri, s);
      long last = start.terminationMeasure();
      FlattenOptions opts;
      opts.checkInvariants = true;
      opts.observer = [&](const CellComplex& c, const MoveRecord& r) {
        EXPECT_LT(r.measureAfter, last);
        EXPECT_EQ(r.measureAfter, c.terminationMeasure());
        last = r.measureAfter;
        if (r.after.invalidEdges == 0)
          for (int chi : c.vertexLinkEulerChars()) EXPECT_EQ(chi, 2) << e.name;
      };
      const FlattenResult out = runSequentialFlatten(start, opts);
      EXPECT_EQ(out.result.size(), e.tri.size() - crushBulk(e.tri, s).destroyedTets) << e.name;
    }
  }
}

TEST(Moves, AgreesWithBulkCrush) {
  for (const auto& e : fixtures::corpus(3)) {
    for (const auto& s : fixtures::sphereSurfaces(e.tri)) {
      const FlattenResult seq = runSequentialFlatten(buildCrushedComplex(e.tri, s));
      const CrushOutcome bulk = crushBulk(e.tri, s);
      EXPECT_TRUE(isIsomorphic(seq.result, bulk.result)) << e.name;
      EXPECT_EQ(seq.invalidEdges, Skeleton(bulk.result).invalidEdges()) << e.name;
      FlattenOptions seeded;
      seeded.seed = 42;
      EXPECT_TRUE(isIsomorphic(runSequentialFlatten(buildCrushedComplex(e.tri, s), seeded).result, bulk.result));
    }
  }
}

TEST(Moves, LostSummandsMatchHomology) {
  int removed = 0;
  for (const auto& e : fixtures::corpus(3)) {
    for (const auto& s : fixtures::sphereSurfaces(e.tri)) {
      const FlattenResult r = runSequentialFlatten(buildCrushedComplex(e.tri, s));
      if (!r.invalidEdges.empty()) continue;
      const HomologySummary before = h1(e.tri), after = h1(r.result);
      EXPECT_EQ(before.t2 - after.t2,
                count(r.trace, MoveOutcome::DeletedRP3) + count(r.trace, MoveOutcome::RemovedRP3))
          << e.name;
      EXPECT_EQ(before.t3 - after.t3, count(r.trace, MoveOutcome::DeletedL31)) << e.name;
      removed += count(r.trace, MoveOutcome::RemovedRP3);
    }
  }
  // Doubled one-sided projective planes lose their summand through a bigon.
  EXPECT_GT(removed, 0);
}

TEST(Parity, InvalidEdgesComeFromCreatingBigons) {
  int creating = 0;
  for (const auto& e : fixtures::corpus(3)) {
    for (const auto& s : fixtures::sphereSurfaces(e.tri)) {
      const FlattenResult r = runSequentialFlatten(buildCrushedComplex(e.tri, s));
      int invalid = 0;
      for (const MoveRecord& m : r.trace) {
        EXPECT_GE(m.after.invalidEdges, m.before.invalidEdges);
        EXPECT_EQ(m.after.oddVertices, 0);
        if (m.createdInvalidPair()) ++creating;
        invalid = m.after.invalidEdges;
      }
      EXPECT_EQ(invalid, r.final.invalidEdges);
      const bool created = std::any_of(r.trace.begin(), r.trace.end(), [](const MoveRecord& m) {
        return m.createdInvalidPair() || m.outcome == MoveOutcome::DeletedInvalidPair;
      });
      EXPECT_EQ(!r.invalidEdges.empty(), created && r.final.invalidEdges > 0) << e.name;
    }
  }
  SUCCEED() << creating << " creating moves";
}

TEST(Cleanup, CompactionKeepsTheComplex) {
  const Triangulation& t = fixtures::rp3SumRp3();
  const auto sphere = findNontrivialSphere(t);
  ASSERT_TRUE(sphere.has_value());
  CellComplex c = buildCrushedComplex(t, *sphere);
  FlattenOptions opts;
  opts.observer = [&](const CellComplex& now, const MoveRecord&) {
    const CellComplex small = cleanup(now);
    small.checkInvariants();
    EXPECT_EQ(small.liveCellCount(), now.liveCellCount());
    EXPECT_EQ(static_cast<int>(small.cells().size()), now.liveCellCount());
    EXPECT_EQ(small.parity(), parityReport(now));
    EXPECT_EQ(small.terminationMeasure(), now.terminationMeasure());
    EXPECT_EQ(small.componentCount(), now.componentCount());
  };
  const FlattenResult r = runSequentialFlatten(c, opts);
  EXPECT_TRUE(r.invalidEdges.empty());
  EXPECT_EQ(h1(r.result).t2 + count(r.trace, MoveOutcome::DeletedRP3) + count(r.trace, MoveOutcome::RemovedRP3), 2);
  const std::string dump = c.dump();
  EXPECT_EQ(std::count(dump.begin(), dump.end(), '\n'), c.liveCellCount());
}
