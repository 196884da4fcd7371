#include <gtest/gtest.h>

#include <random>

#include "crushkit/errors.hpp"
#include "crushkit/homology.hpp"
#include "crushkit/isomorphism.hpp"
#include "support/fixtures.hpp"

using namespace crushkit;

namespace {

IntMatrix randomMatrix(std::mt19937_64& rng, size_t rows, size_t cols, int bound) {
  IntMatrix m(rows, IntVector(cols));
  for (auto& row : m)
    for (auto& x : row) x = static_cast<long>(rng() % static_cast<unsigned>(2 * bound + 1)) - bound;
  return m;
}

}  // namespace

TEST(Smith, ZeroMatrix) {
  const SmithForm s = smithNormalForm(IntMatrix(3, IntVector(4, 0)));
  EXPECT_TRUE(s.diagonal.empty());
  EXPECT_TRUE(s.invariantFactors().empty());
}

TEST(Smith, DiagonalChainNormalisation) {
  const SmithForm s = smithNormalForm(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(s.diagonal, (std::vector<BigInt>{1, 6}));
  EXPECT_EQ(s.invariantFactors(), std::vector<BigInt>{6});
  EXPECT_EQ(fixtures::determinantalFactors(IntMatrix{{2, 0}, {0, 3}}, 2), (std::vector<BigInt>{1, 6}));
}

TEST(Smith, TransformsAreUnimodularAndExact) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    const IntMatrix m = randomMatrix(rng, r, c, 9);
    const SmithForm s = smithNormalForm(m, c, true);
    ASSERT_TRUE(s.U && s.V && s.S);
    EXPECT_EQ(abs(determinant(*s.U)), 1);
    EXPECT_EQ(abs(determinant(*s.V)), 1);
    EXPECT_EQ(multiply(multiply(*s.U, m), *s.V), *s.S);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j)
        if (i != j) EXPECT_EQ((*s.S)[i][j], 0);
    for (size_t i = 1; i < s.diagonal.size(); ++i) EXPECT_EQ(s.diagonal[i] % s.diagonal[i - 1], 0);
  }
}

TEST(Smith, MatchesDeterminantalDivisors) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const IntMatrix m = randomMatrix(rng, 4, 5, 9);
    EXPECT_EQ(smithNormalForm(m).diagonal, fixtures::determinantalFactors(m, 5));
  }
}

TEST(H1, NamedManifolds) {
  EXPECT_TRUE(h1(fixtures::s3OneTet(0)).trivial());
  EXPECT_TRUE(h1(fixtures::s3OneTet(1)).trivial());
  const HomologySummary rp3 = h1(fixtures::rp3());
  EXPECT_EQ(rp3.r, 0);
  EXPECT_EQ(rp3.t2, 1);
  EXPECT_EQ(rp3.t3, 0);
  const HomologySummary l31 = h1(fixtures::l31());
  EXPECT_EQ(l31.r, 0);
  EXPECT_EQ(l31.t2, 0);
  EXPECT_EQ(l31.t3, 1);
  const HomologySummary rp2s1 = h1(fixtures::rp2xs1());
  EXPECT_EQ(rp2s1.r, 1);
  EXPECT_EQ(rp2s1.factors, std::vector<BigInt>{2});
  EXPECT_EQ(h1(fixtures::rp3SumRp3()).factors, (std::vector<BigInt>{2, 2}));
  EXPECT_EQ(h1(fixtures::rp3()).str(), "r=0 factors=2");
  EXPECT_THROW(h1(parseTriangulation("tets 1\n0: 0:1032 0:1032 0:0132 0:0132\n")), PreconditionError);
}

TEST(H1, DisjointUnionAdds) {
  std::mt19937_64 rng(3);
  const auto& corpus = fixtures::corpus(3);
  for (int k = 0; k < 50; ++k) {
    const auto& a = corpus[rng() % corpus.size()].tri;
    const auto& b = corpus[rng() % corpus.size()].tri;
    Triangulation u = a;
    u.append(b);
    const HomologySummary ha = h1(a), hb = h1(b), hu = h1(u);
    EXPECT_EQ(hu.r, ha.r + hb.r);
    EXPECT_EQ(hu.t2, ha.t2 + hb.t2);
    EXPECT_EQ(hu.t3, ha.t3 + hb.t3);
  }
}

TEST(H1, IsomorphismInvariant) {
  std::mt19937_64 rng(9);
  for (const auto& e : fixtures::corpus(3)) {
    Isomorphism iso;
    for (int t = 0; t < e.tri.size(); ++t) iso.tetImage.push_back(t);
    std::shuffle(iso.tetImage.begin(), iso.tetImage.end(), rng);
    for (int t = 0; t < e.tri.size(); ++t) iso.vertexMap.push_back(Perm4::all()[rng() % 24]);
    EXPECT_EQ(h1(iso.apply(e.tri)), h1(e.tri)) << e.name;
  }
}

TEST(H1, TwoTorsionMatchesMod2Betti) {
  for (const auto& e : fixtures::corpus(4)) {
    if (!isOrientable(e.tri)) continue;
    const HomologySummary h = h1(e.tri);
    EXPECT_EQ(h.t2, fixtures::betti1Mod2(e.tri) - h.r) << e.name;
  }
}

TEST(H1, PresentationBoundaryComposesToZero) {
  for (const auto& e : fixtures::corpus(3)) {
    const IntMatrix d2 = boundaryMatrix2(e.tri), d1 = boundaryMatrix1(e.tri);
    const IntMatrix prod = multiply(d2, d1);
    for (const auto& row : prod)
      for (const auto& x : row) EXPECT_EQ(x, 0) << e.name;
  }
}
