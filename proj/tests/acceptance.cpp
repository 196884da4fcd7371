// Acceptance checks over the closed census with 1-4 tetrahedra plus the
// derived fixtures.  Prints one PASS/FAIL line per criterion.
//
//   crushkit_acceptance              all criteria
//   crushkit_acceptance --criterion k

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "crushkit/cell_engine.hpp"
#include "crushkit/cone.hpp"
#include "crushkit/crush.hpp"
#include "crushkit/decomp.hpp"
#include "crushkit/isomorphism.hpp"
#include "crushkit/skeleton.hpp"
#include "support/fixtures.hpp"

using namespace crushkit;

namespace {

constexpr int kMaxTets = 4;

struct Check {
  long cases = 0;
  long failures = 0;
  std::string firstFailure;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) firstFailure = what;
  }
};

struct Crush {
  const fixtures::CorpusEntry* entry;
  StandardCoords surface;
};

const std::vector<Crush>& corpusCrushes() {
  static const std::vector<Crush> all = [] {
    std::vector<Crush> v;
    for (const auto& e : fixtures::corpus(kMaxTets))
      for (auto& s : fixtures::sphereSurfaces(e.tri)) v.push_back({&e, std::move(s)});
    return v;
  }();
  return all;
}

const std::map<std::string, DecompositionResult>& decompositions() {
  static const std::map<std::string, DecompositionResult> all = [] {
    std::map<std::string, DecompositionResult> m;
    for (const auto& e : fixtures::corpus(kMaxTets)) m.emplace(e.name, primeDecompose(e.tri));
    m.emplace("rp3#rp3", primeDecompose(fixtures::rp3SumRp3()));
    return m;
  }();
  return all;
}

const Triangulation& decomposedInput(const std::string& name) {
  if (name == "rp3#rp3") return fixtures::rp3SumRp3();
  for (const auto& e : fixtures::corpus(kMaxTets))
    if (e.name == name) return e.tri;
  throw std::runtime_error("unknown input " + name);
}

std::string label(const Crush& c) { return c.entry->name + " surface " + writeSurface(c.surface); }

void oracleEquivalence(Check& ck) {
  for (const Crush& c : corpusCrushes()) {
    const CrushOutcome bulk = crushBulk(c.entry->tri, c.surface);
    FlattenOptions opts;
    opts.checkInvariants = true;
    const FlattenResult seq = runSequentialFlatten(buildCrushedComplex(c.entry->tri, c.surface), opts);
    ck.expect(isIsomorphic(bulk.result, seq.result), label(c));
  }
}

void strictDecrease(Check& ck) {
  for (const Crush& c : corpusCrushes()) {
    if (!c.surface.hasQuads()) continue;
    ck.expect(crushBulk(c.entry->tri, c.surface).result.size() < c.entry->tri.size(), label(c));
  }
  for (const auto& e : fixtures::corpus(kMaxTets)) {
    const int vertices = static_cast<int>(Skeleton(e.tri).vertices().size());
    for (int v = 0; v < vertices; ++v) {
      const StandardCoords link = vertexLink(e.tri, v);
      ck.expect(isIsomorphic(crushBulk(e.tri, link).result, e.tri), e.name + " vertex link " + std::to_string(v));
      ck.expect(isIsomorphic(runSequentialFlatten(buildCrushedComplex(e.tri, link)).result, e.tri),
                e.name + " vertex link (cell engine) " + std::to_string(v));
    }
  }
}

void orderIndependence(Check& ck) {
  std::uint64_t seed = 1;
  for (const Crush& c : corpusCrushes()) {
    const Triangulation reference = runSequentialFlatten(buildCrushedComplex(c.entry->tri, c.surface)).result;
    for (int k = 0; k < 20; ++k) {
      FlattenOptions opts;
      opts.seed = seed++;
      const FlattenResult r = runSequentialFlatten(buildCrushedComplex(c.entry->tri, c.surface), opts);
      ck.expect(isIsomorphic(r.result, reference), label(c) + " seed " + std::to_string(*opts.seed));
    }
  }
}

void homologyConservation(Check& ck) {
  long certificates = 0;
  for (const auto& [name, d] : decompositions()) {
    if (d.certificate) {
      ++certificates;
      continue;
    }
    const Triangulation& input = decomposedInput(name);
    const HomologySummary in = h1(input);
    int r = d.restored.s2xs1 + d.restored.s2twisted, t2 = d.restored.rp3, t3 = d.restored.l31;
    for (const auto& s : d.summands) {
      const HomologySummary h = h1(s);
      r += h.r;
      t2 += h.t2;
      t3 += h.t3;
    }
    ck.expect(in.r == r && in.t2 == t2 && in.t3 == t3, name);
  }
  ck.detail = std::to_string(certificates) + " certificates skipped";
}

void zeroEfficientOutputs(Check& ck) {
  for (const auto& [name, d] : decompositions())
    for (size_t i = 0; i < d.summands.size(); ++i)
      ck.expect(isZeroEfficient(d.summands[i]), name + " summand " + std::to_string(i));
}

void terminationBound(Check& ck) {
  for (const auto& [name, d] : decompositions())
    ck.expect(static_cast<int>(d.crushLog.size()) <= decomposedInput(name).size(), name);
}

// Walks a trace: once an odd vertex appears, odd vertices persist; the
// result has invalid edges exactly when some move created a pair.
bool parityTraceHolds(const FlattenResult& r, bool& created) {
  bool odd = false;
  created = false;
  for (const MoveRecord& m : r.trace) {
    if (m.createdInvalidPair()) created = true;
    if (odd && m.after.oddVertices == 0) return false;
    odd = odd || m.after.oddVertices > 0;
  }
  return created == !r.invalidEdges.empty() && (!created || r.final.oddVertices > 0);
}

void parityInvariant(Check& ck) {
  std::vector<const Crush*> creating;
  for (const Crush& c : corpusCrushes()) {
    const FlattenResult r = runSequentialFlatten(buildCrushedComplex(c.entry->tri, c.surface));
    bool created = false;
    ck.expect(parityTraceHolds(r, created), label(c));
    if (created) creating.push_back(&c);
  }
  // The pool must actually contain invalid-edge creations to say anything.
  ck.expect(!creating.empty(), "no crush in the corpus creates invalid edges");
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 100 && !creating.empty(); ++k) {
    const Crush& c = *creating[k % creating.size()];
    FlattenOptions opts;
    opts.seed = rng();
    const FlattenResult r = runSequentialFlatten(buildCrushedComplex(c.entry->tri, c.surface), opts);
    bool created = false;
    ck.expect(parityTraceHolds(r, created) && created, label(c) + " seed " + std::to_string(*opts.seed));
  }
  ck.detail = std::to_string(creating.size()) + " creating crushes";
}

// Re-verifies from the written file, not from the in-memory skeleton.
void verifyCertificate(Check& ck, const DecompositionResult& d, const std::string& name) {
  const Triangulation reread = parseTriangulation(writeTriangulation(d.certificate->triangulation));
  const Skeleton s(reread);
  const auto edge = static_cast<size_t>(d.certificate->edge);
  ck.expect(edge < s.edges().size() && !s.edges()[edge].valid, name + ": certificate edge is valid");
  ck.expect(d.certificate->step >= 1 && d.certificate->step <= static_cast<int>(d.crushLog.size()),
            name + ": step out of range");
}

void certificateSoundness(Check& ck) {
  const DecompositionResult d = primeDecompose(fixtures::rp2xs1());
  if (d.certificate) {
    verifyCertificate(ck, d, "rp2xs1");
    ck.detail = "rp2xs1 exit 1, edge " + std::to_string(d.certificate->edge) + " step " +
                std::to_string(d.certificate->step);
  } else {
    ck.expect(!d.summands.empty(), "rp2xs1: decomposition without summands");
    ck.detail = "rp2xs1 exit 0";
  }
  // Every certificate the corpus produces must hold up the same way.
  long corpusCertificates = 0;
  for (const auto& [name, other] : decompositions())
    if (other.certificate) {
      verifyCertificate(ck, other, name);
      ++corpusCertificates;
    }
  ck.detail += ", " + std::to_string(corpusCertificates) + " corpus certificates re-verified";
}

void enumerationCorrectness(Check& ck) {
  for (const auto& e : fixtures::corpus(3)) {
    const IntMatrix q = quadMatchingEquations(e.tri);
    const size_t dim = static_cast<size_t>(3 * e.tri.size());
    const auto brute = fixtures::bruteForceRays(q, dim);
    ck.expect(extremeRays(q, dim) == brute, e.name + " cone");
    std::vector<QuadCoords> admissible;
    for (const auto& r : brute)
      if (satisfiesQuadConstraint(r, 3, 0)) {
        QuadCoords c(e.tri.size());
        c.coords = r;
        admissible.push_back(c);
      }
    ck.expect(enumerateQuadVertexSurfaces(e.tri) == admissible, e.name + " vertex surfaces");
  }
  std::mt19937_64 rng(99);
  for (int k = 0; k < 1000; ++k) {
    const size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntMatrix m(rows, IntVector(cols));
    for (auto& row : m)
      for (auto& x : row) x = static_cast<long>(rng() % 13) - 6;
    ck.expect(smithNormalForm(m, cols).diagonal == fixtures::determinantalFactors(m, cols), "matrix " + std::to_string(k));
  }
}

void lint(Check& ck) {
  // Fewest tetrahedra within each (orientability, H1) class.
  std::map<std::string, int> fewest;
  auto key = [](const Triangulation& t) { return std::string(isOrientable(t) ? "o " : "n ") + h1(t).str(); };
  for (const auto& e : fixtures::corpus(kMaxTets)) {
    auto [it, inserted] = fewest.emplace(key(e.tri), e.tri.size());
    if (!inserted) it->second = std::min(it->second, e.tri.size());
  }
  long candidates = 0;
  for (const auto& e : fixtures::corpus(kMaxTets)) {
    if (fewest.at(key(e.tri)) != e.tri.size()) continue;
    const HomologySummary h = h1(e.tri);
    if (h.trivial() || (h.r == 0 && h.factors.size() == 1 && (h.factors[0] == 2 || h.factors[0] == 3))) continue;
    if (!isZeroEfficient(e.tri)) continue;
    bool twoSidedRp2 = false;
    for (const auto& q : enumerateQuadVertexSurfaces(e.tri))
      twoSidedRp2 = twoSidedRp2 || fixtures::isRp2TwoSided(recognizeSurface(e.tri, quadToStandard(e.tri, q)));
    if (twoSidedRp2) continue;
    ++candidates;
    const MinimalityLint l = lintMinimal(e.tri);
    ck.expect(l.vertexCount == 1, e.name + " has " + std::to_string(l.vertexCount) + " vertices");
    ck.expect(l.degreeOneEdges.empty(), e.name + " has a degree-one edge");
    ck.expect(l.coneFaces.empty(), e.name + " has a cone face");
  }
  ck.expect(candidates > 0, "no candidates");
  ck.detail = std::to_string(candidates) + " candidates";
}

struct Criterion {
  const char* name;
  std::function<void(Check&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"oracle equivalence", oracleEquivalence},
      {"strict decrease", strictDecrease},
      {"order independence", orderIndependence},
      {"homology conservation", homologyConservation},
      {"0-efficient outputs", zeroEfficientOutputs},
      {"termination bound", terminationBound},
      {"parity invariant", parityInvariant},
      {"certificate soundness", certificateSoundness},
      {"enumeration correctness", enumerationCorrectness},
      {"minimality lint", lint},
  };
  return all;
}

bool runOne(int k) {
  const Criterion& c = criteria()[static_cast<size_t>(k - 1)];
  Check ck;
  std::string error;
  try {
    c.run(ck);
  } catch (const std::exception& e) {
    error = e.what();
  }
  const bool pass = error.empty() && ck.failures == 0 && ck.cases > 0;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << " criterion " << k << " (" << c.name << "): " << ck.cases - ck.failures << "/"
       << ck.cases << " cases";
  if (!ck.detail.empty()) line << ", " << ck.detail;
  if (!error.empty()) line << ", exception: " << error;
  if (ck.failures > 0) line << ", first failure: " << ck.firstFailure;
  std::cout << line.str() << std::endl;
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  const int count = static_cast<int>(criteria().size());
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const int k = std::atoi(argv[2]);
    if (k < 1 || k > count) {
      std::cerr << "criterion must be 1.." << count << "\n";
      return 2;
    }
    return runOne(k) ? 0 : 1;
  }
  if (argc != 1) {
    std::cerr << "usage: " << argv[0] << " [--criterion k]\n";
    return 2;
  }
  bool all = true;
  for (int k = 1; k <= count; ++k) all = runOne(k) && all;
  return all ? 0 : 1;
}
