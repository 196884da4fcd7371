#include "crushkit/decomp.hpp"

#include <deque>

#include "crushkit/crush.hpp"
#include "crushkit/errors.hpp"
#include "crushkit/skeleton.hpp"

namespace crushkit {

const char* toString(SummandFlag f) {
  switch (f) {
    case SummandFlag::CertifiedS3Discarded: return "CertifiedS3Discarded";
    case SummandFlag::PossibleS3Unresolved: return "PossibleS3Unresolved";
    case SummandFlag::NontrivialHomology: return "NontrivialHomology";
  }
  return "?";
}

DecompositionResult primeDecompose(const Triangulation& tri, const EnumerationOptions& opts) {
  const Skeleton skel(tri);
  if (!skel.isValid()) throw PreconditionError("decomposition requires a valid triangulation");
  if (classify(skel, tri) != TriangulationClass::Closed) throw PreconditionError("decomposition requires a closed triangulation");
  if (connectedComponents(tri).size() > 1) throw PreconditionError("decomposition requires a connected triangulation");

  DecompositionResult out;
  out.input = h1(tri);

  struct Item {
    int id;
    Triangulation tri;
  };
  std::deque<Item> work;
  if (!tri.empty()) work.push_back({0, tri});
  int nextId = 1;

  while (!work.empty()) {
    Item item = std::move(work.front());
    work.pop_front();
    auto sphere = findNontrivialSphere(item.tri, opts);
    if (!sphere) {
      out.summands.push_back(std::move(item.tri));
      continue;
    }
    CrushOutcome crushed = crushBulk(item.tri, *sphere);
    out.crushLog.push_back({item.id, *sphere, item.tri.size(), crushed.result.size()});
    const Skeleton after(crushed.result);
    const auto bad = after.invalidEdges();
    if (!bad.empty()) {
      out.certificate = InvalidEdgeCertificate{std::move(crushed.result), bad.front(),
                                               static_cast<int>(out.crushLog.size())};
      out.summands.clear();
      return out;
    }
    for (auto& comp : connectedComponents(crushed.result)) work.push_back({nextId++, std::move(comp)});
  }

  int r = 0, t2 = 0, t3 = 0;
  for (const auto& s : out.summands) {
    HomologySummary h = h1(s);
    r += h.r;
    t2 += h.t2;
    t3 += h.t3;
    const int vertices = static_cast<int>(Skeleton(s).vertices().size());
    if (!h.trivial()) out.flags.push_back(SummandFlag::NontrivialHomology);
    else if (vertices > 1) out.flags.push_back(SummandFlag::CertifiedS3Discarded);
    else out.flags.push_back(SummandFlag::PossibleS3Unresolved);
    out.summandHomology.push_back(std::move(h));
  }
  if (out.input.r < r || out.input.t2 < t2 || out.input.t3 < t3)
    throw InvariantFailure("homology grew during decomposition");
  out.restored.rp3 = out.input.t2 - t2;
  out.restored.l31 = out.input.t3 - t3;
  (isOrientable(tri) ? out.restored.s2xs1 : out.restored.s2twisted) = out.input.r - r;
  return out;
}

}  // namespace crushkit
