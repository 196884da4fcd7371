#pragma once

#include <optional>
#include <vector>

#include "crushkit/homology.hpp"
#include "crushkit/normal.hpp"
#include "crushkit/triangulation.hpp"

namespace crushkit {

enum class SummandFlag {
  CertifiedS3Discarded,  // trivial H1 and more than one vertex
  PossibleS3Unresolved,  // trivial H1 and a single vertex
  NontrivialHomology,
};

const char* toString(SummandFlag f);

struct RestoredCounts {
  int rp3 = 0;
  int l31 = 0;
  int s2xs1 = 0;
  int s2twisted = 0;

  bool operator==(const RestoredCounts&) const = default;
};

/// A crush that produced an edge identified with itself in reverse.
struct InvalidEdgeCertificate {
  Triangulation triangulation;  // the crushed triangulation
  int edge = -1;                // invalid edge class in `triangulation`
  int step = 0;                 // 1-based crush index
};

struct CrushLogEntry {
  int component = 0;  // worklist id; the input is 0
  StandardCoords sphere;
  int tetsBefore = 0;
  int tetsAfter = 0;
};

struct DecompositionResult {
  HomologySummary input;
  std::vector<Triangulation> summands;
  std::vector<HomologySummary> summandHomology;
  std::vector<SummandFlag> flags;
  RestoredCounts restored;
  std::optional<InvalidEdgeCertificate> certificate;
  std::vector<CrushLogEntry> crushLog;
};

/// Repeatedly crushes non-trivial normal spheres (FIFO worklist, first sphere
/// in lexicographic order) until every piece is 0-efficient, then restores
/// the summands lost along the way from the change in homology.
///
/// Requires a valid, closed, connected triangulation.
DecompositionResult primeDecompose(const Triangulation& tri, const EnumerationOptions& opts = {});

}  // namespace crushkit
