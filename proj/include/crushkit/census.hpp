#pragma once

#include <functional>
#include <string>
#include <vector>

#include "crushkit/triangulation.hpp"

namespace crushkit {

/// Canonical relabelling of a connected triangulation: the lexicographically
/// smallest gluing table over all choices of starting tetrahedron and vertex
/// labelling, with tetrahedra numbered in breadth-first order.  Two connected
/// triangulations are isomorphic iff their canonical forms are equal.
Triangulation canonicalForm(const Triangulation& tri);

/// All connected, closed, valid triangulations with exactly `tets`
/// tetrahedra, one per isomorphism class, in canonical form and sorted by
/// their TRI1 text.
std::vector<Triangulation> closedCensus(int tets);

}  // namespace crushkit
