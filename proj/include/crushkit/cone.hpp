#pragma once

#include <boost/dynamic_bitset.hpp>

#include <functional>

#include "crushkit/bigint.hpp"

namespace crushkit {

using Support = boost::dynamic_bitset<>;

/// Predicate on the support of a candidate ray.  It must be monotone: if it
/// rejects a support it rejects every superset.
using SupportFilter = std::function<bool(const Support&)>;

/// Extreme rays of {x >= 0 : A x = 0} accepted by `filter`, as primitive
/// integer vectors sorted lexicographically.  Uses the double description
/// method, discarding rejected supports as soon as they appear.  `jobs > 1`
/// splits the pairing step across threads; the output does not depend on it.
std::vector<IntVector> extremeRays(const IntMatrix& equations, size_t dim, const SupportFilter& filter = {},
                                   int jobs = 1);

}  // namespace crushkit
