#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace crushkit {

using BigInt = mpz_class;
using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;

inline std::string toString(const BigInt& x) { return x.get_str(); }

/// Divides the vector by the gcd of its entries (no-op for the zero vector).
inline void makePrimitive(IntVector& v) {
  BigInt g = 0;
  for (const auto& x : v) {
    if (x != 0) g = gcd(g, x);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : v) x /= g;
}

}  // namespace crushkit
