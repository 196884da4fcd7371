#include "crushkit/perm4.hpp"

#include <algorithm>
#include <stdexcept>

namespace crushkit {

Perm4 Perm4::fromImages(const std::array<int, 4>& images) {
  std::array<bool, 4> seen{};
  for (int v : images) {
    if (v < 0 || v > 3 || seen[static_cast<size_t>(v)])
      throw std::invalid_argument("not a permutation of {0,1,2,3}");
    seen[static_cast<size_t>(v)] = true;
  }
  return Perm4(images[0], images[1], images[2], images[3]);
}

Perm4 Perm4::fromString(std::string_view s) {
  if (s.size() != 4) throw std::invalid_argument("permutation must have 4 characters");
  std::array<int, 4> images{};
  for (size_t i = 0; i < 4; ++i) {
    if (s[i] < '0' || s[i] > '3') throw std::invalid_argument("permutation digit out of range");
    images[i] = s[i] - '0';
  }
  return fromImages(images);
}

const std::array<Perm4, 24>& Perm4::all() {
  static const std::array<Perm4, 24> table = [] {
    std::array<Perm4, 24> out;
    std::array<int, 4> v{0, 1, 2, 3};
    size_t k = 0;
    do {
      out[k++] = Perm4(v[0], v[1], v[2], v[3]);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
  }();
  return table;
}

int Perm4::index() const {
  const auto& table = all();
  return static_cast<int>(std::lower_bound(table.begin(), table.end(), *this) - table.begin());
}

std::string Perm4::str() const {
  std::string s(4, '0');
  for (int i = 0; i < 4; ++i) s[static_cast<size_t>(i)] = static_cast<char>('0' + images_[i]);
  return s;
}

}  // namespace crushkit
