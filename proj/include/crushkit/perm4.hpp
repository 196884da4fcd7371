#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace crushkit {

/// A permutation of the tetrahedron vertex labels {0,1,2,3}.
///
/// `p[i]` is the image of vertex i.  Composition follows function notation:
/// `(p * q)[i] == p[q[i]]`.
class Perm4 {
 public:
  constexpr Perm4() : images_{0, 1, 2, 3} {}
  constexpr Perm4(int a, int b, int c, int d)
      : images_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)} {}

  /// Builds from images; throws std::invalid_argument if not a bijection.
  static Perm4 fromImages(const std::array<int, 4>& images);

  /// Parses a 4-character string such as "1032".
  static Perm4 fromString(std::string_view s);

  /// The transposition swapping a and b.
  static constexpr Perm4 transposition(int a, int b) {
    Perm4 p;
    p.images_[a] = static_cast<std::uint8_t>(b);
    p.images_[b] = static_cast<std::uint8_t>(a);
    return p;
  }

  /// All 24 permutations in lexicographic order of their image strings.
  static const std::array<Perm4, 24>& all();

  constexpr int operator[](int i) const { return images_[i]; }

  constexpr Perm4 operator*(const Perm4& rhs) const {
    Perm4 out;
    for (int i = 0; i < 4; ++i) out.images_[i] = images_[rhs.images_[i]];
    return out;
  }

  constexpr Perm4 inverse() const {
    Perm4 out;
    for (int i = 0; i < 4; ++i) out.images_[images_[i]] = static_cast<std::uint8_t>(i);
    return out;
  }

  /// +1 for even permutations, -1 for odd.
  constexpr int sign() const {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (images_[i] > images_[j]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
  }

  constexpr bool isIdentity() const { return *this == Perm4(); }

  /// Index 0..23 of this permutation within all().
  int index() const;

  std::string str() const;

  constexpr bool operator==(const Perm4&) const = default;
  constexpr auto operator<=>(const Perm4&) const = default;

 private:
  std::array<std::uint8_t, 4> images_;
};

}  // namespace crushkit
