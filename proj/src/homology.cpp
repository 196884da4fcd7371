#include "crushkit/homology.hpp"

#include <algorithm>
#include <sstream>

#include "crushkit/errors.hpp"
#include "crushkit/skeleton.hpp"

namespace crushkit {

std::vector<BigInt> SmithForm::invariantFactors() const {
  std::vector<BigInt> out;
  for (const auto& d : diagonal)
    if (d > 1) out.push_back(d);
  return out;
}

namespace {

IntMatrix identity(size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

class Reducer {
 public:
  Reducer(const IntMatrix& m, size_t cols, bool track)
      : a_(m), rows_(m.size()), cols_(cols), track_(track) {
    if (track_) {
      u_ = identity(rows_);
      v_ = identity(cols_);
    }
  }

  void run() {
    for (size_t t = 0; t < std::min(rows_, cols_); ++t) {
      if (!pivotSmallest(t, t, rows_, t, cols_)) break;
      for (;;) {
        bool clean = true;
        for (size_t i = t + 1; i < rows_; ++i) {
          if (a_[i][t] == 0) continue;
          BigInt q;
          mpz_tdiv_q(q.get_mpz_t(), a_[i][t].get_mpz_t(), a_[t][t].get_mpz_t());
          addRow(i, t, -q);
          if (a_[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < cols_; ++j) {
          if (a_[t][j] == 0) continue;
          BigInt q;
          mpz_tdiv_q(q.get_mpz_t(), a_[t][j].get_mpz_t(), a_[t][t].get_mpz_t());
          addCol(j, t, -q);
          if (a_[t][j] != 0) clean = false;
        }
        if (!clean) {
          pivotCross(t);
          continue;
        }
        // Divisibility: fold in a row whose entries the pivot does not divide.
        bool folded = false;
        for (size_t i = t + 1; i < rows_ && !folded; ++i)
          for (size_t j = t + 1; j < cols_; ++j)
            if (a_[i][j] % a_[t][t] != 0) {
              addRow(t, i, 1);
              folded = true;
              break;
            }
        if (!folded) break;
      }
      if (a_[t][t] < 0) negateRow(t);
    }
  }

  IntMatrix& matrix() { return a_; }
  IntMatrix& u() { return u_; }
  IntMatrix& v() { return v_; }

 private:
  bool pivotSmallest(size_t t, size_t r0, size_t r1, size_t c0, size_t c1) {
    size_t bi = 0, bj = 0;
    bool found = false;
    for (size_t i = r0; i < r1; ++i)
      for (size_t j = c0; j < c1; ++j)
        if (a_[i][j] != 0 && (!found || abs(a_[i][j]) < abs(a_[bi][bj]))) {
          bi = i;
          bj = j;
          found = true;
        }
    if (!found) return false;
    swapRows(t, bi);
    swapCols(t, bj);
    return true;
  }

  // Smallest nonzero entry in row t or column t becomes the pivot.
  void pivotCross(size_t t) {
    size_t bi = t, bj = t;
    for (size_t i = t; i < rows_; ++i)
      if (a_[i][t] != 0 && abs(a_[i][t]) < abs(a_[bi][bj])) bi = i, bj = t;
    for (size_t j = t; j < cols_; ++j)
      if (a_[t][j] != 0 && abs(a_[t][j]) < abs(a_[bi][bj])) bi = t, bj = j;
    swapRows(t, bi);
    swapCols(t, bj);
  }

  void swapRows(size_t i, size_t j) {
    if (i == j) return;
    std::swap(a_[i], a_[j]);
    if (track_) std::swap(u_[i], u_[j]);
  }
  void swapCols(size_t i, size_t j) {
    if (i == j) return;
    for (auto& row : a_) std::swap(row[i], row[j]);
    if (track_)
      for (auto& row : v_) std::swap(row[i], row[j]);
  }
  // row[i] += k * row[j]
  void addRow(size_t i, size_t j, const BigInt& k) {
    for (size_t c = 0; c < cols_; ++c)
      if (a_[j][c] != 0) a_[i][c] += k * a_[j][c];
    if (track_)
      for (size_t c = 0; c < rows_; ++c)
        if (u_[j][c] != 0) u_[i][c] += k * u_[j][c];
  }
  // col[i] += k * col[j]
  void addCol(size_t i, size_t j, const BigInt& k) {
    for (size_t r = 0; r < rows_; ++r)
      if (a_[r][j] != 0) a_[r][i] += k * a_[r][j];
    if (track_)
      for (size_t r = 0; r < cols_; ++r)
        if (v_[r][j] != 0) v_[r][i] += k * v_[r][j];
  }
  void negateRow(size_t i) {
    for (auto& x : a_[i]) x = -x;
    if (track_)
      for (auto& x : u_[i]) x = -x;
  }

  IntMatrix a_;
  size_t rows_;
  size_t cols_;
  bool track_;
  IntMatrix u_;
  IntMatrix v_;
};

}  // namespace

SmithForm smithNormalForm(const IntMatrix& m, size_t cols, bool withTransforms) {
  for (const auto& row : m)
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");
  Reducer red(m, cols, withTransforms);
  red.run();
  SmithForm out;
  const IntMatrix& s = red.matrix();
  for (size_t t = 0; t < std::min(m.size(), cols) && s[t][t] != 0; ++t) out.diagonal.push_back(s[t][t]);
  if (withTransforms) {
    out.S = s;
    out.U = std::move(red.u());
    out.V = std::move(red.v());
  }
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const size_t n = a.size();
  const size_t k = b.size();
  const size_t m = b.empty() ? 0 : b.front().size();
  IntMatrix out(n, IntVector(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

BigInt determinant(IntMatrix m) {
  // Fraction-free (Bareiss) elimination.
  const size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::string HomologySummary::str() const {
  std::ostringstream os;
  os << "r=" << r << " factors=";
  if (factors.empty()) os << '-';
  for (size_t i = 0; i < factors.size(); ++i) os << (i ? "," : "") << factors[i].get_str();
  return os.str();
}

IntMatrix boundaryMatrix1(const Triangulation& tri) {
  const Skeleton skel(tri);
  IntMatrix d1(skel.edges().size(), IntVector(skel.vertices().size(), 0));
  for (size_t e = 0; e < skel.edges().size(); ++e) {
    d1[e][static_cast<size_t>(skel.edges()[e].end)] += 1;
    d1[e][static_cast<size_t>(skel.edges()[e].start)] -= 1;
  }
  return d1;
}

IntMatrix boundaryMatrix2(const Triangulation& tri) {
  const Skeleton skel(tri);
  IntMatrix d2(skel.triangles().size(), IntVector(skel.edges().size(), 0));
  for (size_t id = 0; id < skel.triangles().size(); ++id) {
    const auto [t, f] = skel.triangles()[id].embeddings.front();
    int v[3];
    int k = 0;
    for (int w = 0; w < 4; ++w)
      if (w != f) v[k++] = w;
    auto add = [&](int a, int b, int sign) {
      d2[id][static_cast<size_t>(skel.edgeOf(t, edgeIndex(a, b)))] += sign * skel.edgeDirection(t, a, b);
    };
    add(v[0], v[1], 1);
    add(v[1], v[2], 1);
    add(v[0], v[2], -1);
  }
  return d2;
}

HomologySummary h1(const Triangulation& tri) {
  const Skeleton skel(tri);
  if (!skel.isValid()) throw PreconditionError("homology requires a valid triangulation");
  const auto E = skel.edges().size();
  const SmithForm s1 = smithNormalForm(boundaryMatrix1(tri), skel.vertices().size());
  const SmithForm s2 = smithNormalForm(boundaryMatrix2(tri), E);
  HomologySummary out;
  out.r = static_cast<int>(E) - s1.rank() - s2.rank();
  out.factors = s2.invariantFactors();
  for (const auto& d : out.factors) {
    if (d % 2 == 0) ++out.t2;
    if (d % 3 == 0) ++out.t3;
  }
  return out;
}

}  // namespace crushkit
