#include "crushkit/cone.hpp"

#include <algorithm>
#include <thread>

namespace crushkit {

namespace {

struct Ray {
  IntVector coords;
  Support zeros;  // coordinates where the ray vanishes
};

Support zeroSet(const IntVector& v) {
  Support z(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] == 0) z.set(i);
  return z;
}

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

// Two rays are adjacent iff no third ray vanishes wherever both do.
bool adjacent(const std::vector<Ray>& rays, size_t u, size_t v, const Support& common) {
  for (size_t w = 0; w < rays.size(); ++w) {
    if (w == u || w == v) continue;
    if (common.is_subset_of(rays[w].zeros)) return false;
  }
  return true;
}

}  // namespace

std::vector<IntVector> extremeRays(const IntMatrix& equations, size_t dim, const SupportFilter& filter, int jobs) {
  if (dim == 0) return {};
  std::vector<Ray> rays;
  for (size_t i = 0; i < dim; ++i) {
    IntVector e(dim, 0);
    e[i] = 1;
    Ray r{e, zeroSet(e)};
    if (!filter || filter(~r.zeros)) rays.push_back(std::move(r));
  }

  for (const IntVector& eq : equations) {
    std::vector<BigInt> val(rays.size());
    std::vector<size_t> pos, neg;
    std::vector<Ray> next;
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(eq, rays[i].coords);
      const int s = sgn(val[i]);
      if (s > 0) pos.push_back(i);
      else if (s < 0) neg.push_back(i);
      else next.push_back(rays[i]);
    }

    auto pairChunk = [&](size_t begin, size_t end, std::vector<Ray>& out) {
      for (size_t a = begin; a < end; ++a) {
        const size_t u = pos[a];
        for (size_t v : neg) {
          const Support common = rays[u].zeros & rays[v].zeros;
          if (filter && !filter(~common)) continue;
          if (!adjacent(rays, u, v, common)) continue;
          IntVector w(dim);
          for (size_t i = 0; i < dim; ++i) w[i] = val[u] * rays[v].coords[i] - val[v] * rays[u].coords[i];
          makePrimitive(w);
          Support z = zeroSet(w);
          out.push_back({std::move(w), std::move(z)});
        }
      }
    };

    const size_t threads = std::max<size_t>(1, std::min<size_t>(static_cast<size_t>(std::max(jobs, 1)), pos.size()));
    if (threads <= 1) {
      pairChunk(0, pos.size(), next);
    } else {
      std::vector<std::vector<Ray>> parts(threads);
      std::vector<std::thread> pool;
      const size_t step = (pos.size() + threads - 1) / threads;
      for (size_t k = 0; k < threads; ++k) {
        const size_t b = std::min(pos.size(), k * step);
        const size_t e = std::min(pos.size(), b + step);
        pool.emplace_back([&, b, e, k] { pairChunk(b, e, parts[k]); });
      }
      for (auto& th : pool) th.join();
      for (auto& part : parts)
        for (auto& r : part) next.push_back(std::move(r));
    }
    rays = std::move(next);
  }

  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.coords));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace crushkit
