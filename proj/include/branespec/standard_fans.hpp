#pragma once

// Fans of a few standard smooth complete toric varieties.

#include <cstdint>
#include <vector>

#include "branespec/lattice_fan.hpp"

namespace branespec::fans {

/// P^n: rays e_1..e_n and -(e_1+...+e_n); cones omit one ray each.
inline Fan projective_space(std::size_t n) {
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    LatticeVector e(n, 0);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.emplace_back(n, -1);
  std::vector<Cone> cones;
  for (std::size_t skip = n + 1; skip-- > 0;) {
    Cone c;
    for (std::size_t r = 0; r <= n; ++r)
      if (r != skip) c.rays.push_back(r);
    cones.push_back(c);
  }
  return Fan(n, std::move(rays), std::move(cones));
}

inline Fan projective_line() { return projective_space(1); }

/// Product fan on N1 (+) N2; rays of the first factor come first.
inline Fan product(const Fan& a, const Fan& b) {
  const std::size_t n = a.rank() + b.rank();
  std::vector<LatticeVector> rays;
  for (const auto& v : a.rays()) {
    LatticeVector w(v);
    w.resize(n, 0);
    rays.push_back(w);
  }
  for (const auto& v : b.rays()) {
    LatticeVector w(a.rank(), 0);
    w.insert(w.end(), v.begin(), v.end());
    rays.push_back(w);
  }
  std::vector<Cone> cones;
  for (const auto& ca : a.max_cones())
    for (const auto& cb : b.max_cones()) {
      Cone c = ca;
      for (auto r : cb.rays) c.rays.push_back(r + a.ray_count());
      cones.push_back(c);
    }
  return Fan(n, std::move(rays), std::move(cones));
}

/// Hirzebruch surface F_r: rays (1,0), (0,1), (-1,r), (0,-1).
inline Fan hirzebruch(std::int64_t r) {
  return Fan(2, {{1, 0}, {0, 1}, {-1, r}, {0, -1}}, {Cone{{0, 1}}, Cone{{1, 2}}, Cone{{2, 3}}, Cone{{3, 0}}});
}

}  // namespace branespec::fans
