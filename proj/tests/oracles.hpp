#pragma once

// Independent reference computations used only by the tests. None of them
// share code paths with the library beyond the Fan container itself.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "branespec/lattice_fan.hpp"
#include "branespec/standard_fans.hpp"

namespace oracle {

using branespec::Fan;

// ---- Cech cohomology of O(L) on a smooth complete toric variety ---------
//
// Cover by the affine charts U_sigma of the maximal cones. U_I is the chart
// of tau = cap_{i in I} sigma_i, whose coordinate ring in degree m is C when
// <m, v_rho> >= a_rho for every ray of tau and 0 otherwise. The complex is
// the alternating Cech complex; ranks are taken modulo a large prime.

inline constexpr std::int64_t kPrime = 2147483647;

inline std::int64_t modpow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  b %= kPrime;
  if (b < 0) b += kPrime;
  while (e) {
    if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % kPrime);
    b = static_cast<std::int64_t>((__int128)b * b % kPrime);
    e >>= 1;
  }
  return r;
}

inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::int64_t inv = modpow(m[r][c], kPrime - 2);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      std::int64_t f = static_cast<std::int64_t>((__int128)m[i][c] * inv % kPrime);
      for (std::size_t j = c; j < cols; ++j) {
        std::int64_t v = (m[i][j] - static_cast<std::int64_t>((__int128)f * m[r][j] % kPrime)) % kPrime;
        m[i][j] = v < 0 ? v + kPrime : v;
      }
    }
    ++r;
  }
  return r;
}

class CechOracle {
 public:
  explicit CechOracle(const Fan& fan) : fan_(fan) {
    const std::size_t k = fan.max_cones().size();
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << k); ++s) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < k; ++i)
        if (s >> i & 1) idx.push_back(i);
      std::uint64_t rays = ~std::uint64_t{0};
      for (auto i : idx) {
        std::uint64_t r = 0;
        for (auto x : fan.max_cones()[i].rays) r |= std::uint64_t{1} << x;
        rays &= r;
      }
      by_level_[idx.size() - 1].push_back({idx, rays});
    }
  }

  // dims of H^0..H^n for the degree-m piece, given which rays satisfy
  // <m, v_rho> >= a_rho (bit set = satisfied).
  std::vector<std::int64_t> dims_for(std::uint64_t satisfied) {
    auto it = memo_.find(satisfied);
    if (it != memo_.end()) return it->second;
    const std::size_t levels = fan_.max_cones().size();
    std::vector<std::vector<const Term*>> live(levels);
    for (std::size_t p = 0; p < levels; ++p)
      for (const auto& t : by_level_[p])
        if ((t.rays & satisfied) == t.rays) live[p].push_back(&t);
    std::vector<std::size_t> d_rank(levels, 0);
    for (std::size_t p = 0; p + 1 < levels; ++p) {
      if (live[p].empty() || live[p + 1].empty()) continue;
      std::vector<std::vector<std::int64_t>> m(live[p + 1].size(), std::vector<std::int64_t>(live[p].size(), 0));
      for (std::size_t u = 0; u < live[p + 1].size(); ++u) {
        const auto& big = live[p + 1][u]->idx;
        for (std::size_t drop = 0; drop < big.size(); ++drop) {
          std::vector<std::size_t> small;
          for (std::size_t q = 0; q < big.size(); ++q)
            if (q != drop) small.push_back(big[q]);
          for (std::size_t l = 0; l < live[p].size(); ++l)
            if (live[p][l]->idx == small) m[u][l] = drop % 2 == 0 ? 1 : kPrime - 1;
        }
      }
      d_rank[p] = rank_mod_p(std::move(m));
    }
    std::vector<std::int64_t> dims(fan_.rank() + 1, 0);
    for (std::size_t p = 0; p < levels; ++p) {
      std::int64_t h = static_cast<std::int64_t>(live[p].size()) - static_cast<std::int64_t>(d_rank[p]) -
                       (p ? static_cast<std::int64_t>(d_rank[p - 1]) : 0);
      if (h != 0) dims.at(p) = h;
    }
    memo_[satisfied] = dims;
    return dims;
  }

  std::vector<std::int64_t> dims_at(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& m) {
    std::uint64_t sat = 0;
    for (std::size_t r = 0; r < fan_.ray_count(); ++r) {
      std::int64_t pr = 0;
      for (std::size_t k = 0; k < m.size(); ++k) pr += m[k] * fan_.ray(r)[k];
      if (pr >= a[r]) sat |= std::uint64_t{1} << r;
    }
    return dims_for(sat);
  }

  // Character-graded cohomology over the box [-radius, radius]^n:
  // result[i][m] = dim H^i(X, O(L))_m.
  std::vector<std::map<std::vector<std::int64_t>, std::int64_t>> spectrum(const std::vector<std::int64_t>& a,
                                                                           std::int64_t radius) {
    const std::size_t n = fan_.rank();
    std::vector<std::map<std::vector<std::int64_t>, std::int64_t>> out(n + 1);
    std::vector<std::int64_t> m(n, -radius);
    while (true) {
      auto d = dims_at(a, m);
      for (std::size_t i = 0; i <= n; ++i)
        if (d[i]) out[i][m] = d[i];
      std::size_t j = n;
      while (true) {
        if (j == 0) return out;
        --j;
        if (m[j] < radius) {
          ++m[j];
          break;
        }
        m[j] = -radius;
      }
    }
  }

 private:
  struct Term {
    std::vector<std::size_t> idx;
    std::uint64_t rays;
  };
  Fan fan_;
  std::map<std::size_t, std::vector<Term>> by_level_;
  std::map<std::uint64_t, std::vector<std::int64_t>> memo_;
};

// ---- A_1 weight polynomials ---------------------------------------------

using Poly = std::map<std::int64_t, std::int64_t>;

// V(a): weights a, a-2, ..., -a.
inline Poly sl2_irrep(std::int64_t a) {
  Poly p;
  for (std::int64_t w = -a; w <= a; w += 2) p[w] += 1;
  return p;
}

inline Poly poly_mul(const Poly& x, const Poly& y) {
  Poly out;
  for (auto [a, ca] : x)
    for (auto [b, cb] : y) out[a + b] += ca * cb;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline Poly poly_dual(const Poly& x) {
  Poly out;
  for (auto [a, c] : x) out[-a] = c;
  return out;
}

// ---- P^1 closed forms ----------------------------------------------------

// Index of P^1 with fiber weights a0 at the cone of (1) and -a1 at the cone
// of (-1):  (e^{a0 x} - e^{-a1 x}) / (2 sinh(x/2)).
inline double p1_index(std::int64_t a0, std::int64_t a1, double x) {
  return (std::exp(static_cast<double>(a0) * x) - std::exp(-static_cast<double>(a1) * x)) / (2 * std::sinh(x / 2));
}

// The same function as a finite sum of exponentials e^{(k/2) x}: the map
// k -> coefficient, with half-integral weights k/2.
inline std::map<std::int64_t, std::int64_t> p1_index_character(std::int64_t a0, std::int64_t a1) {
  std::map<std::int64_t, std::int64_t> out;
  const std::int64_t n = a0 + a1;
  if (n > 0)
    for (std::int64_t k = 0; k < n; ++k) out[-2 * a1 + 1 + 2 * k] = 1;
  if (n < 0)
    for (std::int64_t k = 0; k < -n; ++k) out[2 * a0 + 1 + 2 * k] = -1;
  return out;
}

// ---- Weyl group lengths by breadth-first search ---------------------------

// Orbit of a regular dominant vector under simple reflections, recording the
// BFS depth, which is the length of the group element reaching it.
template <class Reflect>
std::map<std::vector<std::int64_t>, std::size_t> orbit_with_length(const std::vector<std::int64_t>& start,
                                                                   std::size_t rank, Reflect reflect) {
  std::map<std::vector<std::int64_t>, std::size_t> depth{{start, 0}};
  std::vector<std::vector<std::int64_t>> frontier{start};
  std::size_t d = 0;
  while (!frontier.empty()) {
    ++d;
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& w : frontier)
      for (std::size_t i = 0; i < rank; ++i) {
        auto v = reflect(w, i);
        if (depth.emplace(v, d).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  return depth;
}

// ---- test fans -------------------------------------------------------------

struct NamedFan {
  const char* name;
  Fan fan;
};

inline std::vector<NamedFan> test_fans() {
  using namespace branespec::fans;
  return {{"P1", projective_line()},
          {"P2", projective_space(2)},
          {"P1xP1", product(projective_line(), projective_line())},
          {"F1", hirzebruch(1)}};
}

}  // namespace oracle
