#pragma once

// Lattices N = Z^n and M = Hom(N, Z), simplicial cones and fans.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "branespec/errors.hpp"
#include "branespec/exact.hpp"
#include "branespec/polyhedra.hpp"

namespace branespec {

/// Element of N.
using LatticeVector = std::vector<std::int64_t>;
/// Element of M (x) Q. Integral in most uses.
using DualVector = std::vector<Rational>;

inline DualVector to_dual(std::span<const std::int64_t> v) { return DualVector(v.begin(), v.end()); }

/// Exact <m, v>.
inline Rational pairing(const DualVector& m, const LatticeVector& v) {
  return dot(std::span<const Rational>(m), std::span<const std::int64_t>(v));
}

struct Cone {
  std::vector<std::size_t> rays;  ///< indices into Fan::rays()

  bool contains_ray(std::size_t r) const { return std::find(rays.begin(), rays.end(), r) != rays.end(); }
  friend bool operator==(const Cone&, const Cone&) = default;
};

class Fan {
 public:
  Fan() = default;

  /// Validates: ray lengths, primitivity, index ranges, distinct and
  /// independent cone generators, every ray used, and (for full-dimensional
  /// pairs) that two maximal cones meet in a common face.
  Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<Cone> max_cones)
      : rank_(rank), rays_(std::move(rays)), cones_(std::move(max_cones)) {
    validate();
    fingerprint_ = compute_fingerprint();
  }

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<LatticeVector>& rays() const noexcept { return rays_; }
  const LatticeVector& ray(std::size_t i) const { return rays_.at(i); }
  std::size_t ray_count() const noexcept { return rays_.size(); }
  const std::vector<Cone>& max_cones() const noexcept { return cones_; }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  bool is_full_dimensional(const Cone& c) const { return c.rays.size() == rank_; }

  /// Rows are the generators of the cone.
  Matrix<Integer> generator_matrix(const Cone& c) const {
    Matrix<Integer> m;
    for (auto r : c.rays) m.emplace_back(rays_.at(r).begin(), rays_.at(r).end());
    return m;
  }

  /// For a full-dimensional cone, the rows w_i with <w_i, v_j> = delta_ij.
  std::optional<Matrix<Rational>> dual_basis(const Cone& c) const {
    if (!is_full_dimensional(c)) return std::nullopt;
    Matrix<Rational> t(rank_, std::vector<Rational>(rank_));
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t i = 0; i < rank_; ++i) t[i][j] = rays_[c.rays[j]][i];
    return inverse(std::move(t));
  }

  /// True when v lies in the (closed) full-dimensional cone c.
  bool cone_contains(const Cone& c, const LatticeVector& v) const {
    auto dual = dual_basis(c);
    if (!dual) return false;
    for (const auto& w : *dual)
      if (pairing(w, v) < 0) return false;
    return true;
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      const auto& v = rays_[i];
      if (v.size() != rank_)
        throw InvalidFan("ray " + std::to_string(i) + " has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(rank_));
      std::int64_t g = 0;
      for (auto x : v) g = std::gcd(g, x);
      if (g == 0) throw InvalidFan("ray " + std::to_string(i) + " is zero");
      if (g != 1) throw InvalidFan("ray " + std::to_string(i) + " is not primitive (gcd " + std::to_string(g) + ")");
      for (std::size_t j = 0; j < i; ++j)
        if (rays_[j] == v) throw InvalidFan("rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
    std::vector<bool> used(rays_.size(), false);
    for (std::size_t c = 0; c < cones_.size(); ++c) {
      const auto& cone = cones_[c];
      std::set<std::size_t> distinct(cone.rays.begin(), cone.rays.end());
      if (distinct.size() != cone.rays.size())
        throw InvalidFan("cone " + std::to_string(c) + " repeats a ray");
      for (auto r : cone.rays) {
        if (r >= rays_.size()) throw InvalidFan("cone " + std::to_string(c) + " references ray " + std::to_string(r));
        used[r] = true;
      }
      if (branespec::rank(generator_matrix(cone)) != cone.rays.size())
        throw InvalidFan("cone " + std::to_string(c) + " is not simplicial (dependent generators)");
    }
    for (std::size_t r = 0; r < used.size(); ++r)
      if (!used[r]) throw InvalidFan("ray " + std::to_string(r) + " lies in no maximal cone");
    for (std::size_t a = 0; a < cones_.size(); ++a)
      for (std::size_t b = a + 1; b < cones_.size(); ++b)
        if (!meet_in_common_face(cones_[a], cones_[b]))
          throw InvalidFan("cones " + std::to_string(a) + " and " + std::to_string(b) +
                           " do not meet in a common face");
  }

  // Compares the extreme rays of the intersection with the shared rays.
  // Only decided for full-dimensional pairs; other pairs are accepted.
  bool meet_in_common_face(const Cone& a, const Cone& b) const {
    {
      auto sa = a.rays, sb = b.rays;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa == sb) return false;
    }
    auto da = dual_basis(a);
    auto db = dual_basis(b);
    if (!da || !db) return true;
    Matrix<Integer> rows;
    for (const auto* dual : {&*da, &*db})
      for (const auto& w : *dual) {
        Integer l = 1;
        for (const auto& x : w) l = lcm(l, Integer(denominator(x)));
        std::vector<Integer> row;
        for (const auto& x : w) row.push_back(numerator(x) * (l / denominator(x)));
        rows.push_back(std::move(row));
      }
    for (const auto& e : extreme_rays(rows, rank_)) {
      bool shared = false;
      for (auto r : a.rays) {
        if (!b.contains_ray(r)) continue;
        std::vector<Integer> v(rays_[r].begin(), rays_[r].end());
        shared = shared || v == e;
      }
      if (!shared) return false;
    }
    return true;
  }

  std::uint64_t compute_fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 1099511628211ULL;
      }
    };
    mix(rank_);
    for (const auto& v : rays_)
      for (auto x : v) mix(static_cast<std::uint64_t>(x));
    mix(0xfeedULL);
    for (const auto& c : cones_) {
      for (auto r : c.rays) mix(r);
      mix(0xbeefULL);
    }
    return h;
  }

  std::size_t rank_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> cones_;
  std::uint64_t fingerprint_ = 0;
};

/// Every maximal cone's generators extend to a Z-basis of N.
inline bool is_smooth(const Fan& fan) {
  for (const auto& c : fan.max_cones()) {
    auto gens = fan.generator_matrix(c);
    const std::size_t k = gens.size();
    if (k == 0) continue;
    Integer g = 0;
    for_each_combination(fan.rank(), k, [&](const std::vector<std::size_t>& cols) {
      if (g == 1) return;
      Matrix<Integer> minor(k);
      for (std::size_t i = 0; i < k; ++i)
        for (auto j : cols) minor[i].push_back(gens[i][j]);
      g = gcd(g, determinant(std::move(minor)));
    });
    if (g != 1) return false;
  }
  return true;
}

struct CompletenessOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 20240917;
  std::int64_t sample_radius = 1000;
};

/// Facet pairing plus seeded containment sampling of lattice directions.
inline bool is_complete(const Fan& fan, const CompletenessOptions& opts = {}) {
  const std::size_t n = fan.rank();
  if (n == 0) return true;
  if (fan.max_cones().empty()) return false;
  for (const auto& c : fan.max_cones())
    if (!fan.is_full_dimensional(c)) return false;

  std::vector<std::vector<std::size_t>> facets;
  for (const auto& c : fan.max_cones())
    for (std::size_t drop = 0; drop < c.rays.size(); ++drop) {
      std::vector<std::size_t> f;
      for (std::size_t i = 0; i < c.rays.size(); ++i)
        if (i != drop) f.push_back(c.rays[i]);
      std::sort(f.begin(), f.end());
      facets.push_back(std::move(f));
    }
  std::sort(facets.begin(), facets.end());
  for (std::size_t i = 0; i < facets.size();) {
    std::size_t j = i;
    while (j < facets.size() && facets[j] == facets[i]) ++j;
    if (j - i != 2) return false;
    i = j;
  }

  std::vector<Matrix<Rational>> duals;
  for (const auto& c : fan.max_cones()) duals.push_back(*fan.dual_basis(c));
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::int64_t> coord(-opts.sample_radius, opts.sample_radius);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    LatticeVector v(n);
    bool zero = true;
    for (auto& x : v) {
      x = coord(rng);
      zero = zero && x == 0;
    }
    if (zero) continue;
    bool covered = false;
    for (const auto& dual : duals) {
      bool inside = true;
      for (const auto& w : dual)
        if (pairing(w, v) < 0) {
          inside = false;
          break;
        }
      if (inside) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

/// Generators of sigma^dual cap M for a smooth full-dimensional cone: the
/// dual basis, row i pairing to delta_ij with generator j.
inline std::vector<DualVector> dual_cone_generators(const Fan& fan, const Cone& cone) {
  if (!fan.is_full_dimensional(cone))
    throw DomainError("cone is not full-dimensional", "NotMaximalCone");
  auto dual = fan.dual_basis(cone);
  if (!dual) throw DomainError("cone generators are dependent", "NotMaximalCone");
  for (const auto& w : *dual)
    for (const auto& x : w)
      if (!is_integral(x)) throw DomainError("cone is not smooth", "NonSmoothCone");
  return *dual;
}

}  // namespace branespec
