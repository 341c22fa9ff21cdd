#pragma once

// Character-graded cohomology of T-equivariant line bundles on smooth
// complete toric varieties.
//
// The character-m piece of H^i(X, O(L)) is the local cohomology
// H^i_{Z(m)}(N_R, C) with Z(m) = { v : <m, v> >= psi(v) }. Because N_R is
// contractible, for i >= 1 this is the reduced cohomology H~^{i-1} of
// N_R \ Z(m), which retracts onto the subcomplex of the fan spanned by the
// failure rays { rho : <m, v_rho> < a_rho }. For i = 0 the piece is C exactly
// when no ray fails; the empty complex has H~^{-1} = Q, so one formula covers
// every degree: dim H^i = dim H~^{i-1}(failure complex).
//
// The failure set is constant on chambers of the arrangement
// <m, v_rho> = a_rho. We run over ray subsets S whose complex carries
// cohomology and enumerate the lattice points of the chamber of S exactly.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "branespec/errors.hpp"
#include "branespec/exact.hpp"
#include "branespec/lattice_fan.hpp"
#include "branespec/polyhedra.hpp"
#include "branespec/toric_divisor.hpp"

namespace branespec {

/// Integral character m in M.
using Character = std::vector<std::int64_t>;

/// St^i as multiplicity maps over M, one per degree 0..n.
class GradedSpectrum {
 public:
  GradedSpectrum() = default;
  explicit GradedSpectrum(std::size_t rank) : rank_(rank), degrees_(rank + 1) {}

  std::size_t rank() const noexcept { return rank_; }
  std::size_t degree_count() const noexcept { return degrees_.size(); }

  void add(std::size_t degree, const Character& m, std::int64_t multiplicity) {
    if (multiplicity == 0) return;
    auto& slot = degrees_.at(degree)[m];
    slot += multiplicity;
    if (slot == 0) degrees_[degree].erase(m);
  }

  const std::map<Character, std::int64_t>& degree(std::size_t i) const { return degrees_.at(i); }

  std::int64_t multiplicity(std::size_t i, const Character& m) const {
    const auto& d = degrees_.at(i);
    auto it = d.find(m);
    return it == d.end() ? 0 : it->second;
  }

  std::int64_t dimension(std::size_t i) const {
    std::int64_t total = 0;
    for (const auto& [m, k] : degrees_.at(i)) total += k;
    return total;
  }

  bool higher_degrees_vanish() const {
    for (std::size_t i = 1; i < degrees_.size(); ++i)
      if (!degrees_[i].empty()) return false;
    return true;
  }

  friend bool operator==(const GradedSpectrum&, const GradedSpectrum&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<std::map<Character, std::int64_t>> degrees_;
};

/// { rho : <m, v_rho> < a_rho }, ascending.
inline std::vector<std::size_t> failure_rays(const Fan& fan, const TorusDivisor& d, const DualVector& m) {
  if (!d.belongs_to(fan)) throw DimensionMismatch("divisor was built for a different fan");
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < fan.ray_count(); ++r)
    if (pairing(m, fan.ray(r)) < d[r]) out.push_back(r);
  return out;
}

/// Subsets of a ray set that span a cone of the fan. Always contains the
/// empty face.
struct FailureComplex {
  std::vector<std::size_t> ray_subset;
  std::vector<std::vector<std::size_t>> faces;  // sorted vertex lists, by size then lexicographic
};

inline FailureComplex failure_complex(const Fan& fan, std::vector<std::size_t> rays) {
  std::sort(rays.begin(), rays.end());
  std::set<std::vector<std::size_t>> faces;
  faces.insert(std::vector<std::size_t>{});
  for (const auto& cone : fan.max_cones()) {
    std::vector<std::size_t> common;
    for (auto r : rays)
      if (cone.contains_ray(r)) common.push_back(r);
    const std::size_t k = common.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<std::size_t> f;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) f.push_back(common[i]);
      faces.insert(std::move(f));
    }
  }
  FailureComplex fc{std::move(rays), {faces.begin(), faces.end()}};
  std::stable_sort(fc.faces.begin(), fc.faces.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return fc;
}

/// dim H~^k(fc; Q) for k = -1..n-1, returned at index k+1.
inline std::vector<std::int64_t> reduced_cohomology_dims(const FailureComplex& fc, std::size_t n) {
  // by_size[s] = faces with s vertices, i.e. (s-1)-simplices; s = 0 is the empty face.
  std::vector<std::vector<std::vector<std::size_t>>> by_size(n + 2);
  for (const auto& f : fc.faces) {
    if (f.size() > n) throw DomainError("failure complex has a face larger than the rank", "NotSimplicial");
    by_size[f.size()].push_back(f);
  }
  // rank of the coboundary from size-s cochains to size-(s+1) cochains
  std::vector<std::size_t> cob_rank(n + 2, 0);
  for (std::size_t s = 0; s + 1 <= n; ++s) {
    const auto& lower = by_size[s];
    const auto& upper = by_size[s + 1];
    if (lower.empty() || upper.empty()) continue;
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < lower.size(); ++i) index[lower[i]] = i;
    Matrix<Integer> m(upper.size(), std::vector<Integer>(lower.size(), 0));
    for (std::size_t u = 0; u < upper.size(); ++u) {
      for (std::size_t j = 0; j < upper[u].size(); ++j) {
        auto boundary = upper[u];
        boundary.erase(boundary.begin() + static_cast<std::ptrdiff_t>(j));
        m[u][index.at(boundary)] = (j % 2 == 0) ? 1 : -1;
      }
    }
    cob_rank[s] = rank(std::move(m));
  }
  std::vector<std::int64_t> dims(n + 1, 0);
  for (std::size_t s = 0; s <= n; ++s) {
    auto c = static_cast<std::int64_t>(by_size[s].size());
    auto out = static_cast<std::int64_t>(cob_rank[s]);
    auto in = s == 0 ? 0 : static_cast<std::int64_t>(cob_rank[s - 1]);
    dims[s] = c - out - in;
  }
  return dims;
}

struct SpectrumOptions {
  std::uint64_t subset_cap = std::uint64_t{1} << 20;
  EnumerationLimits limits{};
};

/// Precomputes, for one fan, the ray subsets whose failure complex has
/// nonzero reduced cohomology. Reusable across divisors.
class ToricCohomologyEngine {
 public:
  struct Chamber {
    std::uint64_t mask;
    std::vector<std::int64_t> degree_dims;  // index = cohomological degree
  };

  explicit ToricCohomologyEngine(Fan fan, SpectrumOptions opts = {}) : fan_(std::move(fan)), opts_(opts) {
    const std::size_t r = fan_.ray_count();
    if (r >= 63 || (std::uint64_t{1} << r) > opts_.subset_cap)
      throw SubsetBlowup(std::to_string(r) + " rays need 2^" + std::to_string(r) +
                         " subsets, above the cap of " + std::to_string(opts_.subset_cap));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < r; ++i)
        if (mask >> i & 1) subset.push_back(i);
      auto dims = reduced_cohomology_dims(failure_complex(fan_, subset), fan_.rank());
      bool nonzero = false;
      for (auto x : dims) nonzero = nonzero || x != 0;
      if (nonzero) chambers_.push_back({mask, std::move(dims)});
    }
  }

  const Fan& fan() const noexcept { return fan_; }
  const std::vector<Chamber>& chambers() const noexcept { return chambers_; }

  /// Lattice points m whose failure set is exactly the subset `mask`.
  LatticeEnumeration chamber_points(const TorusDivisor& d, std::uint64_t mask) const {
    std::vector<HalfSpace> hs;
    for (std::size_t r = 0; r < fan_.ray_count(); ++r) {
      const auto& v = fan_.ray(r);
      if (mask >> r & 1) {
        HalfSpace h{std::vector<std::int64_t>(v.size()), 1 - d[r]};
        for (std::size_t k = 0; k < v.size(); ++k) h.normal[k] = -v[k];
        hs.push_back(std::move(h));
      } else {
        hs.push_back(HalfSpace{v, d[r]});
      }
    }
    return lattice_points(hs, fan_.rank(), opts_.limits);
  }

  GradedSpectrum spectrum(const TorusDivisor& d) const {
    if (!d.belongs_to(fan_)) throw DimensionMismatch("divisor was built for a different fan");
    GradedSpectrum out(fan_.rank());
    for (const auto& ch : chambers_) {
      auto pts = chamber_points(d, ch.mask);
      if (!pts.bounded)
        throw UnboundedChamber("failure subset " + describe(ch.mask) +
                               " carries cohomology on an unbounded region; is the fan complete?");
      for (const auto& m : pts.points)
        for (std::size_t i = 0; i < ch.degree_dims.size(); ++i) out.add(i, m, ch.degree_dims[i]);
    }
    return out;
  }

 private:
  std::string describe(std::uint64_t mask) const {
    std::string s = "{";
    for (std::size_t r = 0; r < fan_.ray_count(); ++r)
      if (mask >> r & 1) s += (s.size() > 1 ? "," : "") + std::to_string(r);
    return s + "}";
  }

  Fan fan_;
  SpectrumOptions opts_;
  std::vector<Chamber> chambers_;
};

inline GradedSpectrum graded_string_spectrum(const Fan& fan, const TorusDivisor& d, const SpectrumOptions& opts = {}) {
  return ToricCohomologyEngine(fan, opts).spectrum(d);
}

/// St^q(O(L), O(L')) = H^q(X, L^dual (x) L').
inline GradedSpectrum hom_spectrum(const Fan& fan, const TorusDivisor& source, const TorusDivisor& target,
                                   const SpectrumOptions& opts = {}) {
  return graded_string_spectrum(fan, difference_divisor(source, target), opts);
}

/// P = { m : <m, v_rho> >= a'_rho - a_rho for all rays }.
inline std::vector<Character> lattice_points_P(const Fan& fan, const TorusDivisor& source, const TorusDivisor& target,
                                               const EnumerationLimits& limits = {}) {
  auto diff = difference_divisor(source, target);
  if (!diff.belongs_to(fan)) throw DimensionMismatch("divisor was built for a different fan");
  std::vector<HalfSpace> hs;
  for (std::size_t r = 0; r < fan.ray_count(); ++r) hs.push_back(HalfSpace{fan.ray(r), diff[r]});
  auto pts = lattice_points(hs, fan.rank(), limits);
  if (!pts.bounded) throw DomainError("section polytope is unbounded; is the fan complete?", "UnboundedPolytope");
  return pts.points;
}

/// Smallest n0 in [0, n_max) such that St^q(F, G^n) vanishes for all q > 0
/// and n0 < n <= n_max. Absent when the higher spectrum is still nonzero at
/// n = n_max.
inline std::optional<std::int64_t> ample_vanishing_threshold(const Fan& fan, const TorusDivisor& source,
                                                              const TorusDivisor& ample, std::int64_t n_max,
                                                              const SpectrumOptions& opts = {}) {
  if (n_max < 1) throw SchemaError("n_max must be positive");
  if (!is_strictly_convex(fan, ample)) throw DomainError("target divisor is not strictly convex", "NotAmple");
  ToricCohomologyEngine engine(fan, opts);
  std::int64_t last_failure = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    auto spec = engine.spectrum(difference_divisor(source, ample.scaled(n)));
    if (!spec.higher_degrees_vanish()) last_failure = n;
  }
  if (last_failure == n_max) return std::nullopt;
  return last_failure;
}

}  // namespace branespec
