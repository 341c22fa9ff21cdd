#pragma once

// Torus-invariant divisors A = -sum_rho a_rho V(rho), recorded by the
// coefficients a_rho = psi(v_rho) of their support function psi. Every module
// works with (a_rho) directly; the negated divisor coefficients never appear.

#include <cstdint>
#include <string>
#include <vector>

#include "branespec/errors.hpp"
#include "branespec/exact.hpp"
#include "branespec/lattice_fan.hpp"

namespace branespec {

class TorusDivisor {
 public:
  TorusDivisor(const Fan& fan, std::vector<std::int64_t> coefficients)
      : coefficients_(std::move(coefficients)), fan_fingerprint_(fan.fingerprint()) {
    if (coefficients_.size() != fan.ray_count())
      throw DimensionMismatch("divisor has " + std::to_string(coefficients_.size()) + " coefficients for " +
                              std::to_string(fan.ray_count()) + " rays");
  }

  static TorusDivisor zero(const Fan& fan) { return TorusDivisor(fan, std::vector<std::int64_t>(fan.ray_count(), 0)); }

  const std::vector<std::int64_t>& coefficients() const noexcept { return coefficients_; }
  std::int64_t operator[](std::size_t ray) const { return coefficients_.at(ray); }
  std::size_t size() const noexcept { return coefficients_.size(); }
  std::uint64_t fan_fingerprint() const noexcept { return fan_fingerprint_; }

  TorusDivisor scaled(std::int64_t k) const {
    TorusDivisor out = *this;
    for (auto& a : out.coefficients_) a *= k;
    return out;
  }

  /// Same fan, new coefficients.
  TorusDivisor with_coefficients(std::vector<std::int64_t> coefficients) const {
    if (coefficients.size() != coefficients_.size()) throw DimensionMismatch("coefficient count changed");
    TorusDivisor out = *this;
    out.coefficients_ = std::move(coefficients);
    return out;
  }

  bool belongs_to(const Fan& fan) const { return fan.fingerprint() == fan_fingerprint_ && size() == fan.ray_count(); }

  friend bool operator==(const TorusDivisor&, const TorusDivisor&) = default;

 private:
  std::vector<std::int64_t> coefficients_;
  std::uint64_t fan_fingerprint_;
};

/// Per-cone linear data of psi: m_sigma with <m_sigma, v_rho> = a_rho for the
/// rays of sigma. Keeps each cone's dual basis so that points can be located.
class SupportFunction {
 public:
  SupportFunction(std::vector<DualVector> per_cone, std::vector<Matrix<Rational>> cone_duals)
      : per_cone_(std::move(per_cone)), cone_duals_(std::move(cone_duals)) {}

  const std::vector<DualVector>& per_cone() const noexcept { return per_cone_; }
  const DualVector& on_cone(std::size_t cone) const { return per_cone_.at(cone); }

  /// Index of the first maximal cone containing v, or -1.
  std::ptrdiff_t locate(const LatticeVector& v) const {
    for (std::size_t c = 0; c < cone_duals_.size(); ++c) {
      bool inside = true;
      for (const auto& w : cone_duals_[c])
        if (pairing(w, v) < 0) {
          inside = false;
          break;
        }
      if (inside) return static_cast<std::ptrdiff_t>(c);
    }
    return -1;
  }

 private:
  std::vector<DualVector> per_cone_;
  std::vector<Matrix<Rational>> cone_duals_;
};

inline SupportFunction support_function(const Fan& fan, const TorusDivisor& d) {
  if (!d.belongs_to(fan)) throw DimensionMismatch("divisor was built for a different fan");
  std::vector<DualVector> per_cone;
  std::vector<Matrix<Rational>> duals;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    const auto& cone = fan.max_cones()[c];
    auto dual = fan.dual_basis(cone);
    if (!dual)
      throw DomainError("maximal cone " + std::to_string(c) + " is not full-dimensional simplicial",
                        "SingularGeneratorMatrix");
    // m_sigma = sum_i a_i w_i since <w_i, v_j> = delta_ij.
    DualVector m(fan.rank(), Rational(0));
    for (std::size_t i = 0; i < cone.rays.size(); ++i)
      for (std::size_t k = 0; k < fan.rank(); ++k) m[k] += Rational(d[cone.rays[i]]) * (*dual)[i][k];
    per_cone.push_back(std::move(m));
    duals.push_back(std::move(*dual));
  }
  return SupportFunction(std::move(per_cone), std::move(duals));
}

inline Rational evaluate_psi(const SupportFunction& sf, const LatticeVector& v) {
  auto c = sf.locate(v);
  if (c < 0) throw DomainError("point lies outside the support of the fan", "OutsideSupport");
  return pairing(sf.on_cone(static_cast<std::size_t>(c)), v);
}

/// psi strictly convex in the sense lambda psi(u) + (1-lambda) psi(v) <
/// psi(lambda u + (1-lambda) v) for u, v in distinct cones; equivalently
/// <m_sigma, v_rho> > a_rho for every maximal cone sigma and ray rho not in
/// sigma. These are the ample line bundles.
inline bool is_strictly_convex(const Fan& fan, const TorusDivisor& d, const CompletenessOptions& opts = {}) {
  if (!is_complete(fan, opts)) throw DomainError("strict convexity needs a complete fan", "IncompleteFan");
  auto sf = support_function(fan, d);
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    const auto& cone = fan.max_cones()[c];
    for (std::size_t r = 0; r < fan.ray_count(); ++r) {
      if (cone.contains_ray(r)) continue;
      if (!(pairing(sf.on_cone(c), fan.ray(r)) > d[r])) return false;
    }
  }
  return true;
}

/// Data of L^dual (x) L', i.e. a'_rho - a_rho.
inline TorusDivisor difference_divisor(const TorusDivisor& d, const TorusDivisor& d_prime) {
  if (d.fan_fingerprint() != d_prime.fan_fingerprint() || d.size() != d_prime.size())
    throw DimensionMismatch("divisors belong to different fans");
  auto diff = d_prime.coefficients();
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= d[i];
  return d_prime.with_coefficients(std::move(diff));
}

}  // namespace branespec
