#pragma once

// Torus fixed-point evaluation of the equivariant index on a toric manifold:
//
//   2^-n  sum_{p in X^T} ( sum_j exp<phi_{j,p}, xi> ) prod_i sinh(<omega_{i,p}, xi> / 2)^-1
//
// Fixed points correspond to maximal cones; the isotropy weights omega_{i,p}
// are the dual basis of the cone's generators. Weights are kept integral (the
// 2 pi normalisations are absorbed), xi is a rational vector in N_Q, and the
// evaluation runs in MPFR at a configurable number of decimal digits.

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "branespec/character_ring.hpp"
#include "branespec/errors.hpp"
#include "branespec/exact.hpp"
#include "branespec/lattice_fan.hpp"
#include "branespec/toric_divisor.hpp"

namespace branespec {

using Real = boost::multiprecision::mpfr_float;

/// Sets the default MPFR precision (decimal digits) for the enclosing scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(Real::default_precision()) { Real::default_precision(digits); }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline Real to_real(const Rational& q) {
  return Real(numerator(q).str()) / Real(denominator(q).str());
}

struct FixedPoint {
  std::size_t cone_index;
  Cone cone;
  std::vector<DualVector> isotropy_weights;
};

/// phi_{j,p} per fixed point (maximal-cone order), one entry per summand j.
struct FiberWeightAssignment {
  std::vector<std::vector<DualVector>> per_fixed_point;

  std::size_t summands() const { return per_fixed_point.empty() ? 0 : per_fixed_point.front().size(); }
};

struct IndexOptions {
  unsigned precision_digits = 50;
  /// |<omega, xi>| below this is treated as a pole.
  Rational pole_guard = Rational(1, 1000000);
};

struct IndexEvaluation {
  std::vector<Rational> xi;
  Real value;
};

inline std::vector<FixedPoint> fixed_points(const Fan& fan) {
  std::vector<FixedPoint> out;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    const auto& cone = fan.max_cones()[c];
    out.push_back(FixedPoint{c, cone, dual_cone_generators(fan, cone)});
  }
  return out;
}

/// Single summand: the support-function datum m_sigma at p_sigma.
inline FiberWeightAssignment fiber_weights_from_divisor(const Fan& fan, const TorusDivisor& d) {
  auto sf = support_function(fan, d);
  FiberWeightAssignment fw;
  for (const auto& m : sf.per_cone()) fw.per_fixed_point.push_back({m});
  return fw;
}

/// m_sigma - (1/2) sum_i omega_{i,sigma}. With these weights the fixed-point
/// sum equals (-1)^n sum_i (-1)^i ch H^i(X, O(L)), the holomorphic Euler
/// characteristic of the line bundle as a torus character.
inline FiberWeightAssignment dolbeault_fiber_weights(const Fan& fan, const TorusDivisor& d) {
  auto fw = fiber_weights_from_divisor(fan, d);
  auto fps = fixed_points(fan);
  for (std::size_t p = 0; p < fps.size(); ++p)
    for (const auto& w : fps[p].isotropy_weights)
      for (std::size_t k = 0; k < w.size(); ++k) fw.per_fixed_point[p][0][k] -= w[k] / 2;
  return fw;
}

inline Rational pair_xi(const DualVector& w, const std::vector<Rational>& xi) {
  return dot(std::span<const Rational>(w), std::span<const Rational>(xi));
}

/// sum_j exp(<phi_{j,p}, xi>).
inline Real local_equivariant_chern(const std::vector<DualVector>& fiber_weights, const std::vector<Rational>& xi) {
  Real sum = 0;
  for (const auto& phi : fiber_weights) sum += exp(to_real(pair_xi(phi, xi)));
  return sum;
}

inline void check_pole(const FixedPoint& fp, std::size_t p, const std::vector<Rational>& xi, const Rational& guard) {
  for (std::size_t i = 0; i < fp.isotropy_weights.size(); ++i) {
    Rational x = pair_xi(fp.isotropy_weights[i], xi);
    if (x == 0 || abs(x) < guard)
      throw PoleError("<omega_" + std::to_string(i) + ", xi> = " + x.str() + " at fixed point " + std::to_string(p),
                      p, i);
  }
}

/// prod_i (x_i / 2) / sinh(x_i / 2) with x_i = <omega_{i,p}, xi>.
inline Real local_ahat(const FixedPoint& fp, const std::vector<Rational>& xi, const IndexOptions& opts = {}) {
  PrecisionScope scope(opts.precision_digits);
  check_pole(fp, fp.cone_index, xi, opts.pole_guard);
  Real prod = 1;
  for (const auto& w : fp.isotropy_weights) {
    Real half = to_real(pair_xi(w, xi)) / 2;
    prod *= half / sinh(half);
  }
  return prod;
}

/// Validates the fan and weights once; evaluates at many xi.
class IndexEvaluator {
 public:
  IndexEvaluator(const Fan& fan, FiberWeightAssignment fw, IndexOptions opts = {})
      : rank_(fan.rank()), fw_(std::move(fw)), opts_(opts) {
    if (!is_smooth(fan)) throw DomainError("fan is not smooth", "NonSmoothFan");
    if (!is_complete(fan)) throw DomainError("fan is not complete", "IncompleteFan");
    fps_ = branespec::fixed_points(fan);
    if (fw_.per_fixed_point.size() != fps_.size())
      throw DimensionMismatch("fiber weights given for " + std::to_string(fw_.per_fixed_point.size()) +
                              " fixed points, fan has " + std::to_string(fps_.size()));
    const std::size_t m = fw_.summands();
    for (const auto& at_p : fw_.per_fixed_point) {
      if (at_p.size() != m) throw DimensionMismatch("summand count differs between fixed points");
      for (const auto& phi : at_p)
        if (phi.size() != rank_) throw DimensionMismatch("fiber weight has wrong length");
    }
    for (const auto& fp : fps_)
      if (fp.isotropy_weights.size() != rank_) throw std::logic_error("fixed point without n isotropy weights");
  }

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<FixedPoint>& fixed_points() const noexcept { return fps_; }
  const IndexOptions& options() const noexcept { return opts_; }

  IndexEvaluation evaluate(const std::vector<Rational>& xi) const {
    if (xi.size() != rank_) throw DimensionMismatch("xi has wrong length");
    PrecisionScope scope(opts_.precision_digits);
    for (std::size_t p = 0; p < fps_.size(); ++p) check_pole(fps_[p], p, xi, opts_.pole_guard);
    Real total = 0;
    for (std::size_t p = 0; p < fps_.size(); ++p) {
      Real term = local_equivariant_chern(fw_.per_fixed_point[p], xi);
      for (const auto& w : fps_[p].isotropy_weights) term /= sinh(to_real(pair_xi(w, xi)) / 2);
      total += term;
    }
    total /= pow(Real(2), static_cast<int>(rank_));
    return IndexEvaluation{xi, total};
  }

 private:
  std::size_t rank_;
  FiberWeightAssignment fw_;
  IndexOptions opts_;
  std::vector<FixedPoint> fps_;
};

inline IndexEvaluation evaluate_index(const Fan& fan, const FiberWeightAssignment& fw, const std::vector<Rational>& xi,
                                      const IndexOptions& opts = {}) {
  return IndexEvaluator(fan, fw, opts).evaluate(xi);
}

/// Candidate weights k / denominator with lower <= k / denominator <= upper.
struct WeightBox {
  std::vector<std::int64_t> lower;
  std::vector<std::int64_t> upper;
  std::int64_t denominator = 1;

  /// Numerators k of the candidates, lexicographic.
  std::vector<std::vector<std::int64_t>> numerators() const {
    if (lower.size() != upper.size()) throw DimensionMismatch("weight box bounds differ in length");
    if (denominator < 1) throw SchemaError("weight box denominator must be positive");
    std::vector<std::vector<std::int64_t>> out;
    const std::size_t n = lower.size();
    for (std::size_t i = 0; i < n; ++i)
      if (lower[i] > upper[i]) return out;
    std::vector<std::int64_t> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = lower[i] * denominator;
    while (true) {
      out.push_back(k);
      std::size_t j = n;
      while (true) {
        if (j == 0) return out;
        --j;
        if (k[j] < upper[j] * denominator) {
          ++k[j];
          break;
        }
        k[j] = lower[j] * denominator;
      }
    }
  }
};

struct RecoveryOptions {
  std::size_t samples = 0;  ///< 0: twice the box size
  std::size_t held_out = 20;
  std::uint64_t seed = 20240917;
  /// xi components are drawn from [-spread, spread] on a 1/1024 grid.
  std::int64_t spread = 2;
  double tolerance = 1e-9;
};

/// Weights are numerator / denominator; numerators are stored in `numerators`.
struct RecoveredCharacter {
  CharacterPolynomial numerators;
  std::int64_t denominator = 1;
  Real held_out_residual;
  Real rounding_defect;
};

class IllConditioned : public DomainError {
 public:
  explicit IllConditioned(const std::string& what) : DomainError(what, "IllConditioned") {}
};

namespace detail {

inline std::vector<Rational> random_xi(std::mt19937_64& rng, const IndexEvaluator& ev, std::int64_t spread) {
  std::uniform_int_distribution<std::int64_t> dist(-spread * 1024, spread * 1024);
  while (true) {
    std::vector<Rational> xi(ev.rank());
    for (auto& x : xi) x = Rational(dist(rng), 1024);
    bool pole = false;
    for (const auto& fp : ev.fixed_points())
      for (const auto& w : fp.isotropy_weights) {
        Rational v = pair_xi(w, xi);
        pole = pole || v == 0 || abs(v) < ev.options().pole_guard;
      }
    if (!pole) return xi;
  }
}

inline Real exp_pairing(const std::vector<std::int64_t>& k, std::int64_t den, const std::vector<Rational>& xi) {
  Rational acc = 0;
  for (std::size_t i = 0; i < k.size(); ++i) acc += Rational(k[i]) * xi[i];
  return exp(to_real(acc / den));
}

/// Least squares by Householder QR; throws IllConditioned on rank deficiency.
inline std::vector<Real> least_squares(Matrix<Real> a, std::vector<Real> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t k = 0; k < cols; ++k) {
    Real norm = 0;
    for (std::size_t i = k; i < rows; ++i) norm += a[i][k] * a[i][k];
    norm = sqrt(norm);
    if (norm == 0) throw IllConditioned("interpolation matrix is rank deficient");
    Real alpha = a[k][k] > 0 ? Real(-norm) : norm;
    std::vector<Real> v(rows - k);
    for (std::size_t i = k; i < rows; ++i) v[i - k] = a[i][k];
    v[0] -= alpha;
    Real vnorm2 = 0;
    for (const auto& x : v) vnorm2 += x * x;
    if (vnorm2 == 0) continue;
    for (std::size_t j = k; j < cols; ++j) {
      Real s = 0;
      for (std::size_t i = k; i < rows; ++i) s += v[i - k] * a[i][j];
      s = 2 * s / vnorm2;
      for (std::size_t i = k; i < rows; ++i) a[i][j] -= s * v[i - k];
    }
    Real s = 0;
    for (std::size_t i = k; i < rows; ++i) s += v[i - k] * b[i];
    s = 2 * s / vnorm2;
    for (std::size_t i = k; i < rows; ++i) b[i] -= s * v[i - k];
  }
  std::vector<Real> x(cols);
  for (std::size_t k = cols; k-- > 0;) {
    Real s = b[k];
    for (std::size_t j = k + 1; j < cols; ++j) s -= a[k][j] * x[j];
    if (a[k][k] == 0) throw IllConditioned("interpolation matrix is rank deficient");
    x[k] = s / a[k][k];
  }
  return x;
}

}  // namespace detail

/// Fits evaluate_index(xi) = sum_m c_m exp<m, xi> over the candidate box at
/// seeded random xi, rounds c to integers and checks the fit on fresh
/// held-out samples.
inline RecoveredCharacter recover_virtual_character(const Fan& fan, const FiberWeightAssignment& fw,
                                                    const WeightBox& box, const RecoveryOptions& ropts = {},
                                                    const IndexOptions& iopts = {}) {
  IndexEvaluator ev(fan, fw, iopts);
  if (box.lower.size() != fan.rank()) throw DimensionMismatch("weight box rank does not match the fan");
  auto cands = box.numerators();
  if (cands.empty()) throw SchemaError("weight box is empty");
  const std::size_t samples = ropts.samples == 0 ? 2 * cands.size() : ropts.samples;
  if (samples < cands.size())
    throw SchemaError("need at least " + std::to_string(cands.size()) + " samples for the weight box");

  PrecisionScope scope(iopts.precision_digits);
  std::mt19937_64 rng(ropts.seed);
  Matrix<Real> a(samples, std::vector<Real>(cands.size()));
  std::vector<Real> b(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    auto xi = detail::random_xi(rng, ev, ropts.spread);
    b[s] = ev.evaluate(xi).value;
    for (std::size_t k = 0; k < cands.size(); ++k) a[s][k] = detail::exp_pairing(cands[k], box.denominator, xi);
  }
  auto coeffs = detail::least_squares(std::move(a), std::move(b));

  RecoveredCharacter out;
  out.rounding_defect = 0;
  std::vector<std::int64_t> rounded(cands.size());
  for (std::size_t k = 0; k < cands.size(); ++k) {
    Real r = round(coeffs[k]);
    Real defect = abs(coeffs[k] - r);
    if (defect > out.rounding_defect) out.rounding_defect = defect;
    rounded[k] = r.convert_to<std::int64_t>();
  }

  out.held_out_residual = 0;
  for (std::size_t s = 0; s < ropts.held_out; ++s) {
    auto xi = detail::random_xi(rng, ev, ropts.spread);
    Real fit = 0;
    for (std::size_t k = 0; k < cands.size(); ++k)
      if (rounded[k] != 0) fit += rounded[k] * detail::exp_pairing(cands[k], box.denominator, xi);
    Real err = abs(ev.evaluate(xi).value - fit);
    if (err > out.held_out_residual) out.held_out_residual = err;
  }
  if (out.held_out_residual > Real(ropts.tolerance))
    throw IllConditioned("held-out residual " + out.held_out_residual.str(6) + " exceeds " +
                         std::to_string(ropts.tolerance) + "; enlarge the weight box or its denominator");

  // Reduce the common denominator where every surviving weight allows it.
  std::int64_t g = box.denominator;
  for (std::size_t k = 0; k < cands.size(); ++k)
    if (rounded[k] != 0)
      for (auto x : cands[k]) g = std::gcd(g, x);
  out.denominator = box.denominator / g;
  out.numerators = CharacterPolynomial(fan.rank());
  for (std::size_t k = 0; k < cands.size(); ++k) {
    if (rounded[k] == 0) continue;
    auto w = cands[k];
    for (auto& x : w) x /= g;
    out.numerators.add_term(w, rounded[k]);
  }
  return out;
}

}  // namespace branespec
