#pragma once

// Classical root systems A_n, B_n, C_n, D_n in their standard Euclidean
// realizations. Weights are integer vectors in the fundamental-weight basis,
// so coordinate i is the pairing with the simple coroot alpha_i^vee and
// simple reflections act by s_i(mu) = mu - mu_i * alpha_i.

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "branespec/errors.hpp"
#include "branespec/exact.hpp"

namespace branespec {

enum class Family { A, B, C, D };

inline char family_letter(Family f) { return "ABCD"[static_cast<int>(f)]; }

inline Family parse_family(const std::string& s) {
  if (s == "A" || s == "a") return Family::A;
  if (s == "B" || s == "b") return Family::B;
  if (s == "C" || s == "c") return Family::C;
  if (s == "D" || s == "d") return Family::D;
  throw SchemaError("unsupported root system family '" + s + "'", "UnsupportedRootSystem");
}

/// Fundamental-weight coordinates.
using Weight = std::vector<std::int64_t>;
using EuclideanVector = std::vector<Rational>;

struct PositiveRoot {
  EuclideanVector euclidean;
  std::vector<std::int64_t> simple_coords;  ///< alpha = sum c_i alpha_i, c_i >= 0
  Weight weight;                            ///< alpha in fundamental-weight coordinates
};

class RootSystem {
 public:
  RootSystem(Family family, std::size_t rank) : family_(family), rank_(rank) {
    const std::size_t min_rank = family == Family::A ? 1 : family == Family::D ? 3 : 2;
    if (rank < min_rank || rank > 8)
      throw DomainError(std::string("unsupported root system ") + family_letter(family) + std::to_string(rank),
                        "UnsupportedRootSystem");
    build();
  }

  Family family() const noexcept { return family_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::string name() const { return std::string(1, family_letter(family_)) + std::to_string(rank_); }

  const std::vector<EuclideanVector>& simple_roots() const noexcept { return simple_; }
  const std::vector<PositiveRoot>& positive_roots() const noexcept { return positive_; }
  const std::vector<EuclideanVector>& fundamental_weights() const noexcept { return fundamental_; }
  /// cartan()[i][j] = <alpha_i, alpha_j^vee>; row i is alpha_i in weight coordinates.
  const Matrix<std::int64_t>& cartan() const noexcept { return cartan_; }

  static Rational euclidean_inner(const EuclideanVector& x, const EuclideanVector& y) {
    Rational acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
  }

  EuclideanVector to_euclidean(const Weight& mu) const {
    check(mu);
    EuclideanVector v(dim_, Rational(0));
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) v[k] += Rational(mu[i]) * fundamental_[i][k];
    return v;
  }

  /// W-invariant inner product (mu, alpha) of the Euclidean realization.
  Rational inner(const Weight& mu, const PositiveRoot& alpha) const {
    return euclidean_inner(to_euclidean(mu), alpha.euclidean);
  }

  Rational inner(const Weight& x, const Weight& y) const {
    check(x);
    check(y);
    Rational acc = 0;
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) acc += Rational(x[i] * y[j]) * weight_gram_[i][j];
    return acc;
  }

  /// Coordinates of mu in the basis of simple roots.
  std::vector<Rational> simple_root_coords(const Weight& mu) const {
    check(mu);
    std::vector<Rational> c(rank_, Rational(0));
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) c[j] += Rational(mu[i]) * inverse_cartan_[i][j];
    return c;
  }

  Weight reflect(const Weight& mu, std::size_t i) const {
    check(mu);
    Weight out = mu;
    for (std::size_t j = 0; j < rank_; ++j) out[j] -= mu[i] * cartan_[i][j];
    return out;
  }

  void check(const Weight& mu) const {
    if (mu.size() != rank_)
      throw DimensionMismatch("weight of length " + std::to_string(mu.size()) + " for rank " + std::to_string(rank_));
  }

 private:
  void build() {
    const std::size_t n = rank_;
    dim_ = family_ == Family::A ? n + 1 : n;
    auto e = [&](std::size_t i) {
      EuclideanVector v(dim_, Rational(0));
      v[i] = 1;
      return v;
    };
    auto add = [](EuclideanVector a, const EuclideanVector& b, int s) {
      for (std::size_t k = 0; k < a.size(); ++k) a[k] += s * b[k];
      return a;
    };
    auto scale = [](EuclideanVector a, int s) {
      for (auto& x : a) x *= s;
      return a;
    };

    std::vector<EuclideanVector> roots;
    const std::size_t span = family_ == Family::A ? n + 1 : n;
    for (std::size_t i = 0; i < span; ++i)
      for (std::size_t j = i + 1; j < span; ++j) {
        roots.push_back(add(e(i), e(j), -1));
        if (family_ != Family::A) roots.push_back(add(e(i), e(j), 1));
      }
    if (family_ == Family::B)
      for (std::size_t i = 0; i < n; ++i) roots.push_back(e(i));
    if (family_ == Family::C)
      for (std::size_t i = 0; i < n; ++i) roots.push_back(scale(e(i), 2));

    for (std::size_t i = 0; i + 1 < n; ++i) simple_.push_back(add(e(i), e(i + 1), -1));
    switch (family_) {
      case Family::A: simple_.push_back(add(e(n - 1), e(n), -1)); break;
      case Family::B: simple_.push_back(e(n - 1)); break;
      case Family::C: simple_.push_back(scale(e(n - 1), 2)); break;
      case Family::D: simple_.push_back(add(e(n - 2), e(n - 1), 1)); break;
    }

    cartan_.assign(n, std::vector<std::int64_t>(n));
    Matrix<Rational> gram(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        gram[i][j] = euclidean_inner(simple_[i], simple_[j]);
        Rational c = 2 * gram[i][j] / euclidean_inner(simple_[j], simple_[j]);
        cartan_[i][j] = to_int64(numerator(c));
      }
    auto gram_inv = *inverse(gram);
    Matrix<Rational> cartan_q(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cartan_q[i][j] = cartan_[i][j];
    inverse_cartan_ = *inverse(cartan_q);

    // fundamental weight i = sum_k (A^-1)_{ik} alpha_k
    fundamental_.assign(n, EuclideanVector(dim_, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t d = 0; d < dim_; ++d) fundamental_[i][d] += inverse_cartan_[i][k] * simple_[k][d];
    weight_gram_.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) weight_gram_[i][j] = euclidean_inner(fundamental_[i], fundamental_[j]);

    for (auto& r : roots) {
      std::vector<Rational> rhs(n);
      for (std::size_t i = 0; i < n; ++i) rhs[i] = euclidean_inner(r, simple_[i]);
      PositiveRoot pr;
      pr.simple_coords.assign(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        Rational c = 0;
        for (std::size_t j = 0; j < n; ++j) c += gram_inv[i][j] * rhs[j];
        if (!is_integral(c) || c < 0) throw std::logic_error("root realization is not positive-integral");
        pr.simple_coords[i] = to_int64(numerator(c));
      }
      pr.weight.assign(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) pr.weight[j] += pr.simple_coords[i] * cartan_[i][j];
      pr.euclidean = std::move(r);
      positive_.push_back(std::move(pr));
    }
  }

  Family family_;
  std::size_t rank_;
  std::size_t dim_ = 0;
  std::vector<EuclideanVector> simple_;
  std::vector<PositiveRoot> positive_;
  std::vector<EuclideanVector> fundamental_;
  Matrix<std::int64_t> cartan_;
  Matrix<Rational> inverse_cartan_;
  Matrix<Rational> weight_gram_;
};

inline RootSystem build_root_system(Family family, std::size_t rank) { return RootSystem(family, rank); }

/// Half-sum of the positive roots, in fundamental-weight coordinates.
inline Weight rho(const RootSystem& rs) {
  EuclideanVector sum(rs.dimension(), Rational(0));
  for (const auto& a : rs.positive_roots())
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += a.euclidean[k] / 2;
  Weight out(rs.rank());
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    const auto& s = rs.simple_roots()[i];
    Rational c = 2 * RootSystem::euclidean_inner(sum, s) / RootSystem::euclidean_inner(s, s);
    out[i] = to_int64(numerator(c));
  }
  return out;
}

inline Weight add(const Weight& a, const Weight& b) {
  Weight out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.at(i);
  return out;
}

inline Weight subtract(const Weight& a, const Weight& b) {
  Weight out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.at(i);
  return out;
}

inline bool is_dominant(const Weight& mu) {
  for (auto x : mu)
    if (x < 0) return false;
  return true;
}

/// i(lambda) = #{ alpha > 0 : (lambda + rho, alpha) < 0 }.
inline std::int64_t i_lambda(const RootSystem& rs, const Weight& lambda) {
  Weight shifted = add(lambda, rho(rs));
  std::int64_t count = 0;
  for (const auto& a : rs.positive_roots())
    if (rs.inner(shifted, a) < 0) ++count;
  return count;
}

/// lambda + rho is orthogonal to some root.
inline bool is_singular(const RootSystem& rs, const Weight& lambda) {
  Weight shifted = add(lambda, rho(rs));
  for (const auto& a : rs.positive_roots())
    if (rs.inner(shifted, a) == 0) return true;
  return false;
}

struct DominantForm {
  std::vector<std::size_t> word;  ///< 1-based simple reflections, in the order applied
  Weight result;
};

/// Reflects at the lowest-index simple root with negative pairing until the
/// weight is dominant. Works for singular weights too.
inline DominantForm dominant_form(const RootSystem& rs, const Weight& mu) {
  DominantForm out{{}, mu};
  rs.check(mu);
  while (true) {
    std::size_t i = 0;
    while (i < rs.rank() && out.result[i] >= 0) ++i;
    if (i == rs.rank()) return out;
    out.result = rs.reflect(out.result, i);
    out.word.push_back(i + 1);
  }
}

/// For regular mu: w with w(mu) strictly dominant, as a reduced word whose
/// length is #{ alpha > 0 : (mu, alpha) < 0 }.
inline DominantForm make_dominant(const RootSystem& rs, const Weight& mu) {
  for (const auto& a : rs.positive_roots())
    if (rs.inner(mu, a) == 0) throw DomainError("weight is singular", "SingularWeight");
  return dominant_form(rs, mu);
}

/// prod_{alpha > 0} (mu + rho, alpha) / (rho, alpha).
inline std::int64_t weyl_dimension(const RootSystem& rs, const Weight& mu) {
  rs.check(mu);
  if (!is_dominant(mu)) throw DomainError("weight is not dominant", "NonDominantWeight");
  Weight r = rho(rs);
  Weight shifted = add(mu, r);
  Rational dim = 1;
  for (const auto& a : rs.positive_roots()) dim *= rs.inner(shifted, a) / rs.inner(r, a);
  if (!is_integral(dim)) throw std::logic_error("Weyl dimension is not integral");
  return to_int64(numerator(dim));
}

/// W-orbit of mu, generated by simple reflections.
inline std::set<Weight> weyl_orbit(const RootSystem& rs, const Weight& mu) {
  std::set<Weight> seen{mu};
  std::deque<Weight> queue{mu};
  while (!queue.empty()) {
    Weight w = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      if (w[i] == 0) continue;
      Weight next = rs.reflect(w, i);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return seen;
}

}  // namespace branespec
