#pragma once

// Formal characters: finitely supported integer functions on a weight
// lattice (Laurent polynomials), with Freudenthal's recursion for the
// irreducible characters and leading-term decomposition into irreducibles.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "branespec/errors.hpp"
#include "branespec/exact.hpp"
#include "branespec/lie_theory.hpp"
#include "branespec/toric_cohomology.hpp"

namespace branespec {

class CharacterPolynomial {
 public:
  using Terms = std::map<std::vector<std::int64_t>, std::int64_t>;

  CharacterPolynomial() = default;
  explicit CharacterPolynomial(std::size_t rank) : rank_(rank) {}

  static CharacterPolynomial trivial(std::size_t rank) { return monomial(std::vector<std::int64_t>(rank, 0)); }

  static CharacterPolynomial monomial(const std::vector<std::int64_t>& weight, std::int64_t coefficient = 1) {
    CharacterPolynomial p(weight.size());
    p.add_term(weight, coefficient);
    return p;
  }

  std::size_t rank() const noexcept { return rank_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const std::vector<std::int64_t>& weight, std::int64_t coefficient) {
    if (weight.size() != rank_)
      throw DimensionMismatch("weight of length " + std::to_string(weight.size()) + " in a rank " +
                              std::to_string(rank_) + " character");
    if (coefficient == 0) return;
    auto& c = terms_[weight];
    c += coefficient;
    if (c == 0) terms_.erase(weight);
  }

  std::int64_t coefficient(const std::vector<std::int64_t>& weight) const {
    auto it = terms_.find(weight);
    return it == terms_.end() ? 0 : it->second;
  }

  /// Value at the identity: the (virtual) dimension.
  std::int64_t dimension() const {
    std::int64_t s = 0;
    for (const auto& [w, c] : terms_) s += c;
    return s;
  }

  CharacterPolynomial& operator+=(const CharacterPolynomial& o) {
    same_lattice(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  CharacterPolynomial& operator-=(const CharacterPolynomial& o) {
    same_lattice(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  CharacterPolynomial& operator*=(std::int64_t k) {
    if (k == 0) terms_.clear();
    for (auto& [w, c] : terms_) c *= k;
    return *this;
  }
  friend CharacterPolynomial operator+(CharacterPolynomial a, const CharacterPolynomial& b) { return a += b; }
  friend CharacterPolynomial operator-(CharacterPolynomial a, const CharacterPolynomial& b) { return a -= b; }
  friend CharacterPolynomial operator*(CharacterPolynomial a, std::int64_t k) { return a *= k; }
  friend bool operator==(const CharacterPolynomial&, const CharacterPolynomial&) = default;

  void same_lattice(const CharacterPolynomial& o) const {
    if (o.rank_ != rank_)
      throw DimensionMismatch("characters on lattices of rank " + std::to_string(rank_) + " and " +
                              std::to_string(o.rank_));
  }

 private:
  std::size_t rank_ = 0;
  Terms terms_;
};

/// Convolution product.
inline CharacterPolynomial multiply(const CharacterPolynomial& a, const CharacterPolynomial& b) {
  a.same_lattice(b);
  CharacterPolynomial out(a.rank());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      std::vector<std::int64_t> w(wa.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = wa[i] + wb[i];
      out.add_term(w, ca * cb);
    }
  return out;
}

/// Dual character: weight w moves to -w.
inline CharacterPolynomial conjugate(const CharacterPolynomial& a) {
  CharacterPolynomial out(a.rank());
  for (const auto& [w, c] : a.terms()) {
    std::vector<std::int64_t> neg(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
    out.add_term(neg, c);
  }
  return out;
}

/// Dominant weights of V(mu) with their multiplicities (Freudenthal).
inline std::map<Weight, std::int64_t> dominant_multiplicities(const RootSystem& rs, const Weight& mu) {
  rs.check(mu);
  if (!is_dominant(mu)) throw DomainError("highest weight is not dominant", "NonDominantWeight");

  // Every dominant nu < mu is reachable from mu by subtracting positive
  // roots through dominant weights.
  std::set<Weight> dominant{mu};
  std::vector<Weight> frontier{mu};
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const auto& w : frontier)
      for (const auto& a : rs.positive_roots()) {
        Weight cand = subtract(w, a.weight);
        if (is_dominant(cand) && dominant.insert(cand).second) next.push_back(cand);
      }
    frontier = std::move(next);
  }

  auto depth = [&](const Weight& nu) {
    Rational h = 0;
    for (const auto& c : rs.simple_root_coords(subtract(mu, nu))) h += c;
    return h;
  };
  std::vector<Weight> order(dominant.begin(), dominant.end());
  std::stable_sort(order.begin(), order.end(), [&](const Weight& a, const Weight& b) { return depth(a) < depth(b); });

  const Weight r = rho(rs);
  const Weight top = add(mu, r);
  const Rational top_norm = rs.inner(top, top);
  std::map<Weight, std::int64_t> mult;
  for (const auto& nu : order) {
    if (nu == mu) {
      mult[nu] = 1;
      continue;
    }
    Rational sum = 0;
    for (const auto& a : rs.positive_roots()) {
      Weight x = add(nu, a.weight);
      while (true) {
        auto it = mult.find(dominant_form(rs, x).result);
        if (it == mult.end()) break;
        sum += rs.inner(x, a.weight) * it->second;
        x = add(x, a.weight);
      }
    }
    Weight shifted = add(nu, r);
    Rational value = 2 * sum / (top_norm - rs.inner(shifted, shifted));
    if (!is_integral(value)) throw std::logic_error("Freudenthal recursion produced a non-integer");
    mult[nu] = to_int64(numerator(value));
  }
  return mult;
}

/// Full formal character of the irreducible representation V(mu).
inline CharacterPolynomial weyl_character(const RootSystem& rs, const Weight& mu) {
  CharacterPolynomial out(rs.rank());
  for (const auto& [nu, m] : dominant_multiplicities(rs, mu))
    if (m != 0)
      for (const auto& w : weyl_orbit(rs, nu)) out.add_term(w, m);
  return out;
}

struct DecompositionResult {
  std::map<std::vector<std::int64_t>, std::int64_t> multiplicities;
  friend bool operator==(const DecompositionResult&, const DecompositionResult&) = default;
};

class NegativeMultiplicity : public DomainError {
 public:
  explicit NegativeMultiplicity(const std::string& what) : DomainError(what, "NegativeMultiplicity") {}
};

class NonDominantLeading : public DomainError {
 public:
  explicit NonDominantLeading(const std::string& what) : DomainError(what, "NonDominantLeading") {}
};

inline std::string format_weight(const std::vector<std::int64_t>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

/// Repeatedly strips the highest term, in the order "lexicographic on
/// simple-root coordinates" (which refines the dominance order), and
/// subtracts its multiple of the irreducible character.
inline DecompositionResult decompose(const RootSystem& rs, CharacterPolynomial chi) {
  if (chi.rank() != rs.rank()) throw DimensionMismatch("character rank does not match the root system");
  DecompositionResult out;
  std::map<Weight, CharacterPolynomial> cache;
  while (!chi.is_zero()) {
    const Weight* lead = nullptr;
    std::vector<Rational> lead_key;
    for (const auto& [w, c] : chi.terms()) {
      auto key = rs.simple_root_coords(w);
      if (!lead || key > lead_key) {
        lead = &w;
        lead_key = std::move(key);
      }
    }
    Weight top = *lead;
    std::int64_t n = chi.coefficient(top);
    if (!is_dominant(top))
      throw NonDominantLeading("leading weight " + format_weight(top) + " is not dominant; input is not W-symmetric");
    if (n < 0)
      throw NegativeMultiplicity("irreducible " + format_weight(top) + " would enter with multiplicity " +
                                 std::to_string(n));
    auto it = cache.find(top);
    if (it == cache.end()) it = cache.emplace(top, weyl_character(rs, top)).first;
    chi -= it->second * n;
    out.multiplicities[top] = n;
  }
  return out;
}

/// Torus case: every monomial is irreducible.
inline DecompositionResult decompose_torus(const CharacterPolynomial& chi) {
  DecompositionResult out;
  for (const auto& [w, c] : chi.terms()) {
    if (c < 0)
      throw NegativeMultiplicity("torus character " + format_weight(w) + " has coefficient " + std::to_string(c));
    out.multiplicities[w] = c;
  }
  return out;
}

inline CharacterPolynomial reconstruct(const RootSystem& rs, const DecompositionResult& d) {
  CharacterPolynomial out(rs.rank());
  for (const auto& [w, n] : d.multiplicities) out += weyl_character(rs, w) * n;
  return out;
}

inline CharacterPolynomial reconstruct_torus(std::size_t rank, const DecompositionResult& d) {
  CharacterPolynomial out(rank);
  for (const auto& [w, n] : d.multiplicities) out.add_term(w, n);
  return out;
}

/// One torus character per cohomological degree.
inline std::vector<CharacterPolynomial> spectrum_to_characters(const GradedSpectrum& spec) {
  std::vector<CharacterPolynomial> out;
  for (std::size_t i = 0; i < spec.degree_count(); ++i) {
    CharacterPolynomial chi(spec.rank());
    for (const auto& [m, k] : spec.degree(i)) chi.add_term(m, k);
    out.push_back(std::move(chi));
  }
  return out;
}

}  // namespace branespec
