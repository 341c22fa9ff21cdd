#pragma once

// Borel-Bott-Weil spectra H^i(G_C/P, O(V)) for the homogeneous bundle of an
// irreducible Levi representation with highest weight lambda.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "branespec/errors.hpp"
#include "branespec/lie_theory.hpp"

namespace branespec {

/// Gamma: 1-based simple-root indices spanning the Levi factor. Empty for
/// the full flag manifold G_C/B.
struct ParabolicSelection {
  std::set<std::size_t> gamma;

  void check(const RootSystem& rs) const {
    for (auto i : gamma)
      if (i < 1 || i > rs.rank())
        throw SchemaError("parabolic index " + std::to_string(i) + " outside 1.." + std::to_string(rs.rank()));
  }
};

class NotLeviDominant : public DomainError {
 public:
  explicit NotLeviDominant(std::size_t simple_root)
      : DomainError("<lambda, alpha_" + std::to_string(simple_root) + "^vee> < 0 for a Levi simple root",
                    "NotLeviDominant"),
        simple_root_(simple_root) {}
  std::size_t simple_root() const noexcept { return simple_root_; }

 private:
  std::size_t simple_root_;
};

struct Concentrated {
  std::int64_t degree;
  Weight highest_weight;
  std::int64_t dimension;
  std::vector<std::size_t> weyl_word;

  friend bool operator==(const Concentrated&, const Concentrated&) = default;
};

/// Either every St^i vanishes (nullopt) or the spectrum sits in one degree.
struct BBWResult {
  std::optional<Concentrated> concentrated;

  bool all_vanish() const noexcept { return !concentrated.has_value(); }
  friend bool operator==(const BBWResult&, const BBWResult&) = default;
};

inline BBWResult bbw_spectrum(const RootSystem& rs, const ParabolicSelection& parabolic, const Weight& lambda) {
  rs.check(lambda);
  parabolic.check(rs);
  for (auto i : parabolic.gamma)
    if (lambda[i - 1] < 0) throw NotLeviDominant(i);
  if (is_singular(rs, lambda)) return {};
  Weight r = rho(rs);
  auto dom = make_dominant(rs, add(lambda, r));
  Concentrated c;
  c.degree = i_lambda(rs, lambda);
  c.highest_weight = subtract(dom.result, r);
  c.dimension = weyl_dimension(rs, c.highest_weight);
  c.weyl_word = std::move(dom.word);
  return BBWResult{std::move(c)};
}

/// sum_i (-1)^i dim St^i.
inline std::int64_t euler_characteristic_bbw(const RootSystem& rs, const ParabolicSelection& parabolic,
                                             const Weight& lambda) {
  auto res = bbw_spectrum(rs, parabolic, lambda);
  if (res.all_vanish()) return 0;
  return (res.concentrated->degree % 2 == 0 ? 1 : -1) * res.concentrated->dimension;
}

}  // namespace branespec
