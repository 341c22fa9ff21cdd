#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "branespec/lattice_fan.hpp"
#include "branespec/standard_fans.hpp"
#include "oracles.hpp"

using namespace branespec;

namespace {

Fan p2() { return fans::projective_space(2); }

// Permutes rays and cones; returns the relabeled fan.
Fan relabel(const Fan& f, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(f.ray_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<LatticeVector> rays(f.ray_count());
  for (std::size_t i = 0; i < perm.size(); ++i) rays[perm[i]] = f.ray(i);
  std::vector<Cone> cones;
  for (const auto& c : f.max_cones()) {
    Cone d;
    for (auto r : c.rays) d.rays.push_back(perm[r]);
    std::shuffle(d.rays.begin(), d.rays.end(), rng);
    cones.push_back(d);
  }
  std::shuffle(cones.begin(), cones.end(), rng);
  return Fan(f.rank(), rays, cones);
}

}  // namespace

TEST(Pairing, Examples) {
  EXPECT_EQ(pairing({0, 0}, {1, 5}), 0);
  EXPECT_EQ(pairing({1, 0}, {1, 0}), 1);
  EXPECT_EQ(pairing({2, -1}, {3, 4}), 2);
  EXPECT_EQ(pairing({make_rational(1, 2), 3}, {3, -1}), make_rational(-3, 2));
}

TEST(Pairing, LengthMismatch) { EXPECT_THROW(pairing({1, 2}, {1}), DimensionMismatch); }

TEST(FanValidation, RejectsBadInput) {
  EXPECT_THROW(Fan(2, {{2, 0}, {0, 1}}, {Cone{{0, 1}}}), InvalidFan);       // not primitive
  EXPECT_THROW(Fan(2, {{0, 0}, {0, 1}}, {Cone{{0, 1}}}), InvalidFan);       // zero
  EXPECT_THROW(Fan(2, {{1, 0}, {0, 1}, {1, 1}}, {Cone{{0, 1}}}), InvalidFan);  // unused ray
  EXPECT_THROW(Fan(2, {{1, 0}, {0, 1}}, {Cone{{0, 2}}}), InvalidFan);       // index out of range
  EXPECT_THROW(Fan(2, {{1, 0}, {0, 1}}, {Cone{{0, 0}}, Cone{{1}}}), InvalidFan);  // repeated ray
  EXPECT_THROW(Fan(2, {{1, 0}, {0, 1, 3}}, {Cone{{0, 1}}}), InvalidFan);    // wrong length
  EXPECT_THROW(Fan(2, {{1, 0}, {-1, 0}}, {Cone{{0, 1}}}), InvalidFan);      // dependent
  // overlapping cones: cone(e1, e2) and cone(e1+e2... , e2) share interior
  EXPECT_THROW(Fan(2, {{1, 0}, {0, 1}, {1, 1}}, {Cone{{0, 1}}, Cone{{2, 1}}}), InvalidFan);
}

TEST(IsSmooth, Examples) {
  EXPECT_TRUE(is_smooth(p2()));
  EXPECT_FALSE(is_smooth(Fan(2, {{1, 0}, {1, 2}}, {Cone{{0, 1}}})));
  EXPECT_TRUE(is_smooth(Fan(0, {}, {})));
  // lower-dimensional cone: gcd of maximal minors
  EXPECT_TRUE(is_smooth(Fan(3, {{1, 2, 3}}, {Cone{{0}}})));
  EXPECT_FALSE(is_smooth(Fan(3, {{1, 0, 0}, {1, 2, 0}}, {Cone{{0, 1}}})));
}

TEST(IsComplete, Examples) {
  EXPECT_TRUE(is_complete(fans::projective_line()));
  EXPECT_FALSE(is_complete(Fan(2, {{1, 0}, {0, 1}}, {Cone{{0, 1}}})));
  EXPECT_TRUE(is_complete(fans::product(fans::projective_line(), fans::projective_line())));
  EXPECT_TRUE(is_complete(p2()));
  EXPECT_TRUE(is_complete(fans::hirzebruch(1)));
  EXPECT_TRUE(is_complete(fans::projective_space(3)));
  // half of P^2: facets unpaired
  EXPECT_FALSE(is_complete(Fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {Cone{{0, 1}}, Cone{{1, 2}}})));
}

TEST(DualConeGenerators, Examples) {
  Fan quad(2, {{1, 0}, {0, 1}}, {Cone{{0, 1}}});
  auto d = dual_cone_generators(quad, quad.max_cones()[0]);
  EXPECT_EQ(d, (std::vector<DualVector>{{1, 0}, {0, 1}}));

  Fan p1 = fans::projective_line();
  EXPECT_EQ(dual_cone_generators(p1, p1.max_cones()[0]), (std::vector<DualVector>{{1}}));

  Fan f = p2();
  Cone c{{1, 2}};
  auto w = dual_cone_generators(f, c);
  ASSERT_EQ(w.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(pairing(w[i], f.ray(c.rays[j])), i == j ? 1 : 0);
}

TEST(DualConeGenerators, Errors) {
  Fan lower(2, {{1, 0}}, {Cone{{0}}});
  EXPECT_THROW(dual_cone_generators(lower, lower.max_cones()[0]), DomainError);
  Fan singular(2, {{1, 0}, {1, 2}}, {Cone{{0, 1}}});
  try {
    dual_cone_generators(singular, singular.max_cones()[0]);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.name(), "NonSmoothCone");
  }
}

TEST(DualConeGenerators, IdentityPairingOnAllTestFans) {
  for (const auto& [name, fan] : oracle::test_fans())
    for (const auto& c : fan.max_cones()) {
      auto w = dual_cone_generators(fan, c);
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < c.rays.size(); ++j)
          EXPECT_EQ(pairing(w[i], fan.ray(c.rays[j])), i == j ? 1 : 0) << name;
    }
}

TEST(FanProperties, RelabelingInvariance) {
  std::mt19937_64 rng(7);
  std::vector<Fan> cases;
  for (const auto& nf : oracle::test_fans()) cases.push_back(nf.fan);
  cases.push_back(Fan(2, {{1, 0}, {1, 2}}, {Cone{{0, 1}}}));
  cases.push_back(Fan(2, {{1, 0}, {0, 1}}, {Cone{{0, 1}}}));
  for (const auto& f : cases)
    for (int t = 0; t < 10; ++t) {
      Fan g = relabel(f, rng);
      EXPECT_EQ(is_smooth(f), is_smooth(g));
      EXPECT_EQ(is_complete(f), is_complete(g));
    }
}

TEST(FanProperties, FingerprintDistinguishesFans) {
  EXPECT_NE(p2().fingerprint(), fans::hirzebruch(1).fingerprint());
  EXPECT_EQ(p2().fingerprint(), fans::projective_space(2).fingerprint());
}

TEST(Exact, DeterminantAndRank) {
  EXPECT_EQ(determinant({{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant({{2, 0, 1}, {1, 3, 2}, {1, 1, 2}}), 6);
  EXPECT_EQ(determinant({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}), -1);
  EXPECT_EQ(determinant({{1, 2}, {2, 4}}), 0);
  EXPECT_EQ(rank(Matrix<Integer>{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}), 2u);
  EXPECT_EQ(make_rational(3, -2), Rational(-3) / 2);
  EXPECT_EQ(parse_rational("-7/14"), make_rational(-1, 2));
  EXPECT_THROW(parse_rational("1/0"), SchemaError);
  EXPECT_THROW(parse_rational("x"), SchemaError);
  EXPECT_EQ(floor_div(make_rational(-3, 2)), -2);
  EXPECT_EQ(ceil_div(make_rational(-3, 2)), -1);
}

TEST(Exact, LatticePointsOfTriangle) {
  // x >= 0, y >= 0, x + y <= 2
  std::vector<HalfSpace> hs{{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -2}};
  auto e = lattice_points(hs, 2);
  ASSERT_TRUE(e.bounded);
  EXPECT_EQ(e.points.size(), 6u);
  std::vector<HalfSpace> strip{{{1, 0}, 0}, {{-1, 0}, -1}};
  EXPECT_FALSE(lattice_points(strip, 2).bounded);
  std::vector<HalfSpace> empty{{{1}, 1}, {{-1}, 0}};
  auto none = lattice_points(empty, 1);
  EXPECT_TRUE(none.bounded);
  EXPECT_TRUE(none.points.empty());
}
