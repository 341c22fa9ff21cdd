#include <gtest/gtest.h>

#include <random>

#include "branespec/standard_fans.hpp"
#include "branespec/toric_cohomology.hpp"
#include "oracles.hpp"

using namespace branespec;

namespace {

std::vector<Character> support(const GradedSpectrum& s, std::size_t i) {
  std::vector<Character> out;
  for (const auto& [m, k] : s.degree(i)) out.push_back(m);
  return out;
}

FailureComplex complex_of(std::vector<std::size_t> verts, std::vector<std::vector<std::size_t>> faces) {
  FailureComplex fc{std::move(verts), {{}}};
  for (auto& f : faces) fc.faces.push_back(std::move(f));
  return fc;
}

}  // namespace

TEST(FailureRays, Examples) {
  Fan p1 = fans::projective_line();
  TorusDivisor d(p1, {2, 0});
  EXPECT_TRUE(failure_rays(p1, TorusDivisor::zero(p1), {0}).empty());
  EXPECT_EQ(failure_rays(p1, d, {1}), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(failure_rays(p1, d, {2}), (std::vector<std::size_t>{1}));
}

TEST(ReducedCohomology, Examples) {
  EXPECT_EQ(reduced_cohomology_dims(complex_of({}, {}), 2), (std::vector<std::int64_t>{1, 0, 0}));
  EXPECT_EQ(reduced_cohomology_dims(complex_of({0, 1}, {{0}, {1}}), 2), (std::vector<std::int64_t>{0, 1, 0}));
  auto hollow = complex_of({0, 1, 2}, {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(reduced_cohomology_dims(hollow, 2), (std::vector<std::int64_t>{0, 0, 1}));
  auto filled = hollow;
  filled.faces.push_back({0, 1, 2});
  EXPECT_EQ(reduced_cohomology_dims(filled, 3), (std::vector<std::int64_t>{0, 0, 0, 0}));
  auto point = complex_of({4}, {{4}});
  EXPECT_EQ(reduced_cohomology_dims(point, 1), (std::vector<std::int64_t>{0, 0}));
}

TEST(FailureComplex, FromFan) {
  Fan p2 = fans::projective_space(2);
  auto all = failure_complex(p2, {0, 1, 2});
  EXPECT_EQ(all.faces.size(), 7u);  // empty, 3 vertices, 3 edges
  EXPECT_EQ(reduced_cohomology_dims(all, 2), (std::vector<std::int64_t>{0, 0, 1}));
  Fan p1 = fans::projective_line();
  EXPECT_EQ(reduced_cohomology_dims(failure_complex(p1, {0, 1}), 1), (std::vector<std::int64_t>{0, 1}));
}

TEST(GradedSpectrum, Examples) {
  Fan p2 = fans::projective_space(2);
  auto o1 = graded_string_spectrum(p2, TorusDivisor(p2, {-1, 0, 0}));
  EXPECT_EQ(support(o1, 0), (std::vector<Character>{{-1, 0}, {-1, 1}, {0, 0}}));
  for (const auto& [m, k] : o1.degree(0)) EXPECT_EQ(k, 1);
  EXPECT_TRUE(o1.higher_degrees_vanish());

  Fan p1 = fans::projective_line();
  auto om2 = graded_string_spectrum(p1, TorusDivisor(p1, {2, 0}));
  EXPECT_EQ(om2.dimension(0), 0);
  EXPECT_EQ(support(om2, 1), (std::vector<Character>{{1}}));
  EXPECT_EQ(om2.multiplicity(1, {1}), 1);

  for (const auto& [name, fan] : oracle::test_fans()) {
    auto s = graded_string_spectrum(fan, TorusDivisor::zero(fan));
    EXPECT_EQ(support(s, 0), (std::vector<Character>{Character(fan.rank(), 0)})) << name;
    EXPECT_TRUE(s.higher_degrees_vanish()) << name;
  }
}

TEST(GradedSpectrum, KnownDimensions) {
  Fan p2 = fans::projective_space(2);
  // O(-3) = canonical: H^2 one-dimensional; O(-4): H^2 of dimension 3.
  auto k = graded_string_spectrum(p2, TorusDivisor(p2, {3, 0, 0}));
  EXPECT_EQ(k.dimension(2), 1);
  EXPECT_EQ(graded_string_spectrum(p2, TorusDivisor(p2, {4, 0, 0})).dimension(2), 3);
  // O(d) on P^2 has h^0 = (d+1)(d+2)/2.
  for (std::int64_t d = 0; d <= 5; ++d)
    EXPECT_EQ(graded_string_spectrum(p2, TorusDivisor(p2, {-d, 0, 0})).dimension(0), (d + 1) * (d + 2) / 2);
  // P^1 x P^1, O(-2, 0): H^1 = 1 * 1? h^1(O(-2)) h^0(O(0)) = 1.
  Fan q = fans::product(fans::projective_line(), fans::projective_line());
  auto s = graded_string_spectrum(q, TorusDivisor(q, {2, 0, 0, 0}));
  EXPECT_EQ(s.dimension(1), 1);
  // O(-2,-2): H^2 = 1.
  EXPECT_EQ(graded_string_spectrum(q, TorusDivisor(q, {2, 0, 2, 0})).dimension(2), 1);
}

TEST(GradedSpectrum, Errors) {
  Fan quad(2, {{1, 0}, {0, 1}}, {Cone{{0, 1}}});
  EXPECT_THROW(graded_string_spectrum(quad, TorusDivisor::zero(quad)), UnboundedChamber);
  Fan p2 = fans::projective_space(2);
  SpectrumOptions tight;
  tight.subset_cap = 4;
  EXPECT_THROW(graded_string_spectrum(p2, TorusDivisor::zero(p2), tight), SubsetBlowup);
  Fan p1 = fans::projective_line();
  EXPECT_THROW(graded_string_spectrum(p2, TorusDivisor::zero(p1)), DimensionMismatch);
  EnumerationLimits lim{10};
  SpectrumOptions small;
  small.limits = lim;
  try {
    graded_string_spectrum(p2, TorusDivisor(p2, {-20, 0, 0}), small);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.name(), "EnumerationCap");
  }
}

TEST(GradedSpectrum, MatchesCechOracleOnSmallGrid) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> coef(-3, 3);
  for (const auto& [name, fan] : oracle::test_fans()) {
    oracle::CechOracle cech(fan);
    ToricCohomologyEngine engine(fan);
    for (int t = 0; t < 40; ++t) {
      std::vector<std::int64_t> a(fan.ray_count());
      for (auto& x : a) x = coef(rng);
      auto got = engine.spectrum(TorusDivisor(fan, a));
      auto want = cech.spectrum(a, 10);
      for (std::size_t i = 0; i <= fan.rank(); ++i) EXPECT_EQ(got.degree(i), want[i]) << name << " degree " << i;
    }
  }
}

TEST(HomSpectrum, Examples) {
  Fan p1 = fans::projective_line();
  Fan p2 = fans::projective_space(2);
  TorusDivisor om2(p1, {2, 0});
  auto same = hom_spectrum(p1, om2, om2);
  EXPECT_EQ(support(same, 0), (std::vector<Character>{{0}}));
  EXPECT_EQ(hom_spectrum(p1, om2, TorusDivisor::zero(p1)).dimension(0), 3);
  TorusDivisor o1(p2, {-1, 0, 0});
  EXPECT_EQ(support(hom_spectrum(p2, o1, o1), 0), (std::vector<Character>{{0, 0}}));
}

TEST(LatticePointsP, Examples) {
  Fan p1 = fans::projective_line();
  Fan p2 = fans::projective_space(2);
  TorusDivisor o1(p2, {-1, 0, 0});
  EXPECT_EQ(lattice_points_P(p2, o1, o1), (std::vector<Character>{{0, 0}}));
  EXPECT_EQ(lattice_points_P(p2, TorusDivisor::zero(p2), o1), (std::vector<Character>{{-1, 0}, {-1, 1}, {0, 0}}));
  // O(2) on P^1 is a = (-2, 0): -2 <= m <= 0.
  EXPECT_EQ(lattice_points_P(p1, TorusDivisor::zero(p1), TorusDivisor(p1, {-2, 0})),
            (std::vector<Character>{{-2}, {-1}, {0}}));
  Fan quad(2, {{1, 0}, {0, 1}}, {Cone{{0, 1}}});
  EXPECT_THROW(lattice_points_P(quad, TorusDivisor::zero(quad), TorusDivisor::zero(quad)), DomainError);
}

TEST(LatticePointsP, EqualsDegreeZeroAlways) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int64_t> coef(-4, 4);
  for (const auto& [name, fan] : oracle::test_fans()) {
    ToricCohomologyEngine engine(fan);
    for (int t = 0; t < 60; ++t) {
      std::vector<std::int64_t> a(fan.ray_count());
      for (auto& x : a) x = coef(rng);
      TorusDivisor d(fan, a);
      EXPECT_EQ(support(engine.spectrum(d), 0), lattice_points_P(fan, TorusDivisor::zero(fan), d)) << name;
    }
  }
}

TEST(AmpleThreshold, Examples) {
  Fan p1 = fans::projective_line();
  Fan p2 = fans::projective_space(2);
  EXPECT_EQ(ample_vanishing_threshold(p1, TorusDivisor::zero(p1), TorusDivisor(p1, {-1, 0}), 10), 0);
  EXPECT_EQ(ample_vanishing_threshold(p2, TorusDivisor::zero(p2), TorusDivisor(p2, {-1, 0, 0}), 10), 0);
  EXPECT_EQ(ample_vanishing_threshold(p1, TorusDivisor(p1, {-5, 0}), TorusDivisor(p1, {-1, 0}), 10), 3);
  EXPECT_EQ(ample_vanishing_threshold(p1, TorusDivisor(p1, {-5, 0}), TorusDivisor(p1, {-1, 0}), 3), std::nullopt);
  EXPECT_EQ(ample_vanishing_threshold(p1, TorusDivisor(p1, {-5, 0}), TorusDivisor(p1, {-1, 0}), 4), 3);
  EXPECT_THROW(ample_vanishing_threshold(p1, TorusDivisor::zero(p1), TorusDivisor::zero(p1), 5), DomainError);
  EXPECT_THROW(ample_vanishing_threshold(p1, TorusDivisor::zero(p1), TorusDivisor(p1, {-1, 0}), 0), SchemaError);
}
