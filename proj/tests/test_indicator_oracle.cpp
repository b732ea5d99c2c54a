#include <random>

#include <gtest/gtest.h>

#include "abstube/indicator_oracle.hpp"
#include "abstube/tube_builder.hpp"
#include "support/fixtures.hpp"

using namespace abstube;
using abstube::fx::pyramid;

namespace {

RationalVector point(std::initializer_list<int> coords) {
  RationalVector x;
  for (int c : coords) x.emplace_back(c);
  return x;
}

}  // namespace

TEST(CheckIdentity, PyramidPoints) {
  const auto tube = build_tube(pyramid()).members;
  const auto interior = check_identity(pyramid(), tube, point({0, 0, 0}));
  EXPECT_EQ(interior.lhs, 0);
  EXPECT_EQ(interior.rhs, 0);
  EXPECT_EQ(interior.classification, PointClass::Interior);

  const auto apex = check_identity(pyramid(), tube, point({0, 0, 1}));
  EXPECT_EQ(apex.lhs, 0);
  EXPECT_EQ(apex.rhs, 0);
  EXPECT_EQ(apex.classification, PointClass::Boundary);

  const auto above = check_identity(pyramid(), tube, point({0, 0, 2}));
  EXPECT_EQ(above.lhs, 1);
  EXPECT_EQ(above.rhs, 1);  // 4 - 5 + 2 over the tube
  EXPECT_EQ(above.classification, PointClass::Exterior);
  EXPECT_TRUE(above.holds());
}

TEST(CheckIdentity, FullPowerSetAlsoHoldsAboveApex) {
  // Over all 15 subsets the sum is 4 - 6 + 4 - 1 = 1.
  const auto F = build_unperturbed_complex(pyramid());
  EXPECT_EQ(check_identity(pyramid(), F, point({0, 0, 2})).rhs, 1);
}

TEST(CheckIdentity, LhsIsComplementOfMembership) {
  const Polyhedron p = pyramid();
  const ExactSystem sys(p);
  const auto tube = build_tube(p).members;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-12, 12);
  for (int s = 0; s < 500; ++s) {
    RationalVector x{Rational(c(rng), 4), Rational(c(rng), 4), Rational(c(rng), 4)};
    bool inside = true;
    for (int i = 1; i <= p.m; ++i) inside = inside && sys.slack(i, x) <= 0;
    EXPECT_EQ(check_identity(p, tube, x).lhs, inside ? 0 : 1);
  }
}

TEST(CheckIdentity, RejectsWrongDimension) {
  const auto tube = build_tube(pyramid()).members;
  EXPECT_THROW(check_identity(pyramid(), tube, point({0, 0})), ShapeMismatch);
}

TEST(FuzzIdentity, PyramidTubeAndComplex) {
  const Polyhedron p = pyramid();
  for (const auto& complex : {build_tube(p).members, build_unperturbed_complex(p)}) {
    const FuzzStats st = fuzz_identity(p, complex);
    EXPECT_EQ(st.samples, 10000u);
    EXPECT_EQ(st.violations, 0u);
    EXPECT_GT(st.interior, 0u);
    EXPECT_GT(st.boundary, 0u);
    EXPECT_GT(st.exterior, 0u);
  }
}

TEST(FuzzIdentity, RandomSystem) {
  std::mt19937_64 rng(8);
  for (int s = 0; s < 5; ++s) {
    const Polyhedron p = fx::random_system(rng, 3, 6);
    SamplerConfig cfg;
    cfg.seed = 100 + s;
    EXPECT_EQ(fuzz_identity(p, build_tube(p).members, cfg).violations, 0u);
    EXPECT_EQ(fuzz_identity(p, build_unperturbed_complex(p), cfg).violations, 0u);
  }
}

TEST(FuzzIdentity, CorruptedTubeIsCaught) {
  auto tube = build_tube(pyramid()).members;
  tube.erase(tube.begin() + 5);  // drop {1,4}
  const FuzzStats st = fuzz_identity(pyramid(), tube);
  EXPECT_GE(st.violations, 1u);
  ASSERT_TRUE(st.first_violation.has_value());
  EXPECT_FALSE(st.first_violation->holds());
}

TEST(FuzzIdentity, SeedIsReproducible) {
  const auto tube = build_tube(pyramid()).members;
  SamplerConfig cfg;
  cfg.samples = 500;
  const FuzzStats a = fuzz_identity(pyramid(), tube, cfg);
  const FuzzStats b = fuzz_identity(pyramid(), tube, cfg);
  EXPECT_EQ(a.interior, b.interior);
  EXPECT_EQ(a.boundary, b.boundary);
  EXPECT_EQ(a.on_hyperplane, b.on_hyperplane);
}
