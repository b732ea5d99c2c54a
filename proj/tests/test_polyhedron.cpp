#include <gtest/gtest.h>

#include "abstube/polyhedron.hpp"
#include "support/fixtures.hpp"

using namespace abstube;
using abstube::fx::pyramid;
using abstube::fx::redundant;

TEST(Polyhedron, ValidatesWellFormedSystems) {
  EXPECT_NO_THROW(validate(pyramid()));
  EXPECT_NO_THROW(validate(redundant()));
}

TEST(Polyhedron, ZeroNormalReportsItsIndex) {
  const auto p = Polyhedron::from_rows({{1, 0}, {0, 0}, {0, 1}}, {1, 1, 1});
  try {
    validate(p);
    FAIL() << "expected ZeroNormal";
  } catch (const ZeroNormal& e) {
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(Polyhedron, ShapeMismatch) {
  EXPECT_THROW(Polyhedron::from_rows({{1, 0}, {0, 1, 2}}, {1, 1}), ShapeMismatch);
  EXPECT_THROW(Polyhedron::from_rows({{1, 0}}, {1, 1}), ShapeMismatch);
  Polyhedron p = pyramid();
  p.b.resize(3);
  EXPECT_THROW(validate(p), ShapeMismatch);
}

TEST(Polyhedron, Rank) {
  EXPECT_EQ(rank(pyramid()), 3);
  EXPECT_EQ(rank(redundant()), 2);
  EXPECT_EQ(rank(Polyhedron::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {0, 0, 0})), 3);
  EXPECT_EQ(rank(Polyhedron::from_rows({{1, 2}, {2, 4}}, {0, 0})), 1);
}

TEST(Polyhedron, ConeTermGram) {
  const ConeTerm t = cone_term(pyramid(), IndexSet{1, 2});
  Eigen::Matrix2d expected;
  expected << 3, 1, 1, 3;
  EXPECT_TRUE(t.gram.isApprox(expected));
  EXPECT_EQ(t.b_J, Eigen::Vector2d(1, 1));

  const Polyhedron p = pyramid();
  for (int i = 1; i <= p.m; ++i)
    EXPECT_DOUBLE_EQ(cone_term(p, IndexSet{i}).gram(0, 0), p.normal(i).squaredNorm());

  EXPECT_NEAR(cone_term(redundant(), IndexSet{1, 2, 3}).gram.determinant(), 0.0, 1e-12);
}

TEST(Polyhedron, ConeTermRejectsBadSubsets) {
  EXPECT_THROW(cone_term(pyramid(), IndexSet{1, 5}), IndexOutOfRange);
  EXPECT_THROW(cone_term(pyramid(), IndexSet{}), IndexOutOfRange);
}

TEST(IndexSet, OrderIsCardinalityThenLexicographic) {
  EXPECT_LT((IndexSet{4}), (IndexSet{1, 2}));
  EXPECT_LT((IndexSet{1, 3}), (IndexSet{2, 3}));
  EXPECT_LT((IndexSet{1, 2, 4}), (IndexSet{1, 3, 4}));
  EXPECT_EQ((IndexSet{1, 2, 4}).to_string(), "{1,2,4}");
}

TEST(IndexSet, MaskRoundTrip) {
  const IndexSet J{1, 5, 64};
  EXPECT_EQ(IndexSet::from_mask(J.mask()), J);
  EXPECT_THROW((IndexSet{65}).mask(), IndexOutOfRange);
  EXPECT_THROW(IndexSet({2, 1}), std::invalid_argument);
  EXPECT_THROW(IndexSet({0, 1}), IndexOutOfRange);
  EXPECT_TRUE((IndexSet{1, 3}).is_subset_of(IndexSet{1, 2, 3}));
  EXPECT_FALSE((IndexSet{1, 4}).is_subset_of(IndexSet{1, 2, 3}));
}
