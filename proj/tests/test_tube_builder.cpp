#include <iostream>
#include <random>

#include <gtest/gtest.h>

#include "abstube/applications.hpp"
#include "abstube/tube_builder.hpp"
#include "support/fixtures.hpp"

using namespace abstube;
using abstube::fx::pyramid;
using abstube::fx::redundant;
using abstube::fx::sets;

TEST(BuildTube, Pyramid) {
  for (Backend b : {Backend::Float, Backend::Exact}) {
    TubeOptions opt;
    opt.backend = b;
    const AbstractTube t = build_tube(pyramid(), opt);
    EXPECT_EQ(t.members, sets({{1}, {2}, {3}, {4}, {1, 2}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {1, 2, 4}, {2, 3, 4}}));
    EXPECT_EQ(t.r, 3);
    EXPECT_EQ(t.order, (std::vector<int>{1, 2, 3, 4}));
  }
}

TEST(BuildTube, RedundantBothOrders) {
  EXPECT_EQ(build_tube(redundant()).members, sets({{1}, {2}, {3}, {1, 3}, {2, 3}}));
  TubeOptions opt;
  opt.order = {2, 3, 1};
  EXPECT_EQ(build_tube(redundant(), opt).members, sets({{1}, {2}, {1, 2}}));
}

TEST(BuildTube, SingleHalfSpace) {
  EXPECT_EQ(build_tube(fx::half_space()).members, sets({{1}}));
  EXPECT_EQ(build_unperturbed_complex(fx::half_space()), sets({{1}}));
}

TEST(BuildTube, Slab) { EXPECT_EQ(build_tube(fx::slab()).members, sets({{1}, {2}})); }

TEST(UnperturbedComplex, Examples) {
  EXPECT_EQ(build_unperturbed_complex(pyramid()),
            sets({{1}, {2}, {3}, {4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4},
                  {2, 3, 4}, {1, 2, 3, 4}}));
  EXPECT_EQ(build_unperturbed_complex(redundant()), sets({{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}}));
}

TEST(UnperturbedComplex, SizeLimit) {
  std::mt19937_64 rng(1);
  const Polyhedron p = fx::random_system(rng, 2, 21);
  EXPECT_THROW(build_unperturbed_complex(p), SizeLimitExceeded);
}

TEST(TubeStats, Examples) {
  const TubeStats s = tube_stats(build_tube(pyramid()));
  EXPECT_EQ(s.total, 11u);
  EXPECT_EQ(s.max_cardinality, 3u);
  EXPECT_EQ(s.by_cardinality, (std::vector<std::size_t>{0, 4, 5, 2}));
  EXPECT_EQ(tube_stats(studentized_tube(StudentizedRangeSpec::equal(4, 1.0))).total, 62u);
}

TEST(TubeInvariants, RandomSystems) {
  std::mt19937_64 rng(314);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<int> cons(1, 8);
  for (int s = 0; s < 60; ++s) {
    const Polyhedron p = fx::random_system(rng, dim(rng), cons(rng));
    const AbstractTube t = build_tube(p);
    const auto F = build_unperturbed_complex(p);
    TubeOptions no_prune;
    no_prune.prune = false;
    EXPECT_EQ(build_tube(p, no_prune).members, t.members) << s;
    EXPECT_TRUE(is_downward_closed(t.members)) << s;
    EXPECT_TRUE(is_downward_closed(F)) << s;
    for (const auto& J : t.members) {
      EXPECT_TRUE(std::binary_search(F.begin(), F.end(), J)) << s << ' ' << J.to_string();
      EXPECT_LE(static_cast<int>(J.size()), rank(p));
      Eigen::LLT<Eigen::MatrixXd> llt(cone_term(p, J).gram);
      EXPECT_EQ(llt.info(), Eigen::Success) << J.to_string();
    }
    TubeOptions exact;
    exact.backend = Backend::Exact;
    EXPECT_EQ(build_tube(p, exact).members, t.members) << s;
  }
}

TEST(TubeInvariants, WorkerCountIndependence) {
  const auto p = standardized_studentized_polyhedron(StudentizedRangeSpec::equal(5, 1.0));
  const AbstractTube one = build_tube(p);
  for (unsigned w : {2u, 3u, 8u}) {
    TubeOptions opt;
    opt.workers = w;
    EXPECT_EQ(build_tube(p, opt).members, one.members) << w;
  }
}

TEST(TubeInvariants, IsDownwardClosedDetectsHoles) {
  EXPECT_FALSE(is_downward_closed(sets({{1}, {1, 2}})));
  EXPECT_TRUE(is_downward_closed(sets({{1}, {2}, {1, 2}})));
}

TEST(BuildTube, IterationLimitCarriesSubset) {
  TubeOptions opt;
  opt.max_iterations = 1;
  try {
    build_tube(pyramid(), opt);
    FAIL() << "expected IterationLimitExceeded";
  } catch (const IterationLimitExceeded& e) {
    EXPECT_FALSE(e.subset().empty());
  }
}

TEST(BuildTube, RejectsBadOrder) {
  TubeOptions opt;
  opt.order = {1, 2};
  EXPECT_THROW(build_tube(pyramid(), opt), ShapeMismatch);
}

// Tube sizes of the equal-variance studentized range under random
// constraint orders.  Reported only: there is no proof that they agree.
TEST(Report, StudentizedOrderInvariance) {
  std::mt19937_64 rng(17);
  for (int k = 3; k <= 5; ++k) {
    const auto p = standardized_studentized_polyhedron(StudentizedRangeSpec::equal(k, 1.0));
    const std::size_t base = build_tube(p).size();
    int differ = 0;
    for (int trial = 0; trial < 20; ++trial) {
      TubeOptions opt;
      opt.order = identity_order(p.m);
      std::shuffle(opt.order.begin(), opt.order.end(), rng);
      differ += build_tube(p, opt).size() != base;
    }
    std::cout << "k=" << k << " |tube|=" << base << " orders with a different size: " << differ << "/20\n";
  }
}

TEST(Report, StudentizedVarianceInvariance) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> var(0.1, 10.0);
  for (int k = 3; k <= 4; ++k) {
    const std::size_t base = studentized_tube(StudentizedRangeSpec::equal(k, 1.0)).size();
    int differ = 0;
    for (int trial = 0; trial < 20; ++trial) {
      StudentizedRangeSpec spec = StudentizedRangeSpec::equal(k, 1.0);
      for (auto& v : spec.variances) v = var(rng);
      differ += studentized_tube(spec).size() != base;
    }
    std::cout << "k=" << k << " |tube|=" << base << " variance patterns with a different size: " << differ
              << "/20\n";
  }
}
