#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "abstube/mvn_prob.hpp"
#include "abstube/polyhedron.hpp"

namespace abstube::fx {

/// Four faces through the apex (0,0,1).
inline Polyhedron pyramid() {
  return Polyhedron::from_rows({{-1, -1, 1}, {-1, 1, 1}, {1, 1, 1}, {1, -1, 1}}, {1, 1, 1, 1});
}

/// Three lines through the origin of the x1x2 plane; the third is redundant.
inline Polyhedron redundant() {
  return Polyhedron::from_rows({{1, -1, 0}, {-1, -1, 0}, {0, -1, 0}}, {0, 0, 0});
}

inline Polyhedron half_space() { return Polyhedron::from_rows({{1, 0}}, {0}); }

/// -1 <= x <= 1 in one dimension.
inline Polyhedron slab() { return Polyhedron::from_rows({{1}, {-1}}, {1, 1}); }

inline std::vector<IndexSet> sets(std::initializer_list<std::initializer_list<int>> list) {
  std::vector<IndexSet> out;
  for (auto l : list) out.emplace_back(l);
  return out;
}

/// Random nonempty system with small integer data.  b is chosen as
/// a_i^T x0 + slack with slack often zero, so many hyperplanes share the
/// point x0 and the system is degenerate.
inline Polyhedron random_system(std::mt19937_64& rng, int n, int m, int coef = 2) {
  std::uniform_int_distribution<int> entry(-coef, coef);
  std::uniform_int_distribution<int> point(-1, 1);
  std::uniform_int_distribution<int> slack(0, 3);
  Polyhedron p;
  p.n = n;
  p.m = m;
  p.A.resize(n, m);
  p.b.resize(m);
  std::vector<int> x0(static_cast<std::size_t>(n));
  for (auto& v : x0) v = point(rng);
  for (int i = 0; i < m; ++i) {
    do {
      for (int k = 0; k < n; ++k) p.A(k, i) = entry(rng);
    } while (p.A.col(i).norm() == 0.0);
    double dot = 0;
    for (int k = 0; k < n; ++k) dot += p.A(k, i) * x0[static_cast<std::size_t>(k)];
    const int s = slack(rng);
    p.b(i) = dot + (s >= 2 ? s - 1 : 0);
  }
  return p;
}

/// Distance of `value` from a Monte Carlo estimate in standard errors.  The
/// standard error is the larger of the estimated one and the one implied by
/// `value`, so an estimate of exactly 0 or 1 does not give a zero scale.
inline double mc_z(double value, const McEstimate& mc, std::uint64_t samples) {
  const double null_se = std::sqrt(value * (1 - value) / static_cast<double>(samples));
  const double se = std::max(mc.standard_error, null_se);
  const double diff = std::fabs(value - mc.estimate);
  return diff == 0 ? 0 : diff / se;
}

}  // namespace abstube::fx
