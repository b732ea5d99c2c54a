#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "abstube/errors.hpp"
#include "abstube/mvn_prob.hpp"
#include "abstube/parallel.hpp"
#include "abstube/polyhedron.hpp"
#include "abstube/tube_builder.hpp"

namespace abstube {

struct ProbConfig {
  /// Global absolute tolerance, split evenly across the tube members.
  double abs_tol = 1e-6;
  double truncation = 8.5;
  unsigned workers = 1;
};

struct TermContribution {
  IndexSet J;
  int sign = 1;
  double probability = 0.0;
};

struct ProbabilityResult {
  double p_k = 0.0;  // clamped to [0, 1]
  double raw = 0.0;  // 1 - signed sum, unclamped
  std::vector<TermContribution> terms;  // in member order
  double error_budget = 0.0;
  std::vector<std::string> warnings;
};

/// Pr(x in K) for x ~ N_n(0, I):
///
///     P(K) = 1 - sum_{J in tube} (-1)^{|J|-1} Pr(A_J^T x > b_J)
///
/// Each term is the tail probability of N(0, A_J^T A_J) above b_J.
inline ProbabilityResult prob(const Polyhedron& p, const AbstractTube& tube, const ProbConfig& cfg = {}) {
  validate(p);
  if (tube.m != p.m || tube.n != p.n)
    throw ShapeMismatch("tube was built for a different system (m, n disagree)");
  ProbabilityResult res;
  const std::size_t count = tube.members.size();
  res.terms.resize(count);
  QuadratureConfig quad;
  quad.truncation = cfg.truncation;
  quad.abs_tol = count ? cfg.abs_tol / static_cast<double>(count) : cfg.abs_tol;
  res.error_budget = quad.abs_tol * static_cast<double>(count);

  detail::parallel_chunks(count, cfg.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const IndexSet& J = tube.members[k];
      try {
        const ConeTerm term = cone_term(p, J);
        res.terms[k] = {J, J.size() % 2 == 1 ? 1 : -1, tail_prob({term.gram, term.b_J}, quad)};
      } catch (Error& e) {
        e.attach_subset(J.indices());
        throw;
      }
    }
  });

  // Largest members first, Neumaier-compensated.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t k = count; k-- > 0;) {
    const double v = res.terms[k].sign * res.terms[k].probability;
    const double t = sum + v;
    carry += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  res.raw = 1.0 - (sum + carry);
  res.p_k = std::clamp(res.raw, 0.0, 1.0);
  for (const auto& t : res.terms) {
    if (!(t.probability > 0.0))
      res.warnings.push_back("term " + t.J.to_string() + " has zero probability");
  }
  return res;
}

/// Fraction of N_n(0, I) samples with A^T x <= b.
inline McEstimate prob_mc_oracle(const Polyhedron& p, std::uint64_t samples, std::uint64_t seed) {
  validate(p);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const Eigen::MatrixXd At = p.A.transpose();
  Eigen::VectorXd x(p.n);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int k = 0; k < p.n; ++k) x(k) = normal(rng);
    if (((At * x).array() <= p.b.array()).all()) ++hits;
  }
  return binomial_estimate(hits, samples);
}

}  // namespace abstube
