#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "abstube/polyhedron.hpp"
#include "abstube/tube_builder.hpp"
#include "abstube/tube_prob.hpp"

// Studentized range:  T(X) = max_{i<j} |X_i - X_j| / sqrt(s_i + s_j),
// X ~ N_k(0, diag(s)), and F_k(s; c) = Pr(T(X) <= c).

namespace abstube {

struct StudentizedRangeSpec {
  int k = 2;
  std::vector<double> variances;  // s_i = sigma_i^2
  double c = 1.0;

  static StudentizedRangeSpec equal(int k, double c) {
    return {k, std::vector<double>(static_cast<std::size_t>(k), 1.0), c};
  }

  void check() const {
    if (k < 2) throw std::invalid_argument("studentized range needs k >= 2");
    if (static_cast<int>(variances.size()) != k) throw ShapeMismatch("need one variance per mean");
    for (double v : variances)
      if (!(v > 0)) throw std::invalid_argument("variances must be positive");
    if (!(c > 0)) throw std::invalid_argument("threshold c must be positive");
  }
};

namespace detail {

// One row per ordered pair (i, j), i != j, lexicographic in (i, j).
template <class Coef>
Polyhedron studentized_rows(const StudentizedRangeSpec& spec, Coef coef) {
  spec.check();
  const int k = spec.k;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      std::vector<double> row(static_cast<std::size_t>(k), 0.0);
      const double scale = std::sqrt(spec.variances[static_cast<std::size_t>(i)] + spec.variances[static_cast<std::size_t>(j)]);
      row[static_cast<std::size_t>(i)] = coef(i) / scale;
      row[static_cast<std::size_t>(j)] = -coef(j) / scale;
      rows.push_back(std::move(row));
      rhs.push_back(spec.c);
    }
  }
  return Polyhedron::from_rows(rows, rhs);
}

}  // namespace detail

/// { x in R^k : (x_i - x_j) / sqrt(s_i + s_j) <= c for all i != j }, the
/// acceptance region in the coordinates of X itself.
inline Polyhedron studentized_polyhedron(const StudentizedRangeSpec& spec) {
  return detail::studentized_rows(spec, [](int) { return 1.0; });
}

/// The same region in whitened coordinates z = X / sigma, where z ~ N(0, I):
/// row (i, j) becomes (sigma_i z_i - sigma_j z_j) / sqrt(s_i + s_j) <= c.
/// Identical to studentized_polyhedron when all variances are 1.  Both have
/// the same abstract tube since they differ by an invertible linear map.
inline Polyhedron standardized_studentized_polyhedron(const StudentizedRangeSpec& spec) {
  return detail::studentized_rows(spec, [&](int i) { return std::sqrt(spec.variances[static_cast<std::size_t>(i)]); });
}

inline AbstractTube studentized_tube(const StudentizedRangeSpec& spec, const TubeOptions& opt = {}) {
  return build_tube(standardized_studentized_polyhedron(spec), opt);
}

struct CensusRow {
  int k = 0;
  int m = 0;
  std::size_t terms = 0;
};

/// |F(0+)| of the equal-variance system for each k in [k_min, k_max].
inline std::vector<CensusRow> table1_census(int k_min, int k_max, const TubeOptions& opt = {}) {
  std::vector<CensusRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    const AbstractTube t = studentized_tube(StudentizedRangeSpec::equal(k, 1.0), opt);
    rows.push_back({k, t.m, t.size()});
  }
  return rows;
}

/// F_k(sigma; c) via the tube.  The tube may come from any threshold c' > 0
/// with the same variances: the region's shape does not depend on c.
inline double distribution_function(const StudentizedRangeSpec& spec, const AbstractTube& tube,
                                    const ProbConfig& cfg = {}) {
  return prob(standardized_studentized_polyhedron(spec), tube, cfg).p_k;
}

/// s_i = (10^s)^{(i-1)/(k-1)}, i = 1..k.
inline std::vector<double> tukey_kramer_variances(int k, double s) {
  std::vector<double> v;
  for (int i = 1; i <= k; ++i) v.push_back(std::pow(10.0, s * (i - 1) / (k - 1)));
  return v;
}

struct Calibration {
  double c = 0.0;
  double F = 0.0;
  int iterations = 0;
};

/// Bisection on c in [lo, hi] until |F_k(1..1; c) - target| <= tol.
inline Calibration calibrate_threshold(int k, const AbstractTube& tube, double target = 0.95, double tol = 1e-4,
                                       const ProbConfig& cfg = {}, double lo = 0.1, double hi = 10.0) {
  Calibration cal;
  for (cal.iterations = 1; cal.iterations <= 100; ++cal.iterations) {
    cal.c = 0.5 * (lo + hi);
    cal.F = distribution_function(StudentizedRangeSpec::equal(k, cal.c), tube, cfg);
    if (std::fabs(cal.F - target) <= tol) return cal;
    (cal.F < target ? lo : hi) = cal.c;
  }
  throw std::runtime_error("threshold calibration did not converge");
}

struct SweepPoint {
  double s = 0.0;
  double F = 0.0;
  std::size_t tube_size = 0;
};

struct TukeyKramerCurve {
  int k = 5;
  double c = 0.0;
  double calibrated_F = 0.0;
  std::vector<SweepPoint> points;
};

struct SweepConfig {
  int k = 5;
  int grid = 41;  // equispaced points on [s_min, s_max]
  double s_min = -5.0;
  double s_max = 5.0;
  double target = 0.95;
  double calibration_tol = 1e-4;
  double c = 0.0;  // > 0 skips calibration
  ProbConfig prob{};
  TubeOptions tube{};
};

/// F_k(sigma(s); c) over the grid, with the tube rebuilt at every point.
inline TukeyKramerCurve tukey_kramer_sweep(const SweepConfig& cfg = {}) {
  if (cfg.grid < 1) throw std::invalid_argument("sweep grid needs at least one point");
  TukeyKramerCurve curve;
  curve.k = cfg.k;
  if (cfg.c > 0) {
    curve.c = cfg.c;
    const auto equal = StudentizedRangeSpec::equal(cfg.k, cfg.c);
    curve.calibrated_F = distribution_function(equal, studentized_tube(equal, cfg.tube), cfg.prob);
  } else {
    const AbstractTube tube = studentized_tube(StudentizedRangeSpec::equal(cfg.k, 1.0), cfg.tube);
    const Calibration cal = calibrate_threshold(cfg.k, tube, cfg.target, cfg.calibration_tol, cfg.prob);
    curve.c = cal.c;
    curve.calibrated_F = cal.F;
  }
  for (int g = 0; g < cfg.grid; ++g) {
    const double s = cfg.grid == 1 ? cfg.s_min : cfg.s_min + (cfg.s_max - cfg.s_min) * g / (cfg.grid - 1);
    const StudentizedRangeSpec spec{cfg.k, tukey_kramer_variances(cfg.k, s), curve.c};
    const AbstractTube tube = studentized_tube(spec, cfg.tube);
    curve.points.push_back({s, distribution_function(spec, tube, cfg.prob), tube.size()});
  }
  return curve;
}

}  // namespace abstube
