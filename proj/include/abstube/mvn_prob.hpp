#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "abstube/errors.hpp"

namespace abstube {

inline double std_normal_pdf(double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi); }

/// Phi(u).  The erfc form keeps full relative accuracy in the lower tail.
inline double std_normal_cdf(double u) { return 0.5 * std::erfc(-u / std::numbers::sqrt2); }

/// 1 - Phi(u), evaluated without cancellation for large u.
inline double std_normal_sf(double u) { return 0.5 * std::erfc(u / std::numbers::sqrt2); }

/// Pr(y_i > lower_i for all i) for y ~ N(0, sigma).
struct TailProblem {
  Eigen::MatrixXd sigma;
  Eigen::VectorXd lower;

  int dimension() const { return static_cast<int>(lower.size()); }
};

struct QuadratureConfig {
  /// Target absolute error; 0 picks 1e-8 for d <= 4 and 1e-6 above.
  double abs_tol = 0.0;
  /// Integration range is cut at +-truncation standard deviations.
  double truncation = 8.5;
  /// Maximum bisection depth of the adaptive rule on each axis.
  int max_depth = 24;

  double tolerance_for(int d) const {
    if (abs_tol > 0) return abs_tol;
    return d <= 4 ? 1e-8 : 1e-6;
  }
};

struct TailEstimate {
  double value = 0.0;
  double error = 0.0;
};

/// Lower-triangular C with C C^T = sigma, without pivoting.  A pivot below
/// 1e-12 of the largest diagonal entry of sigma is rejected.
inline Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& sigma) {
  const Eigen::Index d = sigma.rows();
  if (sigma.cols() != d) throw NotPositiveDefinite("covariance matrix is not square");
  if (!sigma.isApprox(sigma.transpose(), 1e-12)) throw NotPositiveDefinite("covariance matrix is not symmetric");
  const double scale = d > 0 ? sigma.diagonal().maxCoeff() : 0.0;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double pivot = sigma(j, j) - C.row(j).head(j).squaredNorm();
    if (!(pivot > 1e-12 * scale))
      throw NotPositiveDefinite("covariance pivot " + std::to_string(j + 1) + " is not positive");
    C(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < d; ++i)
      C(i, j) = (sigma(i, j) - C.row(i).head(j).dot(C.row(j).head(j))) / C(j, j);
  }
  return C;
}

namespace detail {

/// Sequential-conditioning integrator.  With y = C z, z standard normal,
/// the event y > lower becomes z_i > l_i(z_1..z_{i-1}) with
/// l_i = (lower_i - sum_{k<i} C_ik z_k) / C_ii; the innermost axis is done
/// in closed form and the others by adaptive Gauss-Kronrod on
/// [max(l_i, -R), R].
class SequentialConditioning {
  static constexpr unsigned kPoints = 21;
  using Rule = boost::math::quadrature::gauss_kronrod<double, kPoints>;
  using GaussRule = boost::math::quadrature::gauss<double, (kPoints - 1) / 2>;

 public:
  SequentialConditioning(const Eigen::MatrixXd& C, const Eigen::VectorXd& lower, const QuadratureConfig& cfg)
      : C_(C), lower_(lower), cfg_(cfg), d_(static_cast<int>(lower.size())), z_(d_, 0.0) {}

  TailEstimate run(double tol) {
    return axis(0, tol);
  }

 private:
  double limit(int i) const {
    double s = lower_(i);
    for (int k = 0; k < i; ++k) s -= C_(i, k) * z_[static_cast<std::size_t>(k)];
    return s / C_(i, i);
  }

  // Integral over axes i..d-1 given z_0..z_{i-1}, to absolute tolerance tol.
  TailEstimate axis(int i, double tol) {
    const double lo = limit(i);
    const double R = cfg_.truncation;
    if (i == d_ - 1) return {std_normal_sf(lo), 0.0};
    if (lo >= R) return {0.0, 0.0};
    const double a = std::max(lo, -R);
    // Half the budget to this axis, half to the axes below.  An inner error
    // e contributes at most e after weighting by the normal density.
    const double inner_tol = tol / 2;
    double worst_inner = 0.0;
    auto f = [&](double z) {
      z_[static_cast<std::size_t>(i)] = z;
      TailEstimate inner = axis(i + 1, inner_tol);
      worst_inner = std::max(worst_inner, inner.error);
      return std_normal_pdf(z) * inner.value;
    };
    TailEstimate outer = adaptive(f, a, R, tol / 2, cfg_.max_depth);
    outer.error += worst_inner;
    return outer;
  }

  template <class F>
  TailEstimate adaptive(F& f, double a, double b, double tol, int depth) {
    // abscissa()[0] is the centre; the embedded Gauss nodes alternate with
    // the Kronrod-only ones.
    constexpr bool centre_is_gauss = ((kPoints - 1) / 2) & 1U;
    const auto& x = Rule::abscissa();
    const auto& wk = Rule::weights();
    const auto& wg = GaussRule::weights();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double fc = f(mid);
    double kronrod = wk[0] * fc;
    double gauss = centre_is_gauss ? wg[0] * fc : 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
      const double v = f(mid - half * x[k]) + f(mid + half * x[k]);
      kronrod += wk[k] * v;
      if ((k % 2 == 0) == centre_is_gauss) gauss += wg[k / 2] * v;
    }
    kronrod *= half;
    gauss *= half;
    const double err = std::fabs(kronrod - gauss);
    if (err <= tol || depth == 0) return {kronrod, err};
    TailEstimate left = adaptive(f, a, mid, tol / 2, depth - 1);
    TailEstimate right = adaptive(f, mid, b, tol / 2, depth - 1);
    return {left.value + right.value, left.error + right.error};
  }

  const Eigen::MatrixXd& C_;
  const Eigen::VectorXd& lower_;
  const QuadratureConfig& cfg_;
  int d_;
  std::vector<double> z_;
};

}  // namespace detail

/// Tail probability with its error estimate.  Throws NotPositiveDefinite.
inline TailEstimate tail_prob_estimate(const TailProblem& tp, const QuadratureConfig& cfg = {}) {
  const int d = tp.dimension();
  if (d < 1 || tp.sigma.rows() != d) throw NotPositiveDefinite("tail problem dimensions disagree");
  const Eigen::MatrixXd C = cholesky_lower(tp.sigma);
  detail::SequentialConditioning integrator(C, tp.lower, cfg);
  TailEstimate e = integrator.run(cfg.tolerance_for(d));
  e.value = std::clamp(e.value, 0.0, 1.0);
  return e;
}

/// Pr(y > lower), y ~ N(0, sigma), to cfg's absolute tolerance.  Throws
/// ToleranceNotMet when the quadrature error estimate exceeds it.
inline double tail_prob(const TailProblem& tp, const QuadratureConfig& cfg = {}) {
  const TailEstimate e = tail_prob_estimate(tp, cfg);
  const double tol = cfg.tolerance_for(tp.dimension());
  if (e.error > tol) throw ToleranceNotMet(e.error, tol);
  return e.value;
}

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Square root factor of a positive semi-definite matrix (C C^T = sigma).
inline Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal();
}

inline McEstimate binomial_estimate(std::uint64_t hits, std::uint64_t samples) {
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

/// Plain Monte Carlo estimate of Pr(y > lower) with y = C z.
inline McEstimate mc_oracle(const TailProblem& tp, std::uint64_t samples, std::uint64_t seed) {
  const Eigen::MatrixXd C = psd_factor(tp.sigma);
  const Eigen::Index d = tp.lower.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(d);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (Eigen::Index k = 0; k < d; ++k) z(k) = normal(rng);
    const Eigen::VectorXd y = C * z;
    if ((y.array() > tp.lower.array()).all()) ++hits;
  }
  return binomial_estimate(hits, samples);
}

}  // namespace abstube
