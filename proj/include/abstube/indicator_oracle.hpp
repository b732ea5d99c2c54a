#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "abstube/polyhedron.hpp"
#include "abstube/scalar.hpp"

namespace abstube {

using RationalVector = std::vector<Rational>;

enum class PointClass { Interior, Boundary, Exterior };

/// Both sides of the signed indicator identity at one point.
struct IdentityReport {
  RationalVector point;
  int lhs = 0;            // 1 iff some a_i^T x > b_i
  long long rhs = 0;      // sum over the complex of (-1)^{|J|-1} [x violates every i in J]
  PointClass classification = PointClass::Interior;

  bool holds() const noexcept { return lhs == rhs; }
};

/// The polyhedron lifted exactly to rationals, for indicator evaluation.
class ExactSystem {
 public:
  explicit ExactSystem(const Polyhedron& p) : n_(p.n), m_(p.m), normals_(static_cast<std::size_t>(p.m)) {
    validate(p);
    if (p.m > 64) throw SizeLimitExceeded("indicator evaluation supports at most 64 constraints");
    for (int i = 0; i < p.m; ++i) {
      auto& a = normals_[static_cast<std::size_t>(i)];
      for (int k = 0; k < p.n; ++k) a.push_back(to_rational(p.A(k, i)));
      rhs_.push_back(to_rational(p.b(i)));
    }
  }

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  const RationalVector& normal(int i) const { return normals_[static_cast<std::size_t>(i) - 1]; }
  const Rational& rhs(int i) const { return rhs_[static_cast<std::size_t>(i) - 1]; }

  /// a_i^T x - b_i.
  Rational slack(int i, const RationalVector& x) const {
    const auto& a = normal(i);
    Rational s = -rhs(i);
    for (int k = 0; k < n_; ++k) s += a[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
    return s;
  }

  /// Bit i-1 set iff a_i^T x > b_i (x in the open complement H_i^c).
  /// Bit i-1 of `on_boundary` set iff a_i^T x = b_i.
  std::uint64_t violated(const RationalVector& x, std::uint64_t* on_boundary = nullptr) const {
    std::uint64_t out = 0;
    std::uint64_t eq = 0;
    for (int i = 1; i <= m_; ++i) {
      const int s = slack(i, x).sign();
      if (s > 0) out |= std::uint64_t{1} << (i - 1);
      if (s == 0) eq |= std::uint64_t{1} << (i - 1);
    }
    if (on_boundary) *on_boundary = eq;
    return out;
  }

 private:
  int n_;
  int m_;
  std::vector<RationalVector> normals_;
  RationalVector rhs_;
};

inline IdentityReport check_identity(const ExactSystem& sys, std::span<const std::uint64_t> complex_masks,
                                     std::span<const int> cardinalities, const RationalVector& x) {
  IdentityReport rep;
  rep.point = x;
  std::uint64_t boundary = 0;
  const std::uint64_t out = sys.violated(x, &boundary);
  rep.lhs = out != 0 ? 1 : 0;
  for (std::size_t k = 0; k < complex_masks.size(); ++k) {
    if ((complex_masks[k] & out) == complex_masks[k]) rep.rhs += cardinalities[k] % 2 == 1 ? 1 : -1;
  }
  if (out != 0)
    rep.classification = PointClass::Exterior;
  else
    rep.classification = boundary != 0 ? PointClass::Boundary : PointClass::Interior;
  return rep;
}

/// Evaluates both sides of the identity at x in exact arithmetic.
inline IdentityReport check_identity(const Polyhedron& p, std::span<const IndexSet> complex, const RationalVector& x) {
  if (static_cast<int>(x.size()) != p.n) throw ShapeMismatch("point dimension differs from n");
  const ExactSystem sys(p);
  std::vector<std::uint64_t> masks;
  std::vector<int> cards;
  for (const auto& J : complex) {
    check_subset(p, J);
    masks.push_back(J.mask());
    cards.push_back(static_cast<int>(J.size()));
  }
  return check_identity(sys, masks, cards, x);
}

struct SamplerConfig {
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  int box = 3;          // coordinates drawn from [-box, box]
  int denominator = 4;  // rational grid spacing 1/denominator
};

struct FuzzStats {
  std::size_t samples = 0;
  std::size_t interior = 0;
  std::size_t boundary = 0;  // on the boundary of K
  std::size_t exterior = 0;
  std::size_t on_hyperplane = 0;  // on at least one hyperplane, inside K or not
  std::size_t violations = 0;
  std::optional<IdentityReport> first_violation;
};

namespace detail {

/// Solves a_i^T x = b_i for the rows in `rows` exactly, with the free
/// coordinates taken from `x`.  Returns false when the rows are inconsistent.
inline bool project_onto(const ExactSystem& sys, const std::vector<int>& rows, RationalVector& x) {
  const int n = sys.n();
  const auto rcount = rows.size();
  std::vector<RationalVector> aug(rcount, RationalVector(static_cast<std::size_t>(n) + 1));
  for (std::size_t r = 0; r < rcount; ++r) {
    for (int k = 0; k < n; ++k) aug[r][static_cast<std::size_t>(k)] = sys.normal(rows[r])[static_cast<std::size_t>(k)];
    aug[r][static_cast<std::size_t>(n)] = sys.rhs(rows[r]);
  }
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (int col = 0; col < n && row < rcount; ++col) {
    std::size_t sel = row;
    while (sel < rcount && aug[sel][static_cast<std::size_t>(col)] == 0) ++sel;
    if (sel == rcount) continue;
    std::swap(aug[sel], aug[row]);
    const Rational inv = Rational(1) / aug[row][static_cast<std::size_t>(col)];
    for (auto& v : aug[row]) v *= inv;
    for (std::size_t r = 0; r < rcount; ++r) {
      if (r == row || aug[r][static_cast<std::size_t>(col)] == 0) continue;
      const Rational f = aug[r][static_cast<std::size_t>(col)];
      for (int k = 0; k <= n; ++k) aug[r][static_cast<std::size_t>(k)] -= f * aug[row][static_cast<std::size_t>(k)];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < rcount; ++r)
    if (aug[r][static_cast<std::size_t>(n)] != 0) return false;
  // Reduced row echelon form: pivot variable = rhs - sum over free columns.
  for (std::size_t r = 0; r < pivot_col.size(); ++r) {
    Rational v = aug[r][static_cast<std::size_t>(n)];
    for (int k = 0; k < n; ++k) {
      if (std::find(pivot_col.begin(), pivot_col.end(), k) != pivot_col.end()) continue;
      v -= aug[r][static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
    }
    x[static_cast<std::size_t>(pivot_col[r])] = v;
  }
  return true;
}

}  // namespace detail

/// Samples rational points and checks the identity at each.  A third of the
/// points are plain grid points; the rest are projected onto the
/// intersection of 1..n randomly chosen hyperplanes, which exercises the
/// boundary cases (including points of K^c lying on some hyperplane).
inline FuzzStats fuzz_identity(const Polyhedron& p, std::span<const IndexSet> complex, const SamplerConfig& cfg = {}) {
  const ExactSystem sys(p);
  std::vector<std::uint64_t> masks;
  std::vector<int> cards;
  for (const auto& J : complex) {
    check_subset(p, J);
    masks.push_back(J.mask());
    cards.push_back(static_cast<int>(J.size()));
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> coord(-cfg.box * cfg.denominator, cfg.box * cfg.denominator);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> pick(1, p.m);
  std::uniform_int_distribution<int> how_many(1, std::min(p.n, p.m));

  FuzzStats stats;
  RationalVector x(static_cast<std::size_t>(p.n));
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    for (auto& v : x) v = Rational(coord(rng), cfg.denominator);
    if (kind(rng) != 0) {
      const int count = how_many(rng);
      std::vector<int> rows;
      while (static_cast<int>(rows.size()) < count) {
        const int i = pick(rng);
        if (std::find(rows.begin(), rows.end(), i) == rows.end()) rows.push_back(i);
      }
      while (!rows.empty() && !detail::project_onto(sys, rows, x)) rows.pop_back();
    }
    const IdentityReport rep = check_identity(sys, masks, cards, x);
    ++stats.samples;
    switch (rep.classification) {
      case PointClass::Interior: ++stats.interior; break;
      case PointClass::Boundary: ++stats.boundary; break;
      case PointClass::Exterior: ++stats.exterior; break;
    }
    std::uint64_t eq = 0;
    sys.violated(x, &eq);
    if (eq != 0) ++stats.on_hyperplane;
    if (!rep.holds()) {
      ++stats.violations;
      if (!stats.first_violation) stats.first_violation = rep;
    }
  }
  return stats;
}

}  // namespace abstube
