#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "abstube/eps_poly.hpp"
#include "abstube/errors.hpp"
#include "abstube/polyhedron.hpp"
#include "abstube/scalar.hpp"

namespace abstube {

enum class Backend { Float, Exact };

/// Options shared by the feasibility oracle and the tube builder.
struct LpOptions {
  SignTolerance tol{};
  /// order[i-1] is the power of the infinitesimal added to b_i.  Empty means
  /// the identity (b_i + e^i).
  std::vector<int> order{};
  /// false drops the infinitesimal entirely and tests the plain system.
  bool perturbed = true;
  /// 0 selects the default cap of 10 * M * N pivots.
  std::size_t max_iterations = 0;
};

/// Checks that `order` is a permutation of 1..m, or empty.
inline void check_order(const std::vector<int>& order, int m) {
  if (order.empty()) return;
  if (static_cast<int>(order.size()) != m)
    throw ShapeMismatch("perturbation order must list " + std::to_string(m) + " exponents");
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (int e : order) {
    if (e < 1 || e > m || seen[e]) throw std::invalid_argument("perturbation order is not a permutation of 1..m");
    seen[e] = true;
  }
}

/// Pivoting tableau with real entries everywhere except the last column,
/// which holds polynomials in the infinitesimal.
///
/// Indices are 0-based: rows 0..M-1, body columns 0..N-2, and the
/// polynomial column is reached through rhs().  Each row and column also
/// carries the label of the variable currently attached to it, which the
/// solver uses for its smallest-label choice rules.
template <class Scalar>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols, std::size_t degree)
      : rows_(rows), cols_(cols), body_(rows * (cols - 1), Scalar(0)), rhs_(rows, EpsPoly<Scalar>(degree)) {
    if (cols < 2) throw ShapeMismatch("tableau needs at least one body column");
    row_label_.resize(rows);
    col_label_.resize(cols - 1);
    for (std::size_t i = 0; i < rows; ++i) row_label_[i] = static_cast<int>(cols - 1 + i);
    for (std::size_t j = 0; j + 1 < cols; ++j) col_label_[j] = static_cast<int>(j);
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t degree() const noexcept { return rhs_.front().degree(); }

  Scalar& at(std::size_t i, std::size_t j) { return body_[i * (cols_ - 1) + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return body_[i * (cols_ - 1) + j]; }
  EpsPoly<Scalar>& rhs(std::size_t i) { return rhs_[i]; }
  const EpsPoly<Scalar>& rhs(std::size_t i) const { return rhs_[i]; }

  int& row_label(std::size_t i) { return row_label_[i]; }
  int row_label(std::size_t i) const { return row_label_[i]; }
  int& col_label(std::size_t j) { return col_label_[j]; }
  int col_label(std::size_t j) const { return col_label_[j]; }

  friend bool operator==(const Tableau&, const Tableau&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> body_;
  std::vector<EpsPoly<Scalar>> rhs_;
  std::vector<int> row_label_;
  std::vector<int> col_label_;
};

/// Builds the feasibility tableau for subset J:
///
///     [  A^T    -A^T    -b(e)  ]   m rows
///     [ -A_J^T   A_J^T   b_J(e) ]  |J| rows
///     [  1^T     1^T     0     ]   objective row
///
/// with b_i(e) = b_i + e^{order_i}.  Columns are x (n), y (n), right-hand side.
template <class Scalar>
Tableau<Scalar> build_tableau(const Polyhedron& p, const IndexSet& J, const LpOptions& opt = {}) {
  check_subset(p, J);
  check_order(opt.order, p.m);
  using Tr = ScalarTraits<Scalar>;
  const std::size_t n = static_cast<std::size_t>(p.n);
  const std::size_t m = static_cast<std::size_t>(p.m);
  const std::size_t M = m + J.size() + 1;
  const std::size_t N = 2 * n + 1;
  const std::size_t degree = opt.perturbed ? m : 0;
  Tableau<Scalar> t(M, N, degree);

  auto power_of = [&](int i) -> std::size_t {
    return static_cast<std::size_t>(opt.order.empty() ? i : opt.order[static_cast<std::size_t>(i) - 1]);
  };
  auto perturbed_rhs = [&](int i) {
    auto poly = EpsPoly<Scalar>::constant(Tr::from_double(p.b(i - 1)), degree);
    if (opt.perturbed) poly[power_of(i)] = Scalar(1);
    return poly;
  };

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      Scalar a = Tr::from_double(p.A(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)));
      t.at(i, k) = a;
      t.at(i, n + k) = -a;
    }
    t.rhs(i) = -perturbed_rhs(static_cast<int>(i) + 1);
  }
  for (std::size_t r = 0; r < J.size(); ++r) {
    const std::size_t row = m + r;
    const int j = J[r];
    for (std::size_t k = 0; k < n; ++k) {
      Scalar a = Tr::from_double(p.A(static_cast<Eigen::Index>(k), j - 1));
      t.at(row, k) = -a;
      t.at(row, n + k) = a;
    }
    t.rhs(row) = perturbed_rhs(j);
  }
  for (std::size_t k = 0; k < 2 * n; ++k) t.at(M - 1, k) = Scalar(1);
  return t;
}

/// One exchange step about pivot (i0, j0), j0 a body column:
///
///     t_ij   := t_ij - t_ij0 t_i0j / t_i0j0
///     t_ij0  := t_ij0 / t_i0j0
///     t_i0j  := -t_i0j / t_i0j0
///     t_i0j0 := 1 / t_i0j0
///
/// The right-hand side column follows the t_ij and t_i0j rules.  The row and
/// column labels swap.
template <class Scalar>
Tableau<Scalar>& pivot(Tableau<Scalar>& t, std::size_t i0, std::size_t j0, SignTolerance tol = {}) {
  if (i0 >= t.rows() || j0 + 1 >= t.cols()) throw IndexOutOfRange("pivot position outside the tableau body");
  const Scalar piv = t.at(i0, j0);
  if (ScalarTraits<Scalar>::sign(piv, tol.eps_tol) == 0) throw ZeroPivot(i0, j0);

  const std::size_t body_cols = t.cols() - 1;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (i == i0) continue;
    const Scalar factor = t.at(i, j0) / piv;
    if (factor != Scalar(0)) {
      for (std::size_t j = 0; j < body_cols; ++j) {
        if (j != j0) t.at(i, j) -= factor * t.at(i0, j);
      }
      t.rhs(i).axpy(-factor, t.rhs(i0));
    }
    t.at(i, j0) = factor;
  }
  const Scalar neg_inv = Scalar(-1) / piv;
  for (std::size_t j = 0; j < body_cols; ++j) {
    if (j != j0) t.at(i0, j) *= neg_inv;
  }
  t.rhs(i0) *= neg_inv;
  t.at(i0, j0) = Scalar(1) / piv;
  std::swap(t.row_label(i0), t.col_label(j0));
  return t;
}

enum class Verdict { Feasible, Infeasible };

struct SolveTrace {
  Verdict verdict;
  std::size_t pivots;
};

namespace detail {

/// After an exchange the variable entering the row keeps its sign
/// convention only if row i0 and column j0 are negated; this restores the
/// invariant "row quantity = -(basic variable), column = nonbasic >= 0" for
/// every row and column.
template <class Scalar>
void reorient(Tableau<Scalar>& t, std::size_t i0, std::size_t j0) {
  const std::size_t body_cols = t.cols() - 1;
  for (std::size_t j = 0; j < body_cols; ++j) t.at(i0, j) = -t.at(i0, j);
  t.rhs(i0) = -t.rhs(i0);
  for (std::size_t i = 0; i < t.rows(); ++i) t.at(i, j0) = -t.at(i, j0);
}

}  // namespace detail

/// Runs the feasibility iteration on a tableau built by build_tableau.
///
/// Step 1 picks, among rows above the objective row whose right-hand side is
/// positive for small e, the one carrying the smallest variable label.  If
/// there is none the system is feasible.  Step 2 picks, among body columns
/// with a negative entry in that row, the one minimising t_Mj / |t_i0j|
/// (ties: smallest column label); if there is none the row certifies
/// infeasibility.  Ratios are compared by cross-multiplication.
template <class Scalar>
SolveTrace solve(Tableau<Scalar>& t, SignTolerance tol = {}, std::size_t max_iterations = 0) {
  using Tr = ScalarTraits<Scalar>;
  const std::size_t M = t.rows();
  const std::size_t N = t.cols();
  const std::size_t cap = max_iterations ? max_iterations : 10 * M * N;
  const std::size_t obj = M - 1;

  for (std::size_t iter = 0;; ++iter) {
    std::optional<std::size_t> i0;
    for (std::size_t i = 0; i < obj; ++i) {
      if (eps_sign(t.rhs(i), tol) > 0 && (!i0 || t.row_label(i) < t.row_label(*i0))) i0 = i;
    }
    if (!i0) return {Verdict::Feasible, iter};
    if (iter >= cap) throw IterationLimitExceeded(iter);

    std::optional<std::size_t> j0;
    for (std::size_t j = 0; j + 1 < N; ++j) {
      const Scalar& a = t.at(*i0, j);
      if (Tr::sign(a, tol.eps_tol) >= 0) continue;
      if (!j0) {
        j0 = j;
        continue;
      }
      // t_Mj / |a| versus t_Mj0 / |a0|, both denominators positive.
      const Scalar lhs = t.at(obj, j) * Tr::abs(t.at(*i0, *j0));
      const Scalar rhs = t.at(obj, *j0) * Tr::abs(a);
      const int cmp = Tr::sign(lhs - rhs, tol.eps_tol);
      if (cmp < 0 || (cmp == 0 && t.col_label(j) < t.col_label(*j0))) j0 = j;
    }
    if (!j0) return {Verdict::Infeasible, iter};

    pivot(t, *i0, *j0, tol);
    detail::reorient(t, *i0, *j0);
  }
}

/// Decides whether { a_i^T x = b_i(e), i in J;  a_i^T x <= b_i(e), i not in J }
/// has a solution for every sufficiently small e > 0.
template <class Scalar>
bool feasible(const Polyhedron& p, const IndexSet& J, const LpOptions& opt = {}) {
  auto t = build_tableau<Scalar>(p, J, opt);
  return solve(t, opt.tol, opt.max_iterations).verdict == Verdict::Feasible;
}

inline bool feasible(const Polyhedron& p, const IndexSet& J, const LpOptions& opt, Backend backend) {
  return backend == Backend::Exact ? feasible<Rational>(p, J, opt) : feasible<double>(p, J, opt);
}

}  // namespace abstube
