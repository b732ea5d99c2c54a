#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abstube/errors.hpp"

namespace abstube {

/// Strictly increasing set of 1-based constraint indices.
///
/// Ordered by cardinality first and lexicographically within a
/// cardinality, which is the total order used to rank candidate subsets.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<int> indices) : IndexSet(std::vector<int>(indices)) {}
  explicit IndexSet(std::vector<int> indices) : idx_(std::move(indices)) {
    for (std::size_t k = 0; k < idx_.size(); ++k) {
      if (idx_[k] < 1) throw IndexOutOfRange("index set entries are 1-based");
      if (k > 0 && idx_[k] <= idx_[k - 1])
        throw std::invalid_argument("index set must be strictly increasing");
    }
  }

  /// Bit i-1 set for every member i.  Requires every index <= 64.
  static IndexSet from_mask(std::uint64_t mask) {
    std::vector<int> v;
    for (int i = 0; i < 64; ++i)
      if (mask >> i & 1U) v.push_back(i + 1);
    return IndexSet(std::move(v));
  }

  std::uint64_t mask() const {
    std::uint64_t mask = 0;
    for (int i : idx_) {
      if (i > 64) throw IndexOutOfRange("index " + std::to_string(i) + " does not fit a 64-bit mask");
      mask |= std::uint64_t{1} << (i - 1);
    }
    return mask;
  }

  std::size_t size() const noexcept { return idx_.size(); }
  bool empty() const noexcept { return idx_.empty(); }
  int operator[](std::size_t k) const { return idx_[k]; }
  int back() const { return idx_.back(); }
  auto begin() const noexcept { return idx_.begin(); }
  auto end() const noexcept { return idx_.end(); }
  const std::vector<int>& indices() const noexcept { return idx_; }

  bool contains(int i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

  bool is_subset_of(const IndexSet& other) const {
    return std::includes(other.idx_.begin(), other.idx_.end(), idx_.begin(), idx_.end());
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend std::strong_ordering operator<=>(const IndexSet& a, const IndexSet& b) {
    if (auto c = a.idx_.size() <=> b.idx_.size(); c != 0) return c;
    return a.idx_ <=> b.idx_;
  }

  /// "{1,2,4}"
  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < idx_.size(); ++k) s += (k ? "," : "") + std::to_string(idx_[k]);
    return s + "}";
  }

 private:
  std::vector<int> idx_;
};

/// K = { x : A^T x <= b } with the normals a_i stored as the columns of A.
struct Polyhedron {
  int n = 0;
  int m = 0;
  Eigen::MatrixXd A;  // n x m
  Eigen::VectorXd b;  // m

  /// Builds from the row form used in files: row i is a_i^T.
  static Polyhedron from_rows(const std::vector<std::vector<double>>& rows, const std::vector<double>& rhs) {
    Polyhedron p;
    p.m = static_cast<int>(rows.size());
    p.n = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    if (rhs.size() != rows.size()) throw ShapeMismatch("right-hand side length differs from row count");
    p.A.resize(p.n, p.m);
    for (int i = 0; i < p.m; ++i) {
      if (static_cast<int>(rows[i].size()) != p.n)
        throw ShapeMismatch("row " + std::to_string(i + 1) + " has the wrong length");
      for (int k = 0; k < p.n; ++k) p.A(k, i) = rows[i][k];
    }
    p.b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    return p;
  }

  /// Normal of constraint i (1-based).
  Eigen::VectorXd normal(int i) const { return A.col(i - 1); }
};

/// Throws ShapeMismatch or ZeroNormal when the system is malformed.
inline void validate(const Polyhedron& p) {
  if (p.n < 1 || p.m < 1) throw ShapeMismatch("polyhedron needs n >= 1 and m >= 1");
  if (p.A.rows() != p.n || p.A.cols() != p.m)
    throw ShapeMismatch("A is " + std::to_string(p.A.rows()) + "x" + std::to_string(p.A.cols()) +
                        ", expected " + std::to_string(p.n) + "x" + std::to_string(p.m));
  if (p.b.size() != p.m) throw ShapeMismatch("b has " + std::to_string(p.b.size()) + " entries, expected m");
  if (!p.A.allFinite() || !p.b.allFinite()) throw ShapeMismatch("non-finite coefficient");
  for (int i = 1; i <= p.m; ++i)
    if (p.A.col(i - 1).norm() == 0.0) throw ZeroNormal(i);
}

/// Numerical rank of A; singular values below 1e-10 * sigma_max count as zero.
inline int rank(const Polyhedron& p) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.A);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = 1e-10 * sv(0);
  return static_cast<int>((sv.array() > cutoff).count());
}

/// The sub-system indexed by J together with its Gram matrix A_J^T A_J.
struct ConeTerm {
  IndexSet J;
  Eigen::MatrixXd A_J;
  Eigen::VectorXd b_J;
  Eigen::MatrixXd gram;
};

inline void check_subset(const Polyhedron& p, const IndexSet& J) {
  if (J.empty()) throw IndexOutOfRange("subset must be nonempty");
  if (J.back() > p.m)
    throw IndexOutOfRange("index " + std::to_string(J.back()) + " exceeds m = " + std::to_string(p.m));
}

inline ConeTerm cone_term(const Polyhedron& p, const IndexSet& J) {
  check_subset(p, J);
  ConeTerm t;
  t.J = J;
  const auto d = static_cast<Eigen::Index>(J.size());
  t.A_J.resize(p.n, d);
  t.b_J.resize(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    t.A_J.col(k) = p.A.col(J[k] - 1);
    t.b_J(k) = p.b(J[k] - 1);
  }
  t.gram = t.A_J.transpose() * t.A_J;
  return t;
}

}  // namespace abstube
