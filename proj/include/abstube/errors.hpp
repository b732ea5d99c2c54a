#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace abstube {

/// Base of every error raised by the library.
///
/// Errors raised while processing one member of a tube carry that member
/// (1-based indices) so callers can report which subset failed.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}

  const std::vector<int>& subset() const noexcept { return subset_; }
  void attach_subset(std::vector<int> subset) { subset_ = std::move(subset); }

 private:
  std::vector<int> subset_;
};

class ZeroNormal : public Error {
 public:
  explicit ZeroNormal(int index)
      : Error("constraint " + std::to_string(index) + " has a zero normal vector"), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  DegreeMismatch(std::size_t lhs, std::size_t rhs)
      : Error("epsilon polynomial degree mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

class ZeroPivot : public Error {
 public:
  ZeroPivot(std::size_t row, std::size_t col)
      : Error("zero pivot element at (" + std::to_string(row) + ", " + std::to_string(col) + ")") {}
};

/// The pivot sequence did not settle within the configured cap.  Distinct
/// from both feasibility verdicts.
class IterationLimitExceeded : public Error {
 public:
  explicit IterationLimitExceeded(std::size_t iterations)
      : Error("pivot iteration limit exceeded after " + std::to_string(iterations) + " pivots") {}
};

class NotInFamily : public Error {
 public:
  using Error::Error;
};

class RankOutOfRange : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class ToleranceNotMet : public Error {
 public:
  ToleranceNotMet(double estimate, double tolerance)
      : Error("quadrature error estimate " + std::to_string(estimate) + " exceeds tolerance " +
              std::to_string(tolerance)),
        estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace abstube
