#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "abstube/errors.hpp"
#include "abstube/scalar.hpp"

namespace abstube {

/// Threshold below which a floating coefficient counts as zero when
/// deciding the sign of a polynomial in the infinitesimal.
struct SignTolerance {
  double eps_tol = 1e-14;

  SignTolerance() = default;
  explicit SignTolerance(double tol) : eps_tol(tol) {
    if (!(tol > 0)) throw std::invalid_argument("sign tolerance must be positive");
  }
};

/// Polynomial c_0 + c_1 e + ... + c_D e^D in an infinitesimal e > 0.
///
/// The length is fixed at construction; all arithmetic is coefficient-wise
/// and requires both operands to share the same degree bound.
template <class Scalar>
class EpsPoly {
 public:
  EpsPoly() : coeffs_(1, Scalar(0)) {}
  explicit EpsPoly(std::size_t degree) : coeffs_(degree + 1, Scalar(0)) {}
  EpsPoly(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) {
    if (coeffs_.empty()) coeffs_.assign(1, Scalar(0));
  }
  explicit EpsPoly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.assign(1, Scalar(0));
  }

  static EpsPoly constant(Scalar value, std::size_t degree) {
    EpsPoly p(degree);
    p.coeffs_[0] = std::move(value);
    return p;
  }

  static EpsPoly monomial(std::size_t power, Scalar coeff, std::size_t degree) {
    if (power > degree) throw std::out_of_range("monomial power exceeds degree bound");
    EpsPoly p(degree);
    p.coeffs_[power] = std::move(coeff);
    return p;
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  std::span<const Scalar> coefficients() const noexcept { return coeffs_; }

  const Scalar& operator[](std::size_t k) const { return coeffs_[k]; }
  Scalar& operator[](std::size_t k) { return coeffs_[k]; }

  EpsPoly& operator+=(const EpsPoly& other) {
    check_degree(other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
  }

  EpsPoly& operator-=(const EpsPoly& other) {
    check_degree(other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
  }

  EpsPoly& operator*=(const Scalar& alpha) {
    for (auto& c : coeffs_) c *= alpha;
    return *this;
  }

  /// this += alpha * x
  EpsPoly& axpy(const Scalar& alpha, const EpsPoly& x) {
    check_degree(x);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += alpha * x.coeffs_[k];
    return *this;
  }

  EpsPoly operator-() const {
    EpsPoly r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend EpsPoly operator+(EpsPoly lhs, const EpsPoly& rhs) { return lhs += rhs; }
  friend EpsPoly operator-(EpsPoly lhs, const EpsPoly& rhs) { return lhs -= rhs; }
  friend EpsPoly operator*(const Scalar& alpha, EpsPoly p) { return p *= alpha; }
  friend EpsPoly operator*(EpsPoly p, const Scalar& alpha) { return p *= alpha; }
  friend bool operator==(const EpsPoly& a, const EpsPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Horner evaluation at a concrete value of the infinitesimal.
  template <class Value>
  Value evaluate(const Value& eps) const {
    Value acc(0);
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * eps + Value(coeffs_[k]);
    return acc;
  }

  friend std::ostream& operator<<(std::ostream& os, const EpsPoly& p) {
    os << '(';
    for (std::size_t k = 0; k < p.coeffs_.size(); ++k) os << (k ? ", " : "") << p.coeffs_[k];
    return os << ')';
  }

 private:
  void check_degree(const EpsPoly& other) const {
    if (other.coeffs_.size() != coeffs_.size()) throw DegreeMismatch(degree(), other.degree());
  }

  std::vector<Scalar> coeffs_;
};

/// Sign of the polynomial for all sufficiently small e > 0: the sign of the
/// first coefficient that is not (numerically) zero.
template <class Scalar>
int eps_sign(const EpsPoly<Scalar>& p, SignTolerance tol = {}) {
  for (const auto& c : p.coefficients()) {
    if (int s = ScalarTraits<Scalar>::sign(c, tol.eps_tol); s != 0) return s;
  }
  return 0;
}

}  // namespace abstube
