#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "ratiosec/core.hpp"

namespace ratiosec {

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too few distinct abscissas for the requested degree.
class RankDeficientError : public SingularSystemError {
 public:
  using SingularSystemError::SingularSystemError;
};

/// Polynomial with coefficients in ascending degree order.
class Polynomial {
 public:
  explicit Polynomial(std::vector<double> coefficients);

  std::size_t degree() const noexcept { return coefficients_.size() - 1; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }
  double operator()(double x) const noexcept;

  /// Sum of squared residuals over the points.
  double residual(std::span<const Point2> points) const noexcept;

 private:
  std::vector<double> coefficients_;
};

/// Square system A x = b, A stored row-major.
struct LinearSystem {
  std::size_t n = 0;
  std::vector<double> matrix;
  std::vector<double> rhs;

  LinearSystem(std::size_t size);
  double& at(std::size_t row, std::size_t col) { return matrix[row * n + col]; }
  double at(std::size_t row, std::size_t col) const { return matrix[row * n + col]; }
};

/// Gaussian elimination with partial pivoting. Throws SingularSystemError when
/// a pivot vanishes.
std::vector<double> gauss_solve(LinearSystem sys);

/// Least-squares polynomial of the given degree through the normal equations
/// built from power sums. Requires degree < points.size() - 1 (PreconditionError)
/// and at least degree + 1 distinct abscissas (RankDeficientError).
Polynomial fit_polynomial(std::span<const Point2> points, std::size_t degree);

}  // namespace ratiosec
