#include "ratiosec/polyfit.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

namespace ratiosec {

Polynomial::Polynomial(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw PreconditionError("polynomial needs at least one coefficient");
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw PreconditionError("polynomial coefficient is not finite");
  }
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::residual(std::span<const Point2> points) const noexcept {
  double sum = 0.0;
  for (const Point2& p : points) {
    const double r = (*this)(p.x) - p.y;
    sum += r * r;
  }
  return sum;
}

LinearSystem::LinearSystem(std::size_t size) : n(size), matrix(size * size, 0.0), rhs(size, 0.0) {}

std::vector<double> gauss_solve(LinearSystem sys) {
  const std::size_t n = sys.n;
  if (sys.matrix.size() != n * n || sys.rhs.size() != n) {
    throw PreconditionError("linear system dimensions disagree");
  }
  double scale = 0.0;
  for (double v : sys.matrix) scale = std::max(scale, std::abs(v));
  const double tiny = scale * 1e-14 * static_cast<double>(std::max<std::size_t>(n, 1));

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(sys.at(i, k)) > std::abs(sys.at(pivot, k))) pivot = i;
    }
    if (!(std::abs(sys.at(pivot, k)) > tiny)) {
      throw SingularSystemError(fmt::format("zero pivot in column {}", k));
    }
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(sys.at(k, j), sys.at(pivot, j));
      std::swap(sys.rhs[k], sys.rhs[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = sys.at(i, k) / sys.at(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) sys.at(i, j) -= f * sys.at(k, j);
      sys.rhs[i] -= f * sys.rhs[k];
    }
  }

  std::vector<double> x(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double acc = sys.rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= sys.at(k, j) * x[j];
    x[k] = acc / sys.at(k, k);
  }
  return x;
}

Polynomial fit_polynomial(std::span<const Point2> points, std::size_t degree) {
  if (points.size() < degree + 2) {
    throw PreconditionError(
        fmt::format("degree {} needs more than {} points, got {}", degree, degree + 1, points.size()));
  }
  std::vector<double> xs;
  xs.reserve(points.size());
  for (const Point2& p : points) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  const auto distinct = static_cast<std::size_t>(std::unique(xs.begin(), xs.end()) - xs.begin());
  if (distinct < degree + 1) {
    throw RankDeficientError(
        fmt::format("degree {} needs {} distinct abscissas, got {}", degree, degree + 1, distinct));
  }

  // Work in t = (x - center) / half, t in [-1, 1].
  const double center = 0.5 * (xs.front() + xs[distinct - 1]);
  const double half = 0.5 * (xs[distinct - 1] - xs.front());

  const std::size_t m = degree;
  std::vector<double> power_sums(2 * m + 1, 0.0);
  LinearSystem sys(m + 1);
  for (const Point2& p : points) {
    const double t = (p.x - center) / half;
    double tj = 1.0;
    for (std::size_t j = 0; j <= 2 * m; ++j) {
      power_sums[j] += tj;
      if (j <= m) sys.rhs[j] += p.y * tj;
      tj *= t;
    }
  }
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j <= m; ++j) sys.at(i, j) = power_sums[i + j];
  }
  const std::vector<double> scaled = gauss_solve(std::move(sys));

  // Expand sum_k d_k ((x - center) / half)^k into powers of x.
  std::vector<double> coeffs(m + 1, 0.0);
  std::vector<double> term{1.0};  // ((x - center) / half)^k, ascending
  for (std::size_t k = 0; k <= m; ++k) {
    for (std::size_t j = 0; j < term.size(); ++j) coeffs[j] += scaled[k] * term[j];
    std::vector<double> next(term.size() + 1, 0.0);
    for (std::size_t j = 0; j < term.size(); ++j) {
      next[j + 1] += term[j] / half;
      next[j] -= term[j] * center / half;
    }
    term = std::move(next);
  }
  return Polynomial(std::move(coeffs));
}

}  // namespace ratiosec
