#pragma once

// The cusped domain D = {-1 <= x <= 1, max(0, -x) <= y <= g(x)} with
// g(x) = (sqrt(1 - x^2) - x arccos x) / pi, its dilates mu D, the shifted
// lattice {(n, k - 1/4)}, the degree-one homogeneous gauge F of D and the
// involution J(x, y) = (-x, y + x) that preserves both D and the lattice.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "diskweyl/errors.hpp"

namespace diskweyl {

struct Point {
  double x;
  double y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Lattice point (n, k - 1/4). The quarter shift is exact in binary.
struct LatticePoint {
  long n;
  long k;
  double y() const { return static_cast<double>(k) - 0.25; }
  Point point() const { return {static_cast<double>(n), y()}; }
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

inline constexpr double kLatticeShift = 0.25;

namespace detail {

// arccos without the loss of relative accuracy near x = +-1.
inline double stable_arccos(double x) {
  if (x > 0.5) return 2.0 * std::asin(std::sqrt(0.5 * (1.0 - x)));
  if (x < -0.5) return std::numbers::pi - 2.0 * std::asin(std::sqrt(0.5 * (1.0 + x)));
  return std::acos(x);
}

}  // namespace detail

/// g(x) = (sqrt(1 - x^2) - x arccos x) / pi on [-1, 1]. With x = cos(theta)
/// this is (sin theta - theta cos theta) / pi, summed as a series for small
/// theta where the two terms cancel (the cusp g ~ (2 sqrt 2 / 3 pi)(1 - x)^{3/2}).
inline double g_profile(double x) {
  detail::require(x >= -1.0 && x <= 1.0, "g_profile: argument outside [-1, 1]");
  const double theta = detail::stable_arccos(x);
  if (theta < 0.25) {
    // sin t - t cos t = sum_{k>=1} (-1)^{k+1} 2k t^{2k+1} / (2k+1)!
    const double t2 = theta * theta;
    double power = theta * t2;  // t^{2k+1}
    double factorial = 6.0;     // (2k+1)!
    double sum = 0.0;
    for (int k = 1; k < 30; ++k) {
      const double term = 2.0 * k * power / factorial;
      sum += (k % 2 == 1) ? term : -term;
      if (term < 1e-18 * sum) break;
      power *= t2;
      factorial *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
    }
    return sum / std::numbers::pi;
  }
  return (std::sin(theta) - theta * x) / std::numbers::pi;
}

/// g'(x) = -arccos(x) / pi.
inline double g_profile_derivative(double x) {
  detail::require(x >= -1.0 && x <= 1.0, "g_profile_derivative: argument outside [-1, 1]");
  return -detail::stable_arccos(x) / std::numbers::pi;
}

/// g''(x) = (1 - x^2)^{-1/2} / pi on the open interval.
inline double g_profile_second_derivative(double x) {
  detail::require(x > -1.0 && x < 1.0, "g_profile_second_derivative: argument outside (-1, 1)");
  return 1.0 / (std::numbers::pi * std::sqrt((1.0 - x) * (1.0 + x)));
}

/// A dilate mu * G of a region G = {x0 <= x <= 1, lower(x) <= y <= g(x)}.
/// Two instances are shipped: the full domain D and the single right cusp
/// {0 <= x <= 1, 0 <= y <= g(x)} used for the mollified counts.
class CuspDomain {
 public:
  enum class Kind { full_disk_domain, right_cusp };

  static CuspDomain disk_domain(double mu) { return CuspDomain(Kind::full_disk_domain, mu); }
  static CuspDomain right_cusp(double mu) { return CuspDomain(Kind::right_cusp, mu); }

  Kind kind() const { return kind_; }
  double mu() const { return mu_; }
  double x_min() const { return kind_ == Kind::full_disk_domain ? -mu_ : 0.0; }
  double x_max() const { return mu_; }

  /// mu * g(x / mu); requires x in [x_min, x_max].
  double upper(double x) const { return mu_ * g_profile(std::clamp(x / mu_, -1.0, 1.0)); }
  double lower(double x) const {
    return kind_ == Kind::full_disk_domain ? std::max(0.0, -x) : 0.0;
  }

  /// Closed-region membership.
  bool contains(Point p) const {
    if (!(p.x >= x_min() && p.x <= x_max())) return false;
    return p.y >= lower(p.x) && p.y <= upper(p.x);
  }

 private:
  CuspDomain(Kind kind, double mu) : kind_(kind), mu_(mu) {
    detail::require(std::isfinite(mu) && mu > 0.0, "CuspDomain: mu must be positive");
  }
  Kind kind_;
  double mu_;
};

/// p in mu * D, boundary included.
inline bool in_domain(double mu, Point p) { return CuspDomain::disk_domain(mu).contains(p); }

/// J(x, y) = (-x, y + x).
inline constexpr Point involution(Point p) { return {-p.x, p.y + p.x}; }

/// The involution on lattice indices: (n, k - 1/4) -> (-n, k + n - 1/4).
inline constexpr LatticePoint involution(LatticePoint m) { return {-m.n, m.k + m.n}; }

/// The gauge F of D: the unique lambda > 0 with lambda * g(x / lambda) = y,
/// defined on S = {y >= max(0, -x)} minus the origin. lambda -> lambda g(x/lambda)
/// is nondecreasing (derivative sqrt(1 - (x/lambda)^2) / pi), so the root is
/// bracketed by doubling from lambda = |x| and isolated by bisection to full
/// double precision.
inline double scale_function(double x, double y) {
  detail::require(std::isfinite(x) && std::isfinite(y), "scale_function: non-finite point");
  detail::require(y >= std::max(0.0, -x) && !(x == 0.0 && y == 0.0),
                  "scale_function: point outside S");
  auto h = [x](double lambda) { return lambda * g_profile(std::clamp(x / lambda, -1.0, 1.0)); };
  double lo = std::max(std::abs(x), std::numeric_limits<double>::min());
  if (h(lo) >= y) return lo;  // on the lower boundary of S
  double hi = std::max(2.0 * lo, std::numbers::pi * y);
  while (h(hi) < y) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 2100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (h(mid) < y) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double scale_function(Point p) { return scale_function(p.x, p.y); }

/// Area of D: integral of g(x) - max(0, -x) over [-1, 1], split at the kink
/// x = 0 and integrated with adaptive Gauss-Kronrod.
inline double area_D(double tolerance = 1e-13) {
  detail::require(tolerance > 0.0, "area_D: tolerance must be positive");
  using boost::math::quadrature::gauss_kronrod;
  double err_left = 0.0, err_right = 0.0;
  const double left = gauss_kronrod<double, 31>::integrate(
      [](double x) { return g_profile(x) + x; }, -1.0, 0.0, 30, tolerance, &err_left);
  const double right = gauss_kronrod<double, 31>::integrate(
      [](double x) { return g_profile(x); }, 0.0, 1.0, 30, tolerance, &err_right);
  if (!(err_left + err_right <= 1e-10)) {
    throw numerical_failure("area_D: quadrature error estimate " +
                            std::to_string(err_left + err_right) + " above 1e-10");
  }
  return left + right;
}

}  // namespace diskweyl
