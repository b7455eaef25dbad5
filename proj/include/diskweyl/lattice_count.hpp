#pragma once

// Lattice-point counts N_D(mu) = #{(n, k - 1/4) in mu D}, a brute-force
// oracle for them, and the mollified counts N_eps^+- over the single right
// cusp G that sandwich the chi-weighted count:
//
//   N_eps^+-(mu) = sum_{m in R} ((chi0 * 1_{G^+-}) conv rho_eps)(m),
//
// G^+ = {0 <= x <= mu, 0 <= y <= mu g(x/mu) + 2 eps},
// 1_{G^-} = 1_{0 <= x <= mu, 0 <= y <= mu g - 2 eps}
//         - 1_{0 <= x <= mu, mu g - 2 eps <= y <= 0}.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "diskweyl/errors.hpp"
#include "diskweyl/geometry.hpp"

namespace diskweyl {

/// Number of k with max(0, -n) <= k - 1/4 <= mu g(n / mu).
inline long column_count(long n, double mu) {
  detail::require(std::isfinite(mu) && mu > 0.0, "column_count: mu must be positive");
  const double x = static_cast<double>(n);
  if (std::abs(x) > mu) return 0;
  const double upper = mu * g_profile(std::clamp(x / mu, -1.0, 1.0));
  const long top = static_cast<long>(std::floor(upper + kLatticeShift));
  return std::max(0L, top - std::max(0L, -n));
}

/// N_D(mu): column sums over |n| <= mu.
inline long count_lattice(double mu) {
  detail::require(std::isfinite(mu) && mu > 0.0, "count_lattice: mu must be positive");
  const long span = static_cast<long>(std::floor(mu));
  long total = 0;
  for (long n = -span; n <= span; ++n) total += column_count(n, mu);
  return total;
}

inline constexpr double kBruteForceMaxMu = 2000.0;

/// N_D(mu) by testing every candidate (n, k) against in_domain.
inline long brute_force_count(double mu) {
  detail::require(std::isfinite(mu) && mu > 0.0, "brute_force_count: mu must be positive");
  detail::require(mu <= kBruteForceMaxMu, "brute_force_count: mu above cost guard");
  const long span = static_cast<long>(std::floor(mu));
  const long k_max = static_cast<long>(std::floor(mu)) + 1;
  const CuspDomain domain = CuspDomain::disk_domain(mu);
  long total = 0;
  for (long n = -span; n <= span; ++n) {
    for (long k = 1; k <= k_max; ++k) {
      if (domain.contains(LatticePoint{n, k}.point())) ++total;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Mollified counts

namespace detail {

// C-infinity step: 0 for u <= 0, 1 for u >= 1.
inline double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

inline double unnormalized_bump(double r) {
  return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
}

}  // namespace detail

/// Even cutoff equal to 1 on [-plateau, plateau] and 0 outside (-support, support).
inline double plateau_bump(double t, double plateau, double support) {
  return 1.0 - detail::smooth_step((std::abs(t) - plateau) / (support - plateau));
}

/// 1 / (2 pi int_0^1 exp(-1/(1-r^2)) r dr): makes the radial bump a unit-mass
/// mollifier on the plane.
inline double mollifier_normalization() {
  using boost::math::quadrature::gauss_kronrod;
  const double radial = gauss_kronrod<double, 61>::integrate(
      [](double r) { return detail::unnormalized_bump(r) * r; }, 0.0, 1.0, 20, 1e-15);
  return 1.0 / (2.0 * std::numbers::pi * radial);
}

/// Radius of the disk around the origin where the cutoff phi removes chi(y/x);
/// phi == 1 on B(0, 0.1) and vanishes outside B(0, 0.2), inside B(0, 1/4)
/// which holds no lattice point.
inline constexpr double kOriginCutoffInner = 0.1;
inline constexpr double kOriginCutoffOuter = 0.2;

struct MollifyConfig {
  double eps_exponent = 1.0 / 3.0;  ///< eps = mu^{-eps_exponent}
  int quad_cells = 64;              ///< midpoint cells per eps along each axis
  double chi_plateau = 0.15;
  double chi_support = 0.30;
  double bump_normalization = mollifier_normalization();

  void validate() const {
    detail::require(std::isfinite(eps_exponent) && eps_exponent > 0.0,
                    "MollifyConfig: eps_exponent must be positive");
    detail::require(quad_cells >= 4, "MollifyConfig: quad_cells must be >= 4");
    detail::require(chi_plateau > 0.0 && chi_plateau < 1.0,
                    "MollifyConfig: chi_plateau must lie in (0, 1)");
    detail::require(chi_support > chi_plateau, "MollifyConfig: chi_support must exceed chi_plateau");
    detail::require(bump_normalization > 0.0, "MollifyConfig: bump_normalization must be positive");
  }

  double epsilon(double mu) const { return std::pow(mu, -eps_exponent); }

  /// chi(y / x) for x > 0, and 0 for x <= 0.
  double chi(Point p) const {
    if (!(p.x > 0.0)) return 0.0;
    return plateau_bump(p.y / p.x, chi_plateau, chi_support);
  }

  /// chi0 = chi(y/x) (1 - phi(x, y)).
  double chi0(Point p) const {
    const double r = std::hypot(p.x, p.y);
    const double phi = plateau_bump(r, kOriginCutoffInner, kOriginCutoffOuter);
    if (phi >= 1.0) return 0.0;
    return chi(p) * (1.0 - phi);
  }

  /// rho_eps(u) = rho(u / eps) / eps^2.
  double mollifier(double dx, double dy, double eps) const {
    const double r = std::hypot(dx, dy) / eps;
    return bump_normalization * detail::unnormalized_bump(r) / (eps * eps);
  }
};

enum class MollifySign { plus, minus };

inline constexpr double kMollifyMaxMu = 50.0;

namespace detail {

// Signed indicator of G^+ or G^- at (x, y) given the local upper boundary.
inline double signed_indicator(MollifySign sign, double x, double y, double mu, double upper,
                               double eps) {
  if (!(x >= 0.0 && x <= mu)) return 0.0;
  if (sign == MollifySign::plus) return (y >= 0.0 && y <= upper + 2.0 * eps) ? 1.0 : 0.0;
  const double shifted = upper - 2.0 * eps;
  if (y >= 0.0 && y <= shifted) return 1.0;
  if (y >= shifted && y <= 0.0) return -1.0;
  return 0.0;
}

}  // namespace detail

/// ((chi0 1_{G^+-}) conv rho_eps)(m) by the tensor midpoint rule on the
/// bounding box of B(m, eps).
inline double mollified_contribution(MollifySign sign, double mu, Point m, const MollifyConfig& cfg,
                                     double eps) {
  const CuspDomain cusp = CuspDomain::right_cusp(mu);
  const int cells = 2 * cfg.quad_cells;
  const double h = 2.0 * eps / cells;
  double sum = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double x = m.x - eps + (i + 0.5) * h;
    if (!(x >= 0.0 && x <= mu)) continue;
    const double upper = cusp.upper(x);
    double column = 0.0;
    for (int j = 0; j < cells; ++j) {
      const double y = m.y - eps + (j + 0.5) * h;
      const double w = cfg.mollifier(x - m.x, y - m.y, eps);
      if (w == 0.0) continue;
      const double ind = detail::signed_indicator(sign, x, y, mu, upper, eps);
      if (ind == 0.0) continue;
      column += w * ind * cfg.chi0({x, y});
    }
    sum += column;
  }
  return sum * h * h;
}

namespace detail {

// Calls visit(m) for every lattice point whose eps-ball can meet the support
// of chi0 * 1_{G^+-}, in n-then-k order.
template <class Visit>
void for_each_candidate(double mu, double eps, const MollifyConfig& cfg, Visit&& visit) {
  const long n_lo = static_cast<long>(std::ceil(-eps));
  const long n_hi = static_cast<long>(std::floor(mu + eps));
  const double y_lo = -3.0 * eps;
  const double y_hi = mu / std::numbers::pi + 3.0 * eps;
  const long k_lo = static_cast<long>(std::ceil(y_lo + kLatticeShift));
  const long k_hi = static_cast<long>(std::floor(y_hi + kLatticeShift));
  for (long n = n_lo; n <= n_hi; ++n) {
    for (long k = k_lo; k <= k_hi; ++k) {
      const Point m = LatticePoint{n, k}.point();
      if (m.x + eps <= 0.0) continue;
      if (std::abs(m.y) - eps > cfg.chi_support * (m.x + eps)) continue;
      visit(m);
    }
  }
}

}  // namespace detail

/// N_eps^+ or N_eps^- for the right cusp of mu D.
inline double mollified_count(MollifySign sign, double mu, const MollifyConfig& cfg = {}) {
  cfg.validate();
  detail::require(std::isfinite(mu) && mu > 0.0, "mollified_count: mu must be positive");
  detail::require(mu <= kMollifyMaxMu, "mollified_count: mu above quadrature cost guard");
  const double eps = cfg.epsilon(mu);
  double total = 0.0;
  detail::for_each_candidate(mu, eps, cfg, [&](Point m) {
    total += mollified_contribution(sign, mu, m, cfg, eps);
  });
  return total;
}

struct SandwichResult {
  double mu;
  double epsilon;
  double n_minus;
  double n_exact;       ///< sum of chi(m2/m1) over lattice points of mu G
  double n_plus;
  long lattice_points;  ///< lattice points of mu G with nonzero weight
  bool ordered() const { return n_minus <= n_exact && n_exact <= n_plus; }
};

/// chi-weighted lattice count over mu G (the right cusp). Columns with
/// m1 = 0 carry weight 0.
inline double weighted_cusp_count(double mu, const MollifyConfig& cfg, long* points = nullptr) {
  const CuspDomain cusp = CuspDomain::right_cusp(mu);
  double total = 0.0;
  long count = 0;
  const long n_hi = static_cast<long>(std::floor(mu));
  for (long n = 1; n <= n_hi; ++n) {
    for (long k = 1;; ++k) {
      const Point m = LatticePoint{n, k}.point();
      if (!cusp.contains(m)) break;
      const double w = cfg.chi0(m);
      if (w > 0.0) {
        total += w;
        ++count;
      }
    }
  }
  if (points) *points = count;
  return total;
}

inline SandwichResult sandwich_check(double mu, const MollifyConfig& cfg = {}) {
  SandwichResult r{};
  r.mu = mu;
  r.n_minus = mollified_count(MollifySign::minus, mu, cfg);
  r.n_plus = mollified_count(MollifySign::plus, mu, cfg);
  r.epsilon = cfg.epsilon(mu);
  r.n_exact = weighted_cusp_count(mu, cfg, &r.lattice_points);
  return r;
}

}  // namespace diskweyl
