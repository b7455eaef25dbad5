#pragma once

// Empirical side of the O(mu^{2/3}) statements: remainder scans, power-law
// envelope fits, the conditionally convergent series
// i sum_{q != 0} exp(-2 pi i beta q) / q, and the decay of the one-dimensional
// oscillatory integrals that bound the Fourier transforms of the cusp domains.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "diskweyl/errors.hpp"
#include "diskweyl/spectral_count.hpp"

namespace diskweyl {

struct FitResult {
  double exponent;
  double log_constant;
  double r_squared;
  int sample_count;
  int block_size;
};

struct PowerLawPoint {
  double mu;
  double value;
};

/// Least-squares line through (log mu, log value); every value must be positive.
inline FitResult fit_power_law(std::span<const PowerLawPoint> points, int sample_count,
                               int block_size) {
  detail::require(points.size() >= 2, "fit_power_law: need at least two points");
  double sx = 0, sy = 0;
  for (const auto& p : points) {
    detail::require(p.mu > 0.0 && p.value > 0.0, "fit_power_law: nonpositive coordinate");
    sx += std::log(p.mu);
    sy += std::log(p.value);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : points) {
    const double dx = std::log(p.mu) - mx, dy = std::log(p.value) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  detail::require(sxx > 0.0, "fit_power_law: all abscissae coincide");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0;
  for (const auto& p : points) {
    const double r = std::log(p.value) - (intercept + slope * std::log(p.mu));
    ss_res += r * r;
  }
  // Constant data: syy is pure rounding noise and the fit is exact.
  const double noise = 1e-24 * n * (1.0 + my * my);
  double r2 = (syy > noise) ? 1.0 - ss_res / syy : 1.0;
  r2 = std::clamp(r2, 0.0, 1.0);
  return {slope, intercept, r2, sample_count, block_size};
}

inline constexpr int kDefaultBlockSize = 20;
inline constexpr int kMinEnvelopeBlocks = 8;

/// Envelope exponent of |value|: maxima over consecutive blocks of
/// `block_size` samples (trailing partial block dropped), regressed in log-log
/// against the mu at which each maximum occurs. Blocks whose maximum is zero
/// carry no information and are skipped.
inline FitResult fit_envelope(std::span<const PowerLawPoint> samples, int block_size) {
  detail::require(block_size >= 1, "fit_envelope: block_size must be positive");
  const std::size_t blocks = samples.size() / static_cast<std::size_t>(block_size);
  detail::require(blocks >= kMinEnvelopeBlocks,
                  "fit_envelope: need at least " + std::to_string(kMinEnvelopeBlocks) +
                      " blocks, got " + std::to_string(blocks));
  std::vector<PowerLawPoint> maxima;
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto first = samples.begin() + static_cast<std::ptrdiff_t>(b * block_size);
    PowerLawPoint peak{first->mu, 0.0};
    for (auto it = first; it != first + block_size; ++it) {
      if (std::abs(it->value) > peak.value) peak = {it->mu, std::abs(it->value)};
    }
    if (peak.value > 0.0) maxima.push_back(peak);
  }
  if (maxima.size() < 2) {
    throw numerical_failure("fit_envelope: degenerate data (block maxima are zero)");
  }
  return fit_power_law(maxima, static_cast<int>(blocks * block_size), block_size);
}

enum class EnvelopeField { remainder, diff };

inline std::vector<PowerLawPoint> envelope_points(std::span<const CountSample> samples,
                                                  EnvelopeField field) {
  std::vector<PowerLawPoint> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back({s.mu, field == EnvelopeField::remainder ? s.remainder
                                                           : static_cast<double>(s.diff)});
  }
  return out;
}

inline FitResult fit_envelope(std::span<const CountSample> samples, int block_size,
                              EnvelopeField field = EnvelopeField::remainder) {
  const auto points = envelope_points(samples, field);
  return fit_envelope(std::span<const PowerLawPoint>(points), block_size);
}

// ---------------------------------------------------------------------------
// Remainder scans

/// Fraction of the step added to every grid point (times 1/sqrt 2) so that
/// the grid does not sit on eigenvalue ties.
inline constexpr double kScanOffsetFraction = 0.01;

inline std::vector<double> scan_grid(double mu_min, double mu_max, double step) {
  detail::require(std::isfinite(mu_min) && std::isfinite(mu_max) && mu_min > 0.0 && mu_min < mu_max,
                  "scan: need 0 < mu_min < mu_max");
  detail::require(std::isfinite(step) && step > 0.0, "scan: step must be positive");
  const auto count = static_cast<std::size_t>(std::floor((mu_max - mu_min) / step + 1e-9)) + 1;
  const double offset = step * kScanOffsetFraction / std::numbers::sqrt2;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = mu_min + static_cast<double>(i) * step + offset;
  return grid;
}

/// One CountSample per grid point, mu ascending. The zeros are computed once,
/// up to the largest grid point.
inline std::vector<CountSample> scan_remainder(double mu_min, double mu_max, double step,
                                               unsigned threads = 0) {
  const std::vector<double> grid = scan_grid(mu_min, mu_max, step);
  const DiskSpectrum spectrum(grid.back(), threads);
  std::vector<CountSample> out;
  out.reserve(grid.size());
  for (double mu : grid) out.push_back(spectrum.sample(mu));
  return out;
}

// ---------------------------------------------------------------------------
// The beta series

enum class Summation { symmetric, abel };

/// i sum_{q != 0} exp(-2 pi i beta q) / q = 2 sum_{q >= 1} sin(2 pi beta q) / q.
/// Symmetric: partial sum to q_max. Abel: term q weighted by r^q with
/// r = 1 - 1/q_max, summed until r^q is negligible.
inline double beta_series(double beta, long q_max, Summation summation = Summation::abel) {
  detail::require(beta > 0.0 && beta < 1.0, "beta_series: beta must lie in (0, 1)");
  detail::require(q_max >= 1, "beta_series: q_max must be positive");
  auto term = [beta](long q) {
    const double frac = std::fmod(beta * static_cast<double>(q), 1.0);
    return std::sin(2.0 * std::numbers::pi * frac) / static_cast<double>(q);
  };
  double sum = 0.0;
  if (summation == Summation::symmetric) {
    for (long q = 1; q <= q_max; ++q) sum += term(q);
    return 2.0 * sum;
  }
  const double r = 1.0 - 1.0 / static_cast<double>(q_max);
  double weight = 1.0;
  for (long q = 1;; ++q) {
    weight *= r;
    if (weight < 1e-18) break;
    sum += weight * term(q);
  }
  return 2.0 * sum;
}

/// The value the series converges to, 2 pi (1/2 - beta) (from
/// sum sin(q theta)/q = (pi - theta)/2 on (0, 2 pi)).
inline double beta_series_limit(double beta) { return 2.0 * std::numbers::pi * (0.5 - beta); }

// ---------------------------------------------------------------------------
// Oscillatory integrals

enum class OscKind { c_A, c_B, v_linear, h_linear };

inline const char* to_string(OscKind kind) {
  switch (kind) {
    case OscKind::c_A: return "c_A";
    case OscKind::c_B: return "c_B";
    case OscKind::v_linear: return "v_linear";
    case OscKind::h_linear: return "h_linear";
  }
  return "?";
}

/// Bound on |nu| for the curved-part integrals.
inline constexpr double kOscNuMax = 0.1;

/// exp(-1 / (1 - (t/2)^2)) on |t| < 2: the standard bump scaled to radius 2.
/// On [0, infinity) its support is [0, 2] and it does not vanish at t = 0.
inline double standard_amplitude(double t) {
  const double u = 0.5 * t;
  return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
}

/// f for the c_A integral. f(0) = 1, and for every |nu| <= kOscNuMax the phase
/// nu t^3 - t^2 f(t) = (nu + 1/2) t^3 - t^2 has a nondegenerate critical point
/// 2 / (3 (nu + 1/2)) inside the support of the amplitude.
inline double default_c_a_profile(double t) { return 1.0 - 0.5 * t; }

struct OscIntegralSpec {
  OscKind kind = OscKind::c_B;
  double nu = 0.0;
  std::vector<double> tau_grid;
  std::function<double(double)> f = [](double) { return 1.0; };
  std::function<double(double)> g = standard_amplitude;
  double support_end = 2.0;      ///< g vanishes beyond this point
  double panel_tolerance = 1e-10; ///< relative tolerance of each adaptive panel
  // Linear parts: I(tau) := I_v(tau xi, tau eta) or I_h(tau xi, tau eta).
  double xi = 0.0;
  double eta = 1.0;
  double mu = 1.0;
  double eps = 0.1;

  static OscIntegralSpec curved(OscKind kind, double nu, std::vector<double> taus) {
    OscIntegralSpec s;
    s.kind = kind;
    s.nu = nu;
    s.tau_grid = std::move(taus);
    if (kind == OscKind::c_A) s.f = default_c_a_profile;
    return s;
  }

  void validate() const {
    detail::require(tau_grid.size() >= kMinEnvelopeBlocks, "OscIntegralSpec: need >= 8 tau values");
    for (double t : tau_grid) detail::require(t > 0.0, "OscIntegralSpec: tau must be positive");
    const auto [lo, hi] = std::minmax_element(tau_grid.begin(), tau_grid.end());
    detail::require(*hi >= 1e3 * *lo, "OscIntegralSpec: tau grid must span three decades");
    if (kind == OscKind::c_A || kind == OscKind::c_B) {
      detail::require(std::abs(nu) <= kOscNuMax, "OscIntegralSpec: |nu| above kOscNuMax");
      detail::require(f && g, "OscIntegralSpec: profile hooks missing");
      detail::require(support_end > 0.0, "OscIntegralSpec: support_end must be positive");
      detail::require(panel_tolerance > 0.0, "OscIntegralSpec: panel_tolerance must be positive");
    }
  }
};

/// Log-spaced grid with `per_decade` points per decade, both ends included.
inline std::vector<double> log_grid(double lo, double hi, int per_decade) {
  detail::require(lo > 0.0 && hi > lo && per_decade >= 1, "log_grid: bad range");
  const double decades = std::log10(hi / lo);
  const int steps = static_cast<int>(std::ceil(decades * per_decade - 1e-9));
  std::vector<double> out;
  for (int i = 0; i <= steps; ++i) out.push_back(lo * std::pow(10.0, decades * i / steps));
  return out;
}

/// I_v(xi, eta) = (1/xi) int_0^{2 eps} exp(i y eta) dy.
inline std::complex<double> linear_part_v(double xi, double eta, double eps) {
  detail::require(xi != 0.0, "linear_part_v: xi must be nonzero");
  using namespace std::complex_literals;
  if (eta == 0.0) return {2.0 * eps / xi, 0.0};
  return (std::exp(1i * (2.0 * eps * eta)) - 1.0) / (1i * eta * xi);
}

/// I_h(xi, eta) = (i/eta) int_0^mu exp(i x xi) dx; I_h(0, eta) = i mu / eta.
inline std::complex<double> linear_part_h(double xi, double eta, double mu) {
  detail::require(eta != 0.0, "linear_part_h: eta must be nonzero");
  using namespace std::complex_literals;
  if (xi == 0.0) return {0.0, mu / eta};
  return (std::exp(1i * (mu * xi)) - 1.0) / (eta * xi);
}

namespace detail {

struct CurvedIntegrand {
  OscKind kind;
  double nu;
  const std::function<double(double)>& f;
  const std::function<double(double)>& g;

  double phase(double t) const {
    const double t2 = t * t;
    return kind == OscKind::c_A ? nu * t2 * t - t2 * f(t) : t2 * t - nu * t2 * f(t);
  }
  double amplitude(double t) const { return kind == OscKind::c_A ? t * t * g(t) : t * g(t); }
};

}  // namespace detail

/// Panel length target: this many oscillations of exp(i tau phase) per panel.
inline constexpr double kOscillationsPerPanel = 2.0;
inline constexpr double kMaxPanelLength = 0.05;
inline constexpr int kMaxPanelDepth = 30;

namespace detail {

// Bisects [a, b] until each Gauss-Kronrod error estimate is below its share
// of the absolute budget `tol` (share proportional to length), or is down to
// the noise level `floor` relative to the panel's L1 norm.
template <class F>
std::complex<double> adaptive_panel(const F& f, double a, double b, double tol, double floor,
                                    int depth) {
  double err = 0.0, l1 = 0.0;
  const std::complex<double> v =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err, &l1);
  err *= 0.5 * (b - a);  // reported on the reference interval [-1, 1]
  if (!std::isfinite(err) || !std::isfinite(std::abs(v))) {
    throw numerical_failure("oscillatory quadrature: non-finite panel");
  }
  if (err <= tol || err <= floor * l1) return v;
  if (depth >= kMaxPanelDepth) {
    throw numerical_failure("oscillatory quadrature: panel did not converge on [" +
                            std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  const double mid = 0.5 * (a + b);
  return adaptive_panel(f, a, mid, 0.5 * tol, floor, depth + 1) +
         adaptive_panel(f, mid, b, 0.5 * tol, floor, depth + 1);
}

}  // namespace detail

/// int_0^support_end exp(i tau phase(t)) amplitude(t) dt for the curved kinds.
/// [0, support_end] is cut into panels sized from the local phase derivative;
/// each panel is refined until its error estimate is below
/// panel_tolerance * tolerance_scale * int |amplitude|, shared by length, or
/// reaches the rounding noise of the phase tau * phase(t).
inline std::complex<double> curved_integral(const OscIntegralSpec& spec, double tau,
                                            double tolerance_scale = 1.0) {
  detail::require(spec.kind == OscKind::c_A || spec.kind == OscKind::c_B,
                  "curved_integral: kind must be c_A or c_B");
  const detail::CurvedIntegrand in{spec.kind, spec.nu, spec.f, spec.g};
  using namespace std::complex_literals;
  auto integrand = [&](double t) -> std::complex<double> {
    return std::exp(1i * (tau * in.phase(t))) * in.amplitude(t);
  };
  const double end = spec.support_end;
  const double mass = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double t) { return std::abs(in.amplitude(t)); }, 0.0, end, 15, 1e-8);
  const double budget = spec.panel_tolerance * tolerance_scale * std::max(mass, 1e-300);
  constexpr double dt = 1e-7;
  std::complex<double> total = 0.0;
  double a = 0.0;
  while (a < end) {
    const double left = std::max(0.0, a - dt);
    const double slope = std::abs(in.phase(a + dt) - in.phase(left)) / (a + dt - left);
    double len = kMaxPanelLength;
    if (slope > 0.0) {
      len = std::min(len, kOscillationsPerPanel * 2.0 * std::numbers::pi / (tau * slope));
    }
    const double b = std::min(end, a + len);
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                         (1.0 + tau * std::max(std::abs(in.phase(a)), std::abs(in.phase(b))));
    total += detail::adaptive_panel(integrand, a, b, budget * (b - a) / end, noise, 0);
    a = b;
  }
  return total;
}

struct OscDecayResult {
  FitResult fit;
  std::vector<double> tau;
  std::vector<std::complex<double>> values;
};

/// Evaluates the selected integral on spec.tau_grid and fits log|I| against
/// log tau.
inline OscDecayResult oscillatory_decay(const OscIntegralSpec& spec) {
  spec.validate();
  OscDecayResult out;
  out.tau = spec.tau_grid;
  std::vector<PowerLawPoint> points;
  for (double tau : spec.tau_grid) {
    std::complex<double> v;
    switch (spec.kind) {
      case OscKind::c_A:
      case OscKind::c_B: v = curved_integral(spec, tau); break;
      case OscKind::v_linear: v = linear_part_v(tau * spec.xi, tau * spec.eta, spec.eps); break;
      case OscKind::h_linear: v = linear_part_h(tau * spec.xi, tau * spec.eta, spec.mu); break;
    }
    out.values.push_back(v);
    if (std::abs(v) > 0.0) points.push_back({tau, std::abs(v)});
  }
  if (points.size() < 2) throw numerical_failure("oscillatory_decay: integral vanishes on the grid");
  out.fit = fit_power_law(points, static_cast<int>(points.size()), 1);
  return out;
}

}  // namespace diskweyl
