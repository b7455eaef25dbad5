#pragma once

// Bessel J_n of integer order, the Airy function Ai and its negative-axis
// zeros. Everything downstream (zero enumeration, spectral counts) takes its
// accuracy from here, and the trapezoid evaluation of the integral
// representation J_n(x) = (1/2pi) int_{-pi}^{pi} exp(i(x sin t - n t)) dt is
// the arbiter that the fast path is tested against.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "diskweyl/errors.hpp"

namespace diskweyl {

struct EvalAccuracy {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_nodes = 1 << 20;  ///< quadrature node cap

  void validate() const {
    detail::require(abs_tol > 0.0, "EvalAccuracy: abs_tol must be positive");
    detail::require(rel_tol > 0.0, "EvalAccuracy: rel_tol must be positive");
    detail::require(max_nodes >= 16, "EvalAccuracy: max_nodes must be >= 16");
  }
};

/// A function value together with its first derivative. The derivative is
/// NaN when it was not requested.
struct ValueAndDerivative {
  double value;
  double derivative;
};

/// J_{n-1}(x), J_n(x), J_{n+1}(x) from one backward recurrence.
struct BesselTriplet {
  double below;
  double value;
  double above;
};

namespace detail {

// Miller's backward recurrence J_{m-1} = (2m/x) J_m - J_{m+1}, started far
// enough above max(n, x) that the seed error is below double precision, and
// normalised with J_0 + 2 sum_k J_{2k} = 1. Valid for x > 0 and n >= 0.
inline BesselTriplet bessel_triplet_positive(int n, double x) {
  const double top = std::max(static_cast<double>(n) + 1.0, x) + 14.0 * std::cbrt(x) + 30.0;
  long start = static_cast<long>(top);
  if (start % 2 != 0) ++start;

  constexpr double kBig = 1e250;
  constexpr double kShrink = 1e-250;
  const double two_over_x = 2.0 / x;

  double j_above = 0.0;   // J_{m+1}
  double j_here = 1e-30;  // J_m, m = start
  double norm = 2.0 * j_here;  // start is even and positive
  double c_below = 0.0, c_value = 0.0, c_above = 0.0;
  auto capture = [&](long m, double v) {
    if (m == n - 1) c_below = v;
    else if (m == n) c_value = v;
    else if (m == n + 1) c_above = v;
  };
  capture(start, j_here);

  for (long m = start; m >= 1; --m) {
    const double j_below = static_cast<double>(m) * two_over_x * j_here - j_above;
    const long mb = m - 1;
    capture(mb, j_below);
    if (mb == 0) {
      norm += j_below;
    } else if (mb % 2 == 0) {
      norm += 2.0 * j_below;
    }
    j_above = j_here;
    j_here = j_below;
    if (std::abs(j_here) > kBig) {
      j_here *= kShrink;
      j_above *= kShrink;
      norm *= kShrink;
      c_below *= kShrink;
      c_value *= kShrink;
      c_above *= kShrink;
    }
  }
  BesselTriplet out{c_below / norm, c_value / norm, c_above / norm};
  if (n == 0) out.below = -out.above;  // J_{-1} = -J_1
  return out;
}

}  // namespace detail

/// J_{n-1}(x), J_n(x), J_{n+1}(x) for n >= 0 and any finite x.
inline BesselTriplet bessel_j_triplet(int n, double x) {
  detail::require(n >= 0, "bessel_j: order must be nonnegative");
  detail::require(std::isfinite(x), "bessel_j: argument must be finite");
  if (x == 0.0) {
    BesselTriplet t{0.0, n == 0 ? 1.0 : 0.0, 0.0};
    if (n == 1) t.below = 1.0;
    return t;
  }
  if (x < 0.0) {
    // J_m(-x) = (-1)^m J_m(x)
    BesselTriplet t = detail::bessel_triplet_positive(n, -x);
    const double s = (n % 2 == 0) ? 1.0 : -1.0;
    return {-s * t.below, s * t.value, -s * t.above};
  }
  return detail::bessel_triplet_positive(n, x);
}

/// J_n(x) and, if requested, J_n'(x) = (J_{n-1}(x) - J_{n+1}(x)) / 2.
inline ValueAndDerivative bessel_j(int n, double x, bool want_derivative = true) {
  const BesselTriplet t = bessel_j_triplet(n, x);
  return {t.value, want_derivative ? 0.5 * (t.below - t.above)
                                   : std::numeric_limits<double>::quiet_NaN()};
}

/// Equally spaced trapezoid rule with `nodes` points for the 2pi-periodic
/// integral representation of J_n. Only the real part survives.
inline double bessel_quadrature_oracle(int n, double x, int nodes) {
  detail::require(n >= 0, "bessel_quadrature_oracle: order must be nonnegative");
  detail::require(std::isfinite(x), "bessel_quadrature_oracle: argument must be finite");
  detail::require(nodes >= 16, "bessel_quadrature_oracle: at least 16 nodes required");
  const double h = 2.0 * std::numbers::pi / nodes;
  double sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double t = -std::numbers::pi + h * j;
    sum += std::cos(x * std::sin(t) - n * t);
  }
  return sum / nodes;
}

/// Reference value of J_n(x): trapezoid node count doubled from 64 until two
/// successive values agree within acc.abs_tol.
inline double bessel_quadrature_reference(int n, double x, const EvalAccuracy& acc = {}) {
  acc.validate();
  // The rule is only resolved once nodes exceed n + |x| (aliasing of J_{n +- nodes}).
  const double resolved = static_cast<double>(n) + std::abs(x);
  int nodes = 64;
  double previous = bessel_quadrature_oracle(n, x, nodes);
  while (nodes <= acc.max_nodes / 2) {
    nodes *= 2;
    const double current = bessel_quadrature_oracle(n, x, nodes);
    if (nodes > resolved && std::abs(current - previous) <= acc.abs_tol) return current;
    previous = current;
  }
  throw numerical_failure("bessel_quadrature_reference: no convergence for n=" +
                          std::to_string(n) + ", x=" + std::to_string(x) + " within " +
                          std::to_string(acc.max_nodes) + " nodes");
}

// ---------------------------------------------------------------------------
// Airy function

/// Supported argument range of airy_ai. The negative end is far beyond the
/// oscillatory asymptotic's accuracy threshold; it is set by the largest Airy
/// zero needed for Olver guesses at orders up to a few thousand.
inline constexpr double kAiryMinArg = -1000.0;
inline constexpr double kAiryMaxArg = 10.0;
/// |x| below which the Maclaurin pair is summed (in extended precision).
inline constexpr double kAirySeriesSwitch = 8.0;

inline constexpr double kAiryAt0 = 0.355028053887817239260063186004;
inline constexpr double kAiryPrimeAt0 = -0.258819403792806798405183560189;

namespace detail {

inline ValueAndDerivative airy_maclaurin(double xd) {
  using ld = long double;
  const ld x = xd;
  const ld x3 = x * x * x;
  // f, g: the two power series with f(0) = 1, g'(0) = 1.
  ld a = 1.0L, b = x;             // current terms of f and g
  ld p = x * x / 2.0L, q = 1.0L;  // current terms of f' (from x^2/2) and g'
  ld f = a, g = b, fp = p, gp = q;
  for (int k = 0; k < 200; ++k) {
    const ld k3 = 3.0L * k;
    a *= x3 / ((k3 + 2.0L) * (k3 + 3.0L));
    b *= x3 / ((k3 + 3.0L) * (k3 + 4.0L));
    p *= x3 / ((k3 + 3.0L) * (k3 + 5.0L));
    q *= x3 / ((k3 + 1.0L) * (k3 + 3.0L));
    f += a;
    g += b;
    fp += p;
    gp += q;
    const ld scale = std::abs(f) + std::abs(g) + std::abs(fp) + std::abs(gp);
    if (std::abs(a) + std::abs(b) + std::abs(p) + std::abs(q) <
        std::numeric_limits<long double>::epsilon() * scale) {
      break;
    }
  }
  // Full extended-precision constants: f and g reach ~1e6 near the switch.
  const ld c1 = 0.355028053887817239260063186004183L;
  const ld c2 = 0.258819403792806798405183560189203L;
  return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
}

// u_k and v_k coefficients of the large-argument expansions.
struct AiryAsymptoticCoefficients {
  static constexpr int kTerms = 40;
  double u[kTerms];
  double v[kTerms];
  constexpr AiryAsymptoticCoefficients() : u{}, v{} {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < kTerms; ++k) {
      const double kk = k;
      u[k] = u[k - 1] * (6.0 * kk - 5.0) * (6.0 * kk - 3.0) * (6.0 * kk - 1.0) /
             ((2.0 * kk - 1.0) * 216.0 * kk);
      v[k] = -u[k] * (6.0 * kk + 1.0) / (6.0 * kk - 1.0);
    }
  }
};

inline constexpr AiryAsymptoticCoefficients kAiryCoeffs{};

inline ValueAndDerivative airy_decaying(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double su = 0.0, sv = 0.0, term_scale = 1.0, last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < AiryAsymptoticCoefficients::kTerms; ++k) {
    const double tu = kAiryCoeffs.u[k] * term_scale;
    const double tv = kAiryCoeffs.v[k] * term_scale;
    if (std::abs(tu) > last) break;  // asymptotic series started to diverge
    su += tu;
    sv += tv;
    last = std::abs(tu);
    if (last < 1e-17 * std::abs(su)) break;
    term_scale *= -1.0 / zeta;
  }
  const double e = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
  const double x4 = std::sqrt(std::sqrt(x));
  return {e / x4 * su, -e * x4 * sv};
}

inline ValueAndDerivative airy_oscillating(double x) {
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  double P = 0.0, Q = 0.0, R = 0.0, S = 0.0;
  double power = 1.0;  // zeta^{-k}
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < AiryAsymptoticCoefficients::kTerms; ++k) {
    const double tu = kAiryCoeffs.u[k] * power;
    const double tv = kAiryCoeffs.v[k] * power;
    if (std::abs(tu) > last) break;
    last = std::abs(tu);
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      P += sign * tu;
      R += sign * tv;
    } else {
      Q += sign * tu;
      S += sign * tv;
    }
    if (last < 1e-17) break;
    power /= zeta;
  }
  const double phase = zeta - std::numbers::pi / 4.0;
  const double c = std::cos(phase), s = std::sin(phase);
  const double z4 = std::sqrt(std::sqrt(z));
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  return {inv_sqrt_pi / z4 * (c * P + s * Q), inv_sqrt_pi * z4 * (s * R - c * S)};
}

}  // namespace detail

/// Ai(x) and, if requested, Ai'(x) for x in [kAiryMinArg, kAiryMaxArg];
/// absolute error below 1e-10 on that range.
inline ValueAndDerivative airy_ai(double x, bool want_derivative = true) {
  detail::require(std::isfinite(x) && x >= kAiryMinArg && x <= kAiryMaxArg,
                  "airy_ai: argument " + std::to_string(x) + " outside supported range");
  ValueAndDerivative r;
  if (std::abs(x) <= kAirySeriesSwitch) {
    r = detail::airy_maclaurin(x);
  } else if (x > 0.0) {
    r = detail::airy_decaying(x);
  } else {
    r = detail::airy_oscillating(x);
  }
  if (!want_derivative) r.derivative = std::numeric_limits<double>::quiet_NaN();
  return r;
}

/// k-th positive zero t_k of s -> Ai(-s).
struct AiryZero {
  int k;
  double t;
  double initial;     ///< (3pi/2 (k - 1/4))^{2/3}
  double correction;  ///< t - initial
};

/// Observed bound on k * |t_k - initial| (attained at k = 1, decays like k^{-1/3}).
inline constexpr double kAiryCorrectionBound = 0.02;

inline double airy_zero_seed(double k) {
  return std::pow(1.5 * std::numbers::pi * (k - 0.25), 2.0 / 3.0);
}

inline AiryZero airy_zero(int k) {
  detail::require(k >= 1, "airy_zero: index must be positive");
  const double initial = airy_zero_seed(k);
  double lo = airy_zero_seed(k - 0.5);
  double hi = airy_zero_seed(k + 0.5);
  detail::require(hi <= -kAiryMinArg, "airy_zero: index " + std::to_string(k) +
                                          " beyond the supported Airy range");
  auto f = [](double s) {
    const ValueAndDerivative a = airy_ai(-s);
    return ValueAndDerivative{a.value, -a.derivative};
  };
  double f_lo = f(lo).value;
  const double f_hi = f(hi).value;
  if (f_lo * f_hi > 0.0) {
    throw numerical_failure("airy_zero: seed bracket has no sign change for k=" +
                            std::to_string(k));
  }
  double t = initial;
  for (int iter = 0; iter < 200; ++iter) {
    const ValueAndDerivative ft = f(t);
    if (ft.value == 0.0) return {k, t, initial, t - initial};
    if ((ft.value > 0.0) == (f_lo > 0.0)) {
      lo = t;
      f_lo = ft.value;
    } else {
      hi = t;
    }
    double next = t - ft.value / ft.derivative;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // Newton left the bracket
    const double step = std::abs(next - t);
    t = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * t || hi - lo <= 1e-15 * t) {
      if (std::abs(f(t).value) <= 1e-12) return {k, t, initial, t - initial};
    }
  }
  throw numerical_failure("airy_zero: no convergence for k=" + std::to_string(k));
}

}  // namespace diskweyl
