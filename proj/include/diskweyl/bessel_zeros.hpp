#pragma once

// Positive zeros x_k(n) of J_n, enumerated with certified brackets.
//
// Enumeration never trusts an asymptotic guess for the *index* of a zero.
// Consecutive zeros of J_n are more than kZeroWalkStep apart for every
// n >= 0 (Sturm comparison on u'' + (1 - (n^2 - 1/4)/x^2) u = 0), so walking
// from the known-positive region (0, n] in steps of kZeroWalkStep visits every
// sign change exactly once. The McMahon / Olver guesses only seed Newton.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "diskweyl/errors.hpp"
#include "diskweyl/special_fn.hpp"

namespace diskweyl {

struct BesselZero {
  int n;
  int k;
  double x;
  double residual;       ///< |J_n(x)|
  double bracket_width;  ///< width of the final sign-change bracket
};

/// Guess selection: McMahon when k > kRegimeRatio * n, Olver otherwise.
inline constexpr double kRegimeRatio = 1.0;
/// Upper end of the psi domain (s = t_k / n^{2/3}).
inline constexpr double kPsiMaxArg = 50.0;
/// Walk step; strictly below the minimal zero spacing of J_n (> 3.07).
inline constexpr double kZeroWalkStep = 3.0;
/// Bracket step used by refine_zero when searching around a bare guess.
inline constexpr double kGuessBracketStep = std::numbers::pi / 2.0;
inline constexpr double kMaxZeroResidual = 1e-10;
inline constexpr double kMaxRelativeBracket = 1e-12;

/// Olver's phase Phi(z) = sqrt(z^2 - 1) - arccos(1/z), z >= 1, written in
/// terms of w = sqrt(z^2 - 1) as w - atan(w) to avoid cancellation near z = 1.
inline double olver_phase_of_w(double w) {
  if (w < 0.5) {
    // w - atan(w) = sum_{j>=1} (-1)^{j+1} w^{2j+1} / (2j+1)
    const double w2 = w * w;
    double term = w * w2;
    double sum = 0.0;
    for (int j = 1; j < 80; ++j) {
      const double c = term / (2 * j + 1);
      sum += (j % 2 == 1) ? c : -c;
      if (c < 1e-18 * sum) break;
      term *= w2;
    }
    return sum;
  }
  return w - std::atan(w);
}

inline double olver_phase(double z) {
  detail::require(z >= 1.0, "olver_phase: z must be >= 1");
  return olver_phase_of_w(std::sqrt((z - 1.0) * (z + 1.0)));
}

/// psi(s) = z - 1 where z >= 1 solves Phi(z) = (2/3) s^{3/2}.
inline double psi(double s) {
  detail::require(s >= 0.0 && s <= kPsiMaxArg,
                  "psi: argument " + std::to_string(s) + " outside [0, kPsiMaxArg]");
  if (s == 0.0) return 0.0;
  const double target = 2.0 / 3.0 * s * std::sqrt(s);
  double lo = 0.0, hi = 1.0;
  while (olver_phase_of_w(hi) < target) hi *= 2.0;
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (olver_phase_of_w(mid) < target) lo = mid;
    else hi = mid;
  }
  const double w = 0.5 * (lo + hi);
  return w * w / (1.0 + std::sqrt(1.0 + w * w));
}

inline double mcmahon_guess(int n, int k) {
  const double b = (k + 0.5 * n - 0.25) * std::numbers::pi;
  return b - (4.0 * n * n - 1.0) / (8.0 * b);
}

inline double olver_guess(int n, int k) {
  detail::require(n >= 1, "olver_guess: order must be positive");
  const double t = airy_zero(k).t;
  return n * (1.0 + psi(t / std::cbrt(static_cast<double>(n) * n)));
}

inline double initial_guess(int n, int k) {
  detail::require(n >= 0 && k >= 1, "initial_guess: need n >= 0 and k >= 1");
  if (n == 0 || k > kRegimeRatio * n) return mcmahon_guess(n, k);
  return olver_guess(n, k);
}

namespace detail {

inline bool positive(double v) { return v > 0.0; }

// Safeguarded Newton inside a bracket [lo, hi] holding exactly one zero, with
// J_n of sign `lo_positive` just right of lo, followed by an explicit tight
// bracket around the converged root. lo may itself be the previous zero, so
// its sign is passed in rather than evaluated.
inline BesselZero refine_in_bracket(int n, double lo, double hi, bool lo_positive, double start) {
  double x = (start > lo && start < hi) ? start : 0.5 * (lo + hi);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 100; ++iter) {
    const ValueAndDerivative f = bessel_j(n, x, true);
    if (f.value == 0.0) {
      lo = hi = x;
      break;
    }
    if (positive(f.value) == lo_positive) lo = x;
    else hi = x;
    double next = x - f.value / f.derivative;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 2.0 * eps * x || hi - lo <= 2.0 * eps * x) break;
  }

  const double delta = 0.4 * kMaxRelativeBracket * x;
  double a = x - delta, b = x + delta;
  double width = b - a;
  const double fa = bessel_j(n, a, false).value;
  const double fb = bessel_j(n, b, false).value;
  if (!(fa == 0.0 || fb == 0.0 || positive(fa) != positive(fb))) {
    // Newton did not land within delta of the root; bisect what is left.
    for (int iter = 0; iter < 300 && hi - lo > kMaxRelativeBracket * x; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = bessel_j(n, mid, false).value;
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (positive(fm) == lo_positive) lo = mid;
      else hi = mid;
    }
    if (hi - lo > kMaxRelativeBracket * 0.5 * (lo + hi)) {
      throw numerical_failure("refine_zero: bisection budget exhausted for n=" +
                              std::to_string(n));
    }
    x = 0.5 * (lo + hi);
    width = hi - lo;
  }
  const double residual = std::abs(bessel_j(n, x, false).value);
  if (!(residual <= kMaxZeroResidual)) {
    throw numerical_failure("refine_zero: residual " + std::to_string(residual) +
                            " above tolerance for n=" + std::to_string(n));
  }
  return {n, 0, x, residual, width};
}

// Walks the positive axis of J_n from the origin, yielding zeros in order.
class ZeroWalker {
 public:
  explicit ZeroWalker(int n) : n_(n), left_(n == 0 ? 0.0 : static_cast<double>(n)) {
    left_positive_ = true;  // J_n > 0 on (0, x_1(n)) and x_1(n) > n
  }

  /// Next zero, or false if none lies in (previous zero, limit].
  bool next(double limit, BesselZero& out) {
    while (left_ < limit) {
      const double right = std::min(left_ + kZeroWalkStep, limit);
      const double f_right = bessel_j(n_, right, false).value;
      if (f_right == 0.0 || positive(f_right) != left_positive_) {
        ++k_;
        const double guess = initial_guess(n_, k_);
        out = refine_in_bracket(n_, left_, right, left_positive_, guess);
        out.k = k_;
        left_ = out.x;
        left_positive_ = !left_positive_;
        // The walk restarts at the zero itself; the first step stays below
        // the next zero, so its sign is the new left_positive_.
        return true;
      }
      left_ = right;
    }
    return false;
  }

  int count() const { return k_; }

 private:
  int n_;
  int k_ = 0;
  double left_;
  bool left_positive_;
};

}  // namespace detail

/// Refines the zero of J_n nearest to `guess`: the bracket is grown outward
/// in kGuessBracketStep increments (below the minimal zero spacing, so each
/// sign change isolates exactly one zero). The index k of the result is 0,
/// since a bare guess does not certify it.
inline BesselZero refine_zero(int n, double guess) {
  detail::require(n >= 0, "refine_zero: order must be nonnegative");
  detail::require(std::isfinite(guess) && guess > n && guess > 0.0,
                  "refine_zero: guess must exceed the order");
  const double floor_x = (n == 0) ? 0.0 : static_cast<double>(n);
  const double f0 = bessel_j(n, guess, false).value;
  if (f0 == 0.0) return {n, 0, guess, 0.0, 0.0};
  double right_prev = guess, left_prev = guess;
  double f_right_prev = f0, f_left_prev = f0;
  for (int j = 1; j <= 256; ++j) {
    const double right = guess + j * kGuessBracketStep;
    const double f_right = bessel_j(n, right, false).value;
    const bool right_change = detail::positive(f_right) != detail::positive(f_right_prev);
    bool left_change = false;
    double left = left_prev, f_left = f_left_prev;
    if (left_prev > floor_x) {
      left = std::max(floor_x, guess - j * kGuessBracketStep);
      f_left = bessel_j(n, left, false).value;
      left_change = detail::positive(f_left) != detail::positive(f_left_prev);
    }
    if (right_change && left_change) {
      // Pick the side whose secant root estimate is closer to the guess.
      const double r_est = right_prev - f_right_prev * (right - right_prev) / (f_right - f_right_prev);
      const double l_est = left - f_left * (left_prev - left) / (f_left_prev - f_left);
      if (std::abs(r_est - guess) <= std::abs(guess - l_est)) {
        return detail::refine_in_bracket(n, right_prev, right, detail::positive(f_right_prev), guess);
      }
      return detail::refine_in_bracket(n, left, left_prev, detail::positive(f_left), guess);
    }
    if (right_change) {
      return detail::refine_in_bracket(n, right_prev, right, detail::positive(f_right_prev), guess);
    }
    if (left_change) {
      return detail::refine_in_bracket(n, left, left_prev, detail::positive(f_left), guess);
    }
    right_prev = right;
    f_right_prev = f_right;
    left_prev = left;
    f_left_prev = f_left;
  }
  throw numerical_failure("refine_zero: no sign change found near guess " + std::to_string(guess) +
                          " for n=" + std::to_string(n));
}

/// Relative slack applied to the cutoff so that a zero computed to within a
/// few ulps of mu is counted as lying at or below mu.
inline constexpr double kCutoffSlack = 4.0 * std::numeric_limits<double>::epsilon();

/// All zeros of J_n in (n, mu], in increasing order, indices 1, 2, ...
inline std::vector<BesselZero> zeros_up_to(int n, double mu) {
  detail::require(n >= 0, "zeros_up_to: order must be nonnegative");
  detail::require(std::isfinite(mu) && mu > 0.0, "zeros_up_to: mu must be positive");
  std::vector<BesselZero> zeros;
  const double limit = mu * (1.0 + kCutoffSlack);
  if (limit <= n) return zeros;
  detail::ZeroWalker walker(n);
  BesselZero z{};
  while (walker.next(limit, z)) zeros.push_back(z);
  return zeros;
}

/// The k-th positive zero of J_n with a certified index.
inline BesselZero bessel_zero(int n, int k) {
  detail::require(n >= 0 && k >= 1, "bessel_zero: need n >= 0 and k >= 1");
  detail::ZeroWalker walker(n);
  BesselZero z{};
  const double limit = std::numeric_limits<double>::max();
  while (walker.next(limit, z)) {
    if (z.k == k) return z;
  }
  throw numerical_failure("bessel_zero: walk terminated early");
}

}  // namespace diskweyl
