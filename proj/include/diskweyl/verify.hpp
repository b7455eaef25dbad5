#pragma once

// Invariant suites run by `diskweyl verify`. Each suite returns one Check per
// property; randomized checks draw from a seeded std::mt19937_64 so a run is
// reproducible from its seed.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "diskweyl/asymptotics.hpp"
#include "diskweyl/bessel_zeros.hpp"
#include "diskweyl/geometry.hpp"
#include "diskweyl/lattice_count.hpp"
#include "diskweyl/special_fn.hpp"
#include "diskweyl/spectral_count.hpp"

namespace diskweyl::verify {

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

enum class Suite { special, geometry, lattice, sandwich, appendix };

inline const char* to_string(Suite s) {
  switch (s) {
    case Suite::special: return "special";
    case Suite::geometry: return "geometry";
    case Suite::lattice: return "lattice";
    case Suite::sandwich: return "sandwich";
    case Suite::appendix: return "appendix";
  }
  return "?";
}

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  unsigned threads = 0;
  std::vector<double> mu;  ///< suite-specific mu values; empty selects defaults
  MollifyConfig mollify{};
};

namespace detail {

inline std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

inline Check near(std::string name, double got, double want, double tol) {
  const double diff = std::abs(got - want);
  return {std::move(name), diff <= tol, fmt("got %.17g want %.17g |diff| %.3g", got, want, diff)};
}

}  // namespace detail

inline std::vector<Check> special_suite(const SuiteOptions& opt) {
  std::vector<Check> out;
  const ValueAndDerivative a0 = airy_ai(0.0);
  out.push_back(detail::near("airy_at_zero", a0.value, 0.3550280538878172, 1e-14));
  out.push_back(detail::near("airy_prime_at_zero", a0.derivative, -0.2588194037928068, 1e-14));
  out.push_back(detail::near("airy_first_zero", airy_zero(1).t, 2.338107410459767, 1e-12));
  out.push_back(detail::near("j0_first_zero", bessel_zero(0, 1).x, 2.404825557695773, 1e-13));
  out.push_back(detail::near("j1_first_zero", bessel_zero(1, 1).x, 3.831705970207512, 1e-13));
  out.push_back(detail::near("j0_second_zero", bessel_zero(0, 2).x, 5.520078110286311, 1e-13));
  out.push_back(detail::near("j5_first_zero", bessel_zero(5, 1).x, 8.771483815959954, 1e-13));

  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> order(0, 60);
  std::uniform_real_distribution<double> arg(0.0, 120.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int n = order(rng);
    const double x = arg(rng);
    worst = std::max(worst, std::abs(bessel_j(n, x, false).value - bessel_quadrature_reference(n, x)));
  }
  out.push_back({"bessel_vs_quadrature", worst <= 1e-12, detail::fmt("max |diff| %.3g over 200 samples", worst)});

  double worst_recurrence = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + order(rng);
    const double x = 0.5 + arg(rng);
    const BesselTriplet t = bessel_j_triplet(n, x);
    worst_recurrence = std::max(worst_recurrence, std::abs(t.below + t.above - 2.0 * n / x * t.value));
  }
  out.push_back({"bessel_three_term_recurrence", worst_recurrence <= 1e-13,
                 detail::fmt("max defect %.3g", worst_recurrence)});
  return out;
}

inline std::vector<Check> geometry_suite(const SuiteOptions& opt) {
  std::vector<Check> out;
  out.push_back(detail::near("area_D", area_D(), 0.25, 1e-8));
  out.push_back(detail::near("g_at_minus_one", g_profile(-1.0), 1.0, 1e-15));
  out.push_back(detail::near("g_at_zero", g_profile(0.0), 1.0 / std::numbers::pi, 1e-15));
  out.push_back(detail::near("g_at_one", g_profile(1.0), 0.0, 0.0));
  out.push_back(detail::near("scale_function_on_axis", scale_function(0.0, 0.75),
                             0.75 * std::numbers::pi, 1e-13));

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(0.0, 1.0), ul(0.1, 10.0);
  int involution_failures = 0, gauge_failures = 0, homogeneity_failures = 0;
  for (int i = 0; i < 2000; ++i) {
    const double mu = 10.0;
    const Point p{mu * ux(rng), mu * uy(rng) / std::numbers::pi};
    const bool in = in_domain(mu, p);
    const Point q = involution(p);
    // Strictly interior or exterior points only; boundary points can flip by rounding.
    const double margin = 1e-9 * mu;
    const bool clear = !in_domain(mu, {p.x, p.y + margin}) == !in_domain(mu, {p.x, p.y - margin});
    if (clear && in != in_domain(mu, q)) ++involution_failures;

    const double x = ux(rng);
    const Point b{x, g_profile(x)};
    if (b.y > 1e-6 && std::abs(scale_function(b) - 1.0) > 1e-12) ++gauge_failures;
    if (p.y >= std::max(0.0, -p.x) && p.y > 0.0) {
      const double lam = ul(rng);
      const double f1 = scale_function(p);
      const double f2 = scale_function(lam * p.x, lam * p.y);
      if (std::abs(f2 - lam * f1) > 1e-12 * lam * f1) ++homogeneity_failures;
    }
  }
  out.push_back({"involution_preserves_domain", involution_failures == 0,
                 std::to_string(involution_failures) + " failures in 2000 samples"});
  out.push_back({"gauge_is_one_on_graph", gauge_failures == 0,
                 std::to_string(gauge_failures) + " failures in 2000 samples"});
  out.push_back({"gauge_homogeneous", homogeneity_failures == 0,
                 std::to_string(homogeneity_failures) + " failures"});
  return out;
}

inline std::vector<Check> lattice_suite(const SuiteOptions& opt) {
  std::vector<Check> out;
  auto exact = [&](std::string name, long got, long want) {
    out.push_back({std::move(name), got == want,
                   "got " + std::to_string(got) + " want " + std::to_string(want)});
  };
  exact("count_lattice_3", count_lattice(3.0), 1);
  exact("count_lattice_4", count_lattice(4.0), 3);
  exact("count_disk_3", count_disk(3.0, opt.threads), 1);
  exact("count_disk_4", count_disk(4.0, opt.threads), 3);
  exact("count_disk_5.2", count_disk(5.2, opt.threads), 5);

  std::vector<double> mus = opt.mu;
  if (mus.empty()) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(1.0, 300.0);
    for (int i = 0; i < 20; ++i) mus.push_back(u(rng));
  }
  int mismatches = 0, involution_failures = 0;
  for (double mu : mus) {
    if (count_lattice(mu) != brute_force_count(mu)) ++mismatches;
    const CuspDomain d = CuspDomain::disk_domain(mu);
    const long span = static_cast<long>(std::floor(mu));
    for (long n = -span; n <= span; ++n) {
      for (long k = 1; k <= span + 1; ++k) {
        const LatticePoint m{n, k};
        if (d.contains(m.point()) && !d.contains(involution(m).point())) ++involution_failures;
      }
    }
  }
  out.push_back({"count_lattice_matches_brute_force", mismatches == 0,
                 std::to_string(mismatches) + " mismatches over " + std::to_string(mus.size()) + " mu"});
  out.push_back({"involution_maps_lattice_points_of_muD", involution_failures == 0,
                 std::to_string(involution_failures) + " failures"});
  return out;
}

inline std::vector<Check> sandwich_suite(const SuiteOptions& opt) {
  std::vector<Check> out;
  const std::vector<double> mus = opt.mu.empty() ? std::vector<double>{10.0, 20.0} : opt.mu;
  for (double mu : mus) {
    const SandwichResult r = sandwich_check(mu, opt.mollify);
    out.push_back({detail::fmt("sandwich_mu_%g", mu), r.ordered(),
                   detail::fmt("n_minus %.6f n_exact %.6f n_plus %.6f", r.n_minus, r.n_exact,
                               r.n_plus)});
  }
  return out;
}

inline std::vector<Check> oscillatory_suite(const SuiteOptions&) {
  std::vector<Check> out;
  out.push_back(detail::near("beta_series_half", beta_series(0.5, 100000), 0.0, 1e-12));
  out.push_back(detail::near("beta_series_quarter", beta_series(0.25, 100000),
                             beta_series_limit(0.25), 1e-3));
  out.push_back(detail::near("beta_series_third", beta_series(1.0 / 3.0, 100000),
                             beta_series_limit(1.0 / 3.0), 1e-3));
  out.push_back(detail::near("beta_series_antisymmetry",
                             beta_series(0.3, 100000) + beta_series(0.7, 100000), 0.0, 1e-6));
  const std::complex<double> ih = linear_part_h(0.0, 5.0, 10.0);
  out.push_back({"h_linear_at_zero_xi", ih == std::complex<double>(0.0, 2.0),
                 detail::fmt("got %.17g%+.17gi", ih.real(), ih.imag())});

  const std::vector<double> taus = log_grid(1e2, 1e6, 2);
  for (OscKind kind : {OscKind::c_A, OscKind::c_B}) {
    for (double nu : {-0.1, -0.05, 0.0, 0.05, 0.1}) {
      const OscIntegralSpec spec = OscIntegralSpec::curved(kind, nu, taus);
      const OscDecayResult r = oscillatory_decay(spec);
      double scaled_max = 0.0, scaled_first = 0.0, drift = 0.0;
      for (std::size_t i = 0; i < r.tau.size(); ++i) {
        const double s = std::abs(r.values[i]) * std::sqrt(r.tau[i]);
        if (i == 0) scaled_first = s;
        scaled_max = std::max(scaled_max, s);
        const double halved = std::abs(curved_integral(spec, r.tau[i], 0.5));
        drift = std::max(drift, std::abs(halved - std::abs(r.values[i])) / std::abs(r.values[i]));
      }
      // O(tau^{-1/2}): the scaled modulus may not grow past its value at the
      // start of the grid by more than a constant factor.
      const std::string tag = std::string(to_string(kind)) + detail::fmt("_nu_%g", nu);
      out.push_back({tag + "_tau_half_bound", scaled_max <= 3.0 * scaled_first,
                     detail::fmt("max |I| tau^0.5 = %.4g (first %.4g), exponent %.4f", scaled_max,
                                 scaled_first, r.fit.exponent)});
      out.push_back({tag + "_tolerance_halving", drift <= 0.01,
                     detail::fmt("max relative change %.3g", drift)});
    }
  }
  return out;
}

inline std::vector<Check> run_suite(Suite suite, const SuiteOptions& opt) {
  switch (suite) {
    case Suite::special: return special_suite(opt);
    case Suite::geometry: return geometry_suite(opt);
    case Suite::lattice: return lattice_suite(opt);
    case Suite::sandwich: return sandwich_suite(opt);
    case Suite::appendix: return oscillatory_suite(opt);
  }
  return {};
}

}  // namespace diskweyl::verify
