// Acceptance run: one PASS/FAIL line per criterion, then a summary.
// Exit status is the number of failed criteria (0 when all pass).
//
//   ./acceptance            all criteria
//   ./acceptance 3 9        selected criteria only

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "diskweyl/asymptotics.hpp"
#include "diskweyl/bessel_zeros.hpp"
#include "diskweyl/geometry.hpp"
#include "diskweyl/lattice_count.hpp"
#include "diskweyl/special_fn.hpp"
#include "diskweyl/spectral_count.hpp"

using namespace diskweyl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Shared between criteria 5 and 6.
const std::vector<CountSample>& big_scan(double* elapsed = nullptr) {
  static double secs = 0.0;
  static const std::vector<CountSample> samples = [] {
    const auto t0 = Clock::now();
    auto s = scan_remainder(50.0, 1500.0, (1500.0 - 50.0) / 199.0);
    secs = seconds_since(t0);
    return s;
  }();
  if (elapsed) *elapsed = secs;
  return samples;
}

std::vector<PowerLawPoint> as_points(const std::vector<CountSample>& s, bool diff) {
  std::vector<PowerLawPoint> out;
  for (const auto& c : s) out.push_back({c.mu, diff ? static_cast<double>(c.diff) : c.remainder});
  return out;
}

Outcome zero_certification() {
  const auto t0 = Clock::now();
  const DiskSpectrum spectrum(500.0);
  const double secs = seconds_since(t0);
  long total = 0, bad = 0;
  double worst_res = 0.0, worst_bracket = 0.0;
  for (const auto& zs : spectrum.by_order()) {
    for (const BesselZero& z : zs) {
      ++total;
      worst_res = std::max(worst_res, z.residual);
      worst_bracket = std::max(worst_bracket, z.bracket_width / z.x);
      if (!(z.residual <= 1e-10 && z.bracket_width <= 1e-12 * z.x)) ++bad;
    }
  }
  return {bad == 0 && secs < 120.0,
          fmt("%ld zeros (%ld eigenvalues), max |J| %.2e, max bracket/x %.2e, %ld uncertified, "
              "%.1f s",
              total, spectrum.count(500.0), worst_res, worst_bracket, bad, secs)};
}

Outcome oracle_agreement() {
  const DiskSpectrum spectrum(500.0);
  std::vector<const BesselZero*> all;
  for (const auto& zs : spectrum.by_order())
    for (const BesselZero& z : zs) all.push_back(&z);
  std::mt19937_64 rng(500);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const BesselZero& z = *all[pick(rng)];
    worst = std::max(worst, std::abs(bessel_quadrature_reference(z.n, z.x)));
  }
  return {worst <= 1e-8, fmt("max trapezoid |J_n(x)| over 1000 zeros %.2e", worst)};
}

Outcome exact_small_counts() {
  const long d3 = count_disk(3.0), d4 = count_disk(4.0), d52 = count_disk(5.2);
  const long l3 = count_lattice(3.0), l4 = count_lattice(4.0);
  const long b3 = brute_force_count(3.0), b4 = brute_force_count(4.0);
  std::mt19937_64 rng(300);
  std::uniform_real_distribution<double> u(1.0, 300.0);
  int mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const double mu = u(rng);
    if (count_lattice(mu) != brute_force_count(mu)) ++mismatches;
  }
  const bool ok = d3 == 1 && d4 == 3 && d52 == 5 && l3 == 1 && l4 == 3 && b3 == 1 && b4 == 3 &&
                  mismatches == 0;
  return {ok, fmt("N_disk(3,4,5.2) = %ld,%ld,%ld; N_D(3,4) = %ld,%ld (brute %ld,%ld); "
                  "%d/50 random mismatches",
                  d3, d4, d52, l3, l4, b3, b4, mismatches)};
}

Outcome area() {
  const double a = area_D();
  return {std::abs(a - 0.25) <= 1e-8, fmt("area_D = %.15f", a)};
}

Outcome two_term_remainder() {
  double secs = 0.0;
  const auto& s = big_scan(&secs);
  double worst = 0.0;
  bool finite = true;
  for (const auto& c : s) {
    finite = finite && std::isfinite(c.remainder);
    worst = std::max(worst, std::abs(c.remainder) / std::pow(c.mu, 2.0 / 3.0));
  }
  const auto pts = as_points(s, false);
  const FitResult fit = fit_envelope(std::span<const PowerLawPoint>(pts), kDefaultBlockSize);
  return {finite && worst <= 10.0 && fit.exponent <= 0.75 && secs < 900.0,
          fmt("%zu samples, N_disk(%.1f) = %ld, max |R|/mu^(2/3) = %.4f, envelope exponent "
              "%.4f (r2 %.3f), %.1f s",
              s.size(), s.back().mu, s.back().n_disk, worst, fit.exponent, fit.r_squared, secs)};
}

Outcome lattice_comparison() {
  const auto& s = big_scan();
  double worst = 0.0;
  for (const auto& c : s) worst = std::max(worst, std::abs(c.diff) / std::pow(c.mu, 2.0 / 3.0));
  const auto pts = as_points(s, true);
  const FitResult fit = fit_envelope(std::span<const PowerLawPoint>(pts), kDefaultBlockSize);
  return {std::isfinite(worst) && fit.exponent <= 0.75,
          fmt("max |N_disk - N_D|/mu^(2/3) = %.4f, envelope exponent %.4f (r2 %.3f)", worst,
              fit.exponent, fit.r_squared)};
}

Outcome olver_residual() {
  bool ok = true;
  std::string detail;
  for (int k = 1; k <= 5; ++k) {
    double r[3];
    const int ns[3] = {10, 100, 1000};
    for (int i = 0; i < 3; ++i) r[i] = std::abs(bessel_zero(ns[i], k).x - olver_guess(ns[i], k));
    const double q1 = r[1] / r[0], q2 = r[2] / r[1];
    ok = ok && q1 >= 0.03 && q1 <= 0.3 && q2 >= 0.03 && q2 <= 0.3;
    detail += fmt("k=%d ratios %.4f %.4f; ", k, q1, q2);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome airy_zeros() {
  double previous = INFINITY, worst = 0.0;
  bool monotone = true;
  for (int k = 1; k <= 100; ++k) {
    const double scaled = k * std::abs(airy_zero(k).correction);
    monotone = monotone && scaled <= previous * (1.0 + 1e-9);
    worst = std::max(worst, scaled);
    previous = scaled;
  }
  const double t1 = airy_zero(1).t;
  return {monotone && std::abs(t1 - 2.3381074) <= 1e-6,
          fmt("t_1 = %.13f, max k|t_k - seed| = %.5f, non-increasing: %s", t1, worst,
              monotone ? "yes" : "no")};
}

Outcome sandwich() {
  bool ok = true;
  std::string detail;
  for (double mu : {10.0, 20.0}) {
    const SandwichResult r = sandwich_check(mu);
    ok = ok && r.ordered();
    detail += fmt("mu=%g eps=%.4f: %.4f <= %.4f <= %.4f; ", mu, r.epsilon, r.n_minus, r.n_exact,
                  r.n_plus);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome beta_series_sign() {
  const double v4 = beta_series(0.25, 100000), v3 = beta_series(1.0 / 3.0, 100000);
  const double e4 = std::abs(v4 - beta_series_limit(0.25));
  const double e3 = std::abs(v3 - beta_series_limit(1.0 / 3.0));
  // Reported next to the opposite-sign form 2 pi (beta - 1/2).
  const double opposite4 = 2.0 * std::numbers::pi * (0.25 - 0.5);
  return {e4 <= 1e-3 && e3 <= 1e-3,
          fmt("beta=1/4: %.6f (|err| %.1e), beta=1/3: %.6f (|err| %.1e); sign discrepancy vs "
              "2pi(beta-1/2) = %.6f logged",
              v4, e4, v3, e3, opposite4)};
}

Outcome oscillatory_decay_rates() {
  bool ok = true;
  std::string detail;
  const std::vector<double> taus = log_grid(1e2, 1e6, 3);
  for (OscKind kind : {OscKind::c_B, OscKind::c_A}) {
    for (double nu : {-0.1, 0.0, 0.1}) {
      const auto r = oscillatory_decay(OscIntegralSpec::curved(kind, nu, taus));
      const bool in = r.fit.exponent >= -0.6 && r.fit.exponent <= -0.4;
      ok = ok && in;
      detail += fmt("%s nu=%+.1f %.4f%s; ", to_string(kind), nu, r.fit.exponent, in ? "" : "*");
    }
  }
  const std::complex<double> ih = linear_part_h(0.0, 5.0, 10.0);
  const bool exact = ih == std::complex<double>(0.0, 10.0 / 5.0);
  ok = ok && exact;
  detail += fmt("I_h(0,5) = %.17g%+.17gi", ih.real(), ih.imag());
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"zero_certification", zero_certification},
      {"oracle_agreement", oracle_agreement},
      {"exact_small_counts", exact_small_counts},
      {"area", area},
      {"two_term_remainder", two_term_remainder},
      {"lattice_comparison", lattice_comparison},
      {"olver_residual", olver_residual},
      {"airy_zeros", airy_zeros},
      {"sandwich", sandwich},
      {"beta_series_sign", beta_series_sign},
      {"oscillatory_decay_rates", oscillatory_decay_rates},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0, run = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    ++run;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", run - failed, run);
  return failed;
}
