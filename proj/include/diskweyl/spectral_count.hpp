#pragma once

// Dirichlet eigenvalue counting for the unit disk. The spectrum is
// {x_k(n)^2 : n in Z, k >= 1}; J_n and J_{-n} share zeros, so every order
// n >= 1 contributes its zeros twice and n = 0 once.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "diskweyl/bessel_zeros.hpp"
#include "diskweyl/detail/parallel.hpp"
#include "diskweyl/errors.hpp"
#include "diskweyl/geometry.hpp"
#include "diskweyl/lattice_count.hpp"

namespace diskweyl {

struct CountSample {
  double mu;
  long n_disk;
  long n_lattice;
  double weyl2;      ///< mu^2/4 - mu/2
  double remainder;  ///< n_disk - weyl2
  long diff;         ///< n_disk - n_lattice
};

struct WeylValue {
  double weyl2;
  double remainder;
};

inline int multiplicity(int n) { return n == 0 ? 1 : 2; }

/// N_disk(mu) = #{eigenvalues <= mu^2} with multiplicity. Zeros within
/// kCutoffSlack (relative) above mu are counted.
inline long count_disk(double mu, unsigned threads = 0) {
  detail::require(std::isfinite(mu) && mu > 0.0, "count_disk: mu must be positive");
  const int n_max = static_cast<int>(std::floor(mu));
  std::vector<long> per_order(static_cast<std::size_t>(n_max) + 1, 0);
  detail::parallel_for(per_order.size(), threads, [&](std::size_t i) {
    const int n = static_cast<int>(i);
    per_order[i] = static_cast<long>(zeros_up_to(n, mu).size()) * multiplicity(n);
  });
  long total = 0;
  for (long c : per_order) total += c;
  return total;
}

inline WeylValue weyl_remainder(double mu, long n_disk) {
  detail::require(std::isfinite(mu) && mu > 0.0, "weyl_remainder: mu must be positive");
  const double weyl2 = mu * mu / 4.0 - mu / 2.0;
  return {weyl2, static_cast<double>(n_disk) - weyl2};
}

/// N_disk(mu) - N_D(mu).
inline long compare_counts(double mu, unsigned threads = 0) {
  return count_disk(mu, threads) - count_lattice(mu);
}

/// Inner regime threshold: inner_residual requires k > kInnerRegime * n.
inline constexpr double kInnerRegime = 1.0;

/// x_k(n) - F(n, k - 1/4), the defect of the lattice approximation of a zero.
inline double inner_residual(int n, int k) {
  detail::require(n >= 0 && k >= 1, "inner_residual: need n >= 0 and k >= 1");
  detail::require(k > kInnerRegime * n, "inner_residual: (n, k) outside the inner regime");
  const double x = bessel_zero(n, k).x;
  return x - scale_function(static_cast<double>(n), static_cast<double>(k) - kLatticeShift);
}

/// All zeros of J_n, 0 <= n <= mu_max, up to mu_max, kept for repeated
/// counting at any mu <= mu_max.
class DiskSpectrum {
 public:
  DiskSpectrum(double mu_max, unsigned threads = 0) : mu_max_(mu_max) {
    detail::require(std::isfinite(mu_max) && mu_max > 0.0, "DiskSpectrum: mu_max must be positive");
    const int n_max = static_cast<int>(std::floor(mu_max));
    by_order_.resize(static_cast<std::size_t>(n_max) + 1);
    detail::parallel_for(by_order_.size(), threads, [&](std::size_t i) {
      by_order_[i] = zeros_up_to(static_cast<int>(i), mu_max);
    });
    std::size_t total = 0;
    for (const auto& zs : by_order_) total += zs.size();
    struct Entry {
      double x;
      int mult;
    };
    std::vector<Entry> entries;
    entries.reserve(total);
    for (const auto& zs : by_order_) {
      for (const BesselZero& z : zs) entries.push_back({z.x, multiplicity(z.n)});
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.x < b.x; });
    sorted_.reserve(entries.size());
    cumulative_.reserve(entries.size());
    long running = 0;
    for (const Entry& e : entries) {
      running += e.mult;
      sorted_.push_back(e.x);
      cumulative_.push_back(running);
    }
  }

  double mu_max() const { return mu_max_; }
  const std::vector<std::vector<BesselZero>>& by_order() const { return by_order_; }
  std::size_t distinct_zero_count() const { return sorted_.size(); }

  long count(double mu) const {
    detail::require(mu <= mu_max_, "DiskSpectrum::count: mu beyond the computed range");
    const double limit = mu * (1.0 + kCutoffSlack);
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), limit);
    if (it == sorted_.begin()) return 0;
    return cumulative_[static_cast<std::size_t>(it - sorted_.begin()) - 1];
  }

  CountSample sample(double mu) const {
    CountSample s{};
    s.mu = mu;
    s.n_disk = count(mu);
    s.n_lattice = count_lattice(mu);
    const WeylValue w = weyl_remainder(mu, s.n_disk);
    s.weyl2 = w.weyl2;
    s.remainder = w.remainder;
    s.diff = s.n_disk - s.n_lattice;
    return s;
  }

 private:
  double mu_max_;
  std::vector<std::vector<BesselZero>> by_order_;
  std::vector<double> sorted_;
  std::vector<long> cumulative_;
};

inline CountSample count_sample(double mu, unsigned threads = 0) {
  return DiskSpectrum(mu, threads).sample(mu);
}

}  // namespace diskweyl
