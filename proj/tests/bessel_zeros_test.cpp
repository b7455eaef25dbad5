#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <gtest/gtest.h>

#include "diskweyl/bessel_zeros.hpp"

using namespace diskweyl;

TEST(BesselZero, ReferenceValues) {
  EXPECT_NEAR(bessel_zero(0, 1).x, 2.404825557695773, 1e-14);
  EXPECT_NEAR(bessel_zero(1, 1).x, 3.831705970207512, 1e-14);
  EXPECT_NEAR(bessel_zero(0, 2).x, 5.520078110286311, 1e-14);
  EXPECT_NEAR(bessel_zero(5, 1).x, 8.771483815959954, 1e-14);
  EXPECT_NEAR(bessel_zero(1, 2).x, 7.0156, 1e-4);
  EXPECT_NEAR(bessel_zero(1, 3).x, 10.1735, 1e-4);
}

TEST(BesselZero, MatchesBoost) {
  for (int n : {0, 1, 2, 5, 10, 37, 100, 250}) {
    for (int k = 1; k <= 25; ++k) {
      const double want = boost::math::cyl_bessel_j_zero(static_cast<double>(n), k);
      EXPECT_NEAR(bessel_zero(n, k).x, want, 4e-14 * want) << "n=" << n << " k=" << k;
    }
  }
}

TEST(BesselZero, Certified) {
  for (int n : {0, 3, 60, 300}) {
    for (const BesselZero& z : zeros_up_to(n, 400.0)) {
      EXPECT_LE(z.residual, kMaxZeroResidual);
      EXPECT_LE(z.bracket_width, kMaxRelativeBracket * z.x);
      EXPECT_EQ(z.n, n);
    }
  }
}

TEST(ZerosUpTo, IndicesConsecutiveAndSpaced) {
  for (int n : {0, 1, 17, 150}) {
    const auto zs = zeros_up_to(n, 300.0);
    ASSERT_FALSE(zs.empty());
    for (std::size_t i = 0; i < zs.size(); ++i) {
      EXPECT_EQ(zs[i].k, static_cast<int>(i) + 1);
      if (i > 0) EXPECT_GT(zs[i].x - zs[i - 1].x, kZeroWalkStep);
    }
    EXPECT_GT(zs.front().x, n);
    EXPECT_LE(zs.back().x, 300.0 * (1.0 + kCutoffSlack));
  }
}

TEST(ZerosUpTo, CountMatchesBoostEnumeration) {
  // Independent count: Boost zeros until they pass mu.
  const double mu = 120.0;
  for (int n : {0, 4, 33, 90, 119}) {
    int k = 0;
    while (boost::math::cyl_bessel_j_zero(static_cast<double>(n), k + 1) <= mu) ++k;
    EXPECT_EQ(static_cast<int>(zeros_up_to(n, mu).size()), k) << n;
  }
}

TEST(ZerosUpTo, EmptyBelowFirstZero) {
  EXPECT_TRUE(zeros_up_to(0, 2.4).empty());
  EXPECT_EQ(zeros_up_to(0, 2.405).size(), 1u);
  EXPECT_TRUE(zeros_up_to(10, 5.0).empty());
}

TEST(ZerosUpTo, IncludesZeroExactlyAtCutoff) {
  const double x = bessel_zero(3, 4).x;
  EXPECT_EQ(zeros_up_to(3, x).size(), 4u);
  EXPECT_EQ(zeros_up_to(3, std::nextafter(x, 0.0)).size(), 4u);
  EXPECT_EQ(zeros_up_to(3, x * (1.0 - 1e-12)).size(), 3u);
}

TEST(RefineZero, RecoversNearestZero) {
  for (int n : {0, 2, 40}) {
    for (int k : {1, 2, 9}) {
      const BesselZero exact = bessel_zero(n, k);
      const BesselZero r = refine_zero(n, exact.x + 0.3);
      EXPECT_NEAR(r.x, exact.x, 1e-12 * exact.x);
      EXPECT_EQ(r.k, 0);
      EXPECT_LE(r.residual, kMaxZeroResidual);
    }
  }
}

TEST(RefineZero, RejectsGuessBelowOrder) {
  EXPECT_THROW(refine_zero(10, 9.0), invalid_input);
  EXPECT_THROW(refine_zero(-1, 9.0), invalid_input);
}

TEST(Guesses, McMahonAccurateForLargeK) {
  for (int n : {0, 1, 3}) {
    const double x = bessel_zero(n, 60).x;
    EXPECT_NEAR(mcmahon_guess(n, 60), x, 1e-4) << n;
  }
}

TEST(Guesses, OlverAccurateNearTransition) {
  for (int n : {20, 200, 1000}) {
    for (int k = 1; k <= 3; ++k) {
      const double x = bessel_zero(n, k).x;
      EXPECT_NEAR(olver_guess(n, k), x, 2.0 / n * x) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Guesses, RegimeSelection) {
  EXPECT_DOUBLE_EQ(initial_guess(0, 3), mcmahon_guess(0, 3));
  EXPECT_DOUBLE_EQ(initial_guess(5, 6), mcmahon_guess(5, 6));
  EXPECT_DOUBLE_EQ(initial_guess(5, 5), olver_guess(5, 5));
  EXPECT_THROW(olver_guess(0, 1), invalid_input);
}

TEST(OlverPhase, SeriesAndClosedFormAgreeAtSwitch) {
  const double w = 0.5;
  EXPECT_NEAR(olver_phase_of_w(std::nextafter(w, 0.0)), w - std::atan(w), 1e-16);
}

TEST(OlverPhase, MatchesDefinition) {
  for (double z : {1.5, 2.0, 7.0}) {
    EXPECT_NEAR(olver_phase(z), std::sqrt(z * z - 1) - std::acos(1 / z), 1e-14);
  }
  EXPECT_THROW(olver_phase(0.9), invalid_input);
}

TEST(Psi, InvertsPhase) {
  for (double s : {1e-6, 0.01, 0.3, 2.0, 10.0, 45.0}) {
    const double z = 1.0 + psi(s);
    EXPECT_NEAR(olver_phase(z), 2.0 / 3.0 * std::pow(s, 1.5), 1e-13 * std::max(1.0, std::pow(s, 1.5)));
  }
}

TEST(Psi, SlopeAtOrigin) {
  const double s = 1e-7;
  EXPECT_NEAR(psi(s) / s, std::cbrt(0.5), 1e-6);
  EXPECT_EQ(psi(0.0), 0.0);
  EXPECT_THROW(psi(-1.0), invalid_input);
  EXPECT_THROW(psi(kPsiMaxArg + 1.0), invalid_input);
}
