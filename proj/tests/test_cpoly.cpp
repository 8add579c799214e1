#include <gtest/gtest.h>

#include <complex>
#include <random>

#include <toda/cpoly.hpp>

using C = std::complex<double>;
using P = toda::ComplexPoly<double>;

namespace {
P random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<C> c(degree + 1);
  for (auto& v : c) v = C(u(rng), u(rng));
  c.back() = C(1, 0);
  return P(c);
}

// Multiples of 1/8: sums and small-integer products stay exact in double.
P dyadic_poly(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<int> u(-8, 8);
  std::vector<C> c(degree + 1);
  for (auto& v : c) v = C(u(rng) / 8.0, u(rng) / 8.0);
  c.back() = C(1, 0);
  return P(c);
}
}  // namespace

TEST(ComplexPoly, DegreeAndTrim) {
  EXPECT_EQ(P().degree(), -1);
  EXPECT_EQ(P({C(1), C(0), C(0)}).degree(), 0);
  EXPECT_EQ(P({C(0), C(2)}).degree(), 1);
}

TEST(ComplexPoly, MonicConstruction) {
  std::map<std::pair<int, int>, C> c{{{1, 0}, C(0)}};
  EXPECT_EQ(toda::monic_from_coeffs<double>(1, c), P({C(0), C(1)}));
  c = {{{2, 1}, C(1, 1)}, {{2, 0}, C(2)}};
  EXPECT_EQ(toda::monic_from_coeffs<double>(2, c), P({C(2), C(1, 1), C(1)}));
  EXPECT_THROW(toda::monic_from_coeffs<double>(0, c), toda::InvalidArgument);
  std::map<std::pair<int, int>, C> bad{{{2, 2}, C(1)}};
  EXPECT_THROW(toda::monic_from_coeffs<double>(2, bad), toda::InvalidArgument);
}

TEST(ComplexPoly, Derivatives) {
  const C c(0.7, -0.2);
  EXPECT_EQ(toda::derivative(P({C(0), c, C(0), C(1)})), P({c, C(0), C(3)}));

  // Degree-3 monic with real coefficients: 3z^2 + 2 c32 z + c31.
  std::map<std::pair<int, int>, C> m{{{3, 2}, C(0.5)}, {{3, 1}, C(-1.5)}, {{3, 0}, C(2)}};
  EXPECT_EQ(toda::derivative(toda::monic_from_coeffs<double>(3, m)), P({C(-1.5), C(1.0), C(3)}));

  // Leading three terms of P_n' are n z^{n-1} + (n-1) c_{n,n-1} z^{n-2} + (n-2) c_{n,n-2} z^{n-3}.
  const int n = 5;
  std::map<std::pair<int, int>, C> q{{{5, 4}, C(0.3, 0.1)}, {{5, 3}, C(-0.2, 0.4)}, {{5, 1}, C(9)}};
  const auto d = toda::leading_terms(toda::derivative(toda::monic_from_coeffs<double>(n, q)), 3);
  EXPECT_EQ(d, P({C(0), C(0), C(3) * C(-0.2, 0.4), C(4) * C(0.3, 0.1), C(5)}));

  EXPECT_TRUE(toda::derivative(P({C(1), C(2), C(3)}), 3).is_zero());
  EXPECT_THROW(toda::derivative(P({C(1)}), -1), toda::InvalidArgument);
}

TEST(ComplexPoly, DerivativeIsLinear) {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const auto p = dyadic_poly(rng, 5);
    const auto q = dyadic_poly(rng, 3);
    EXPECT_EQ(toda::derivative(p + q), toda::derivative(p) + toda::derivative(q));
  }
}

TEST(ComplexPoly, Evaluation) {
  EXPECT_EQ(toda::eval(P({C(0), C(1)}), C(1, 1)), C(1, 1));
  EXPECT_EQ(toda::eval(P({C(1), C(0), C(1)}), C(0, 1)), C(0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int rep = 0; rep < 100; ++rep) {
    const auto p = random_poly(rng, 6);
    const C z(u(rng), u(rng));
    const C a = toda::eval(p, z);
    const C b = toda::eval_power_sum(p, z);
    EXPECT_LE(std::abs(a - b), 1e-13 * std::max(1.0, std::abs(a)));
  }
}

TEST(ComplexPoly, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(3);
  const auto p = random_poly(rng, 6);
  const auto dp = toda::derivative(p);
  const C z(0.4, -0.3);
  double prev = 0;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    const C fd = (toda::eval(p, z + h) - toda::eval(p, z - h)) / (2 * h);
    const double err = std::abs(fd - toda::eval(dp, z));
    if (prev > 0) EXPECT_NEAR(prev / err, 4.0, 0.1);
    prev = err;
  }
}

TEST(ComplexPoly, ShiftIsTranslation) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto p = random_poly(rng, 4);
  const C a(0.3, -0.7);
  const auto q = toda::shift(p, a);
  EXPECT_EQ(q.degree(), 4);
  EXPECT_NEAR(std::abs(q.coeff(4) - C(1)), 0.0, 1e-15);
  for (int rep = 0; rep < 10; ++rep) {
    const C z(u(rng), u(rng));
    EXPECT_LE(std::abs(toda::eval(q, z) - toda::eval(p, z + a)), 1e-12);
  }
}
