#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include <toda/solution.hpp>

using namespace toda;
using C = std::complex<double>;

namespace {

SolutionParams liouville() { return SolutionParams(1, {0.5, 0.5}, {ComplexPoly<double>::monomial(1)}); }

// f computed straight from its definition.
double f_direct(const SolutionParams& sp, C z) {
  double f = sp.lambda(0);
  for (int i = 1; i <= sp.n(); ++i) f += sp.lambda(i) * std::norm(eval(sp.poly(i), z));
  return f;
}

}  // namespace

TEST(Normalize, Examples) {
  auto a = normalize_lambdas<double>({1, 1}, 1);
  EXPECT_NEAR(a.lambdas[0], 0.5, 1e-15);
  EXPECT_NEAR(a.lambdas[1], 0.5, 1e-15);
  auto b = normalize_lambdas<double>({0.5, 0.5}, 1);
  EXPECT_NEAR(b.scale, 1.0, 1e-15);
  auto c = normalize_lambdas<double>({1, 1, 1}, 2);
  for (double v : c.lambdas) EXPECT_NEAR(v, std::cbrt(1.0 / 256), 1e-15);
  EXPECT_THROW(normalize_lambdas<double>({1, -1}, 1), InvalidArgument);
  EXPECT_THROW(normalize_lambdas<double>({1, 1}, 2), InvalidArgument);
}

TEST(Normalize, PreservesRatiosAndHitsProduct) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<double> raw;
    for (int s = 0; s <= n; ++s) raw.push_back(0.3 + s);
    const auto out = normalize_lambdas(raw, n);
    double log_prod = 0;
    for (int s = 0; s <= n; ++s) {
      log_prod += std::log(out.lambdas[s]);
      EXPECT_NEAR(out.lambdas[s] / raw[s], out.scale, 1e-14 * out.scale);
    }
    // 2^{-n(n+1)} prod_{j<=n} (j!)^{-2}
    double target = -n * (n + 1) * std::log(2.0);
    for (int j = 1; j <= n; ++j) target -= 2 * std::lgamma(j + 1.0);
    EXPECT_NEAR(log_prod, target, 1e-12);
  }
}

TEST(SolutionParams, RejectsInvalid) {
  EXPECT_THROW(SolutionParams(1, {0.5, 0.6}, {ComplexPoly<double>::monomial(1)}), InvalidArgument);
  EXPECT_THROW(SolutionParams(1, {-0.5, -0.5}, {ComplexPoly<double>::monomial(1)}), InvalidArgument);
  EXPECT_THROW(SolutionParams(1, {0.5, 0.5}, {ComplexPoly<double>::monomial(2)}), InvalidArgument);
  EXPECT_THROW(SolutionParams(1, {0.5, 0.5}, {ComplexPoly<double>::monomial(1, C(2))}), InvalidArgument);
  EXPECT_THROW(SolutionParams::from_raw(2, {1, 1, 1}, {{{3, 0}, C(1)}}), InvalidArgument);
}

TEST(SolutionParams, FrequencyCoefficients) {
  const auto sp = SolutionParams::from_raw(3, {1, 1, 1, 1}, {{{3, 2}, C(0.1, 0.2)}, {{3, 1}, C(0.3, -0.4)}, {{2, 0}, C(-0.5, 0.6)}});
  EXPECT_EQ(sp.first_frequency_coeff(1), C(0.1, 0.2));   // c_{3,2}
  EXPECT_EQ(sp.second_frequency_coeff(2), C(0.3, -0.4)); // c_{3,1}
  EXPECT_EQ(sp.second_frequency_coeff(3), C(-0.5, 0.6)); // c_{2,0}
  EXPECT_THROW(sp.second_frequency_coeff(1), InvalidArgument);
}

TEST(MixedDerivative, Examples) {
  const auto sp = liouville();
  for (C z : {C(0), C(0.3, 2.0), C(-5, 1)}) EXPECT_NEAR(std::abs(mixed_derivative(sp, 1, 1, z) - C(0.5)), 0.0, 1e-15);
  const auto sp2 = sample_params(3, 4, 0.0);
  EXPECT_NEAR(std::abs(mixed_derivative(sp2, 0, 0, C(0)) - sp2.lambda(0)), 0.0, 1e-15);
}

TEST(MixedDerivative, MatchesFiniteDifferenceOfF) {
  // f_z = (f_x - i f_y)/2, f_{z zbar} = (f_xx + f_yy)/4.
  const auto sp = sample_params(2, 9, 0.5);
  const C z(0.4, -0.7);
  double prev = 0;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    const double fx = (f_direct(sp, z + h) - f_direct(sp, z - h)) / (2 * h);
    const double fy = (f_direct(sp, z + C(0, h)) - f_direct(sp, z - C(0, h))) / (2 * h);
    const C fz = C(fx, -fy) / 2.0;
    const double err = std::abs(fz - mixed_derivative(sp, 1, 0, z)) / std::abs(fz);
    EXPECT_LE(err, 1e-4);
    if (prev > 0) EXPECT_NEAR(prev / err, 4.0, 0.2);
    prev = err;
  }
  const double h = 1e-3;
  const double lap = (f_direct(sp, z + h) + f_direct(sp, z - h) + f_direct(sp, z + C(0, h)) + f_direct(sp, z - C(0, h)) -
                      4 * f_direct(sp, z)) / (h * h);
  EXPECT_NEAR(lap / 4, mixed_derivative(sp, 1, 1, z).real(), 1e-5 * std::abs(lap));
  EXPECT_NEAR(mixed_derivative(sp, 1, 1, z).imag(), 0.0, 1e-14);
}

TEST(DetK, SmallCases) {
  const auto sp = liouville();
  for (C z : {C(0), C(1, 1), C(3, -2)}) EXPECT_NEAR(std::exp(det_k(sp, 1, z).log_value), (1 + std::norm(z)) / 2, 1e-14 * (1 + std::norm(z)));
  const auto sp2 = sample_params(2, 7, 0.0);
  EXPECT_NEAR(std::exp(det_k(sp2, 2, C(0)).log_value), sp2.lambda(0) * sp2.lambda(1), 1e-15);
}

TEST(DetK, TopDeterminantIsConstant) {
  for (int n = 1; n <= 4; ++n) {
    const auto sp = sample_params(n, 3, 0.5);
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int rep = 0; rep < 10; ++rep) {
      const C z(u(rng), u(rng));
      EXPECT_NEAR(det_k(sp, n + 1, z).log_value, -n * (n + 1) * std::log(2.0), 1e-8);
    }
  }
}

TEST(DetK, GramRouteAgrees) {
  for (int n = 1; n <= 4; ++n) {
    const auto sp = sample_params(n, 5, 0.5);
    for (C z : {C(0), C(0.5, -0.25), C(-1.5, 2.0)})
      for (int k = 1; k <= n + 1; ++k) EXPECT_NEAR(det_k(sp, k, z).log_value, det_k_gram(sp, k, z).log_value, 1e-9) << n << " " << k;
  }
}

TEST(DetK, PositiveAndFiniteFarOut) {
  const auto sp = sample_params(3, 2, 0.5);
  for (double r : {1e2, 1e3, 1e4}) {
    for (int k = 1; k <= 4; ++k) {
      const auto d = det_k(sp, k, std::polar(r, 0.3));
      EXPECT_EQ(d.sign, 1);
      EXPECT_TRUE(std::isfinite(d.log_value));
    }
  }
  EXPECT_THROW(det_k(sp, 5, C(0)), InvalidArgument);
}

TEST(EvalAll, LiouvilleClosedForm) {
  const auto sp = liouville();
  const auto e0 = eval_all(sp, C(0));
  EXPECT_NEAR(e0.u_upper[0], std::log(2.0), 1e-15);
  EXPECT_NEAR(e0.u_lower[0], 2 * std::log(2.0), 1e-15);
  for (C z : {C(0.3, 0.1), C(-2, 4), C(100, 0)}) {
    const auto e = eval_all(sp, z);
    EXPECT_NEAR(e.u_lower[0], -2 * std::log((1 + std::norm(z)) / 2), 1e-12);
  }
}

TEST(EvalAll, LowerIsCartanTimesUpper) {
  const auto sp = sample_params(4, 1, 0.5);
  const auto e = eval_all(sp, C(0.7, -0.2));
  for (int i = 1; i <= 4; ++i) {
    double s = 0;
    for (int j = 1; j <= 4; ++j) s += sp.cartan().a_int(i, j) * e.u_upper[j - 1];
    EXPECT_NEAR(e.u_lower[i - 1], s, 1e-12 * std::max(1.0, std::abs(s)));
  }
}

TEST(EvalAll, LogarithmicGrowth) {
  // U^i + 2i(n+1-i) log r and U_i + 4 log r stay bounded out to r = 1000.
  const auto sp = sample_params(3, 8, 0.5);
  for (int i = 1; i <= 3; ++i) {
    double lo = 1e300, hi = -1e300;
    for (double r : {10.0, 100.0, 1000.0}) {
      const auto e = eval_all(sp, std::polar(r, 1.1));
      const double v = e.u_upper[i - 1] + 2.0 * i * (4 - i) * std::log(r);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      EXPECT_LT(std::abs(e.u_lower[i - 1] + 4 * std::log(1 + r)), 10.0);
    }
    EXPECT_LT(hi - lo, 0.1);
  }
}

TEST(SampleParams, DeterministicAndValid) {
  const auto a = sample_params(1, 0, 0.0);
  EXPECT_NEAR(a.lambda(0), 0.5, 1e-15);
  EXPECT_NEAR(a.lambda(1), 0.5, 1e-15);
  EXPECT_EQ(a.poly(1), ComplexPoly<double>::monomial(1));
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto x = sample_params(n, seed, 0.5);
      const auto y = sample_params(n, seed, 0.5);
      ASSERT_EQ(x.lambdas(), y.lambdas());
      for (int i = 1; i <= n; ++i) {
        ASSERT_EQ(x.poly(i), y.poly(i));
        for (int j = 0; j < i; ++j) ASSERT_LE(std::abs(x.c(i, j)), 0.5);
      }
      for (int k = 1; k <= n + 1; ++k) ASSERT_GT(std::exp(det_k(x, k, C(0.3, 0.2)).log_value), 0.0);
    }
  }
}

TEST(ParamDirection, NamesRoundTrip) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& d : kernel_directions(n)) EXPECT_EQ(ParamDirection::parse(d.name()), d);
  EXPECT_EQ(kernel_directions(3).size(), 10u);
  EXPECT_EQ(ParamDirection::parse("lambda_0_2"), ParamDirection::lambda_ratio(0, 2));
  EXPECT_THROW(ParamDirection::parse("gamma_1"), InvalidArgument);
  EXPECT_THROW(ParamDirection::parse("alpha_x"), InvalidArgument);
}

TEST(Perturb, MovesTheRightCoefficient) {
  const auto sp = sample_params(3, 2, 0.5);
  const auto a = perturb(sp, ParamDirection::alpha(1), 0.25);
  EXPECT_NEAR(std::abs(a.c(3, 2) - sp.c(3, 2) - C(0.25)), 0.0, 1e-15);
  const auto b = perturb(sp, ParamDirection::beta2(3), 0.25);
  EXPECT_NEAR(std::abs(b.c(2, 0) - sp.c(2, 0) - C(0, 0.25)), 0.0, 1e-15);
  const auto l = perturb(sp, ParamDirection::lambda_ratio(0, 3), 0.1);
  EXPECT_NEAR(l.lambda(0) / sp.lambda(0), std::exp(0.1), 1e-14);
  EXPECT_THROW(perturb(sp, ParamDirection::alpha2(1), 0.1), InvalidArgument);
  EXPECT_THROW(perturb(sp, ParamDirection::lambda_ratio(0, 0), 0.1), InvalidArgument);
}

TEST(Cast, LongDoubleAgreesWithDouble) {
  const auto sp = sample_params(3, 6, 0.5);
  const auto spl = sp.cast<long double>();
  const auto e = eval_all(sp, C(1.5, -0.5));
  const auto el = eval_all(spl, std::complex<long double>(1.5L, -0.5L));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.u_upper[i], static_cast<double>(el.u_upper[i]), 1e-12);
}
