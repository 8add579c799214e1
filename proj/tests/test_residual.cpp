#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <map>

#include <toda/residual.hpp>

using namespace toda;
using C = std::complex<double>;

namespace {

SolutionParams liouville(C c = C(0)) {
  return SolutionParams(1, {0.5, 0.5}, {ComplexPoly<double>({c, C(1)})});
}

// Exact -dU_1/d(Re c) for U_1 = -2 log((1 + |z + c|^2)/2).
double alpha_field(C z, C c) { return 4 * (z + c).real() / (1 + std::norm(z + c)); }

}  // namespace

TEST(GridSpec, Construction) {
  const auto g = GridSpec::with_spacing({0, 0}, 2.0, 1e-2);
  EXPECT_EQ(g.points_per_side, 401);
  EXPECT_DOUBLE_EQ(g.h(), 1e-2);
  EXPECT_EQ(g.refined().points_per_side, 801);
  EXPECT_DOUBLE_EQ(g.refined().h(), 5e-3);
  EXPECT_THROW(GridSpec({0, 0}, 1.0, 4), InvalidArgument);
  EXPECT_THROW(GridSpec({0, 0}, -1.0, 5), InvalidArgument);
  EXPECT_THROW(GridSpec::with_spacing({0, 0}, 1.0, 0.0), InvalidArgument);
}

TEST(PdeResidual, LiouvilleIsSecondOrder) {
  const auto r = pde_residual(liouville(), GridSpec::with_spacing({0, 0}, 2.0, 1e-2));
  EXPECT_LE(r.overall_max(), 1e-3);
  EXPECT_GE(r.ratio(), 3.5);
  EXPECT_LE(r.ratio(), 4.5);
}

TEST(PdeResidual, RadialSymmetryWithZeroCoefficients) {
  const auto sp = zero_coefficients(sample_params(2, 3, 0.5));
  const GridSpec g({0, 0}, 1.0, 41);
  std::map<std::pair<int, int>, std::vector<double>> by_point;
  scan_pde_residual(sp, g, [&](const PointResidual& pr) {
    const int ix = static_cast<int>(std::lround((pr.z.real() + 1.0) / g.h()));
    const int iy = static_cast<int>(std::lround((pr.z.imag() + 1.0) / g.h()));
    by_point[{ix, iy}] = pr.lower;
  });
  const int N = g.points_per_side;
  for (const auto& [key, v] : by_point) {
    const auto rotated = by_point.at({N - 1 - key.second, key.first});  // multiply by i
    for (std::size_t c = 0; c < v.size(); ++c) EXPECT_NEAR(v[c], rotated[c], 1e-10);
  }
}

TEST(PdeResidual, RandomParametersConverge) {
  for (int n : {2, 3}) {
    const auto r = pde_residual(sample_params(n, 11, 0.5), GridSpec::with_spacing({0, 0}, 1.0, 2e-2));
    EXPECT_GE(r.order_estimate(), 1.5) << n;
    EXPECT_LE(r.order_estimate(), 2.5) << n;
  }
}

TEST(PdeResidual, UpperFormMatchesLowerForm) {
  const auto sp = sample_params(3, 4, 0.5);
  scan_pde_residual(sp, GridSpec({0.2, -0.1}, 0.5, 21), [&](const PointResidual& pr) {
    const auto up = to_upper(pr.lower, sp.cartan());
    for (std::size_t i = 0; i < up.size(); ++i) ASSERT_NEAR(up[i], pr.upper[i], 1e-9);
  });
}

TEST(DerivativeField, LiouvilleTranslationClosedForm) {
  const C c(0.3, -0.2);
  const auto field = param_derivative_field(liouville(c), ParamDirection::alpha(1), 1e-4);
  for (C z : {C(0), C(0.5, 0.5), C(-1.2, 0.7), C(3, -4)}) EXPECT_NEAR(field(z).lower[0], alpha_field(z, c), 1e-6);
}

TEST(DerivativeField, StepRefinementIsSecondOrder) {
  const auto sp = sample_params(2, 1, 0.5);
  const C z(0.4, 0.3);
  const auto a = param_derivative_field(sp, ParamDirection::alpha2(2), 1e-2)(z).lower;
  const auto b = param_derivative_field(sp, ParamDirection::alpha2(2), 5e-3)(z).lower;
  const auto c = param_derivative_field(sp, ParamDirection::alpha2(2), 2.5e-3)(z).lower;
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR((a[i] - b[i]) / (b[i] - c[i]), 4.0, 0.05);
}

TEST(DerivativeField, RejectsBadStep) {
  const auto sp = sample_params(2, 1, 0.5);
  EXPECT_THROW(param_derivative_field(sp, ParamDirection::alpha(1), 0.0), InvalidArgument);
  EXPECT_THROW(param_derivative_field(sp, ParamDirection::alpha(1), -1e-4), InvalidArgument);
  // A lambda step so large the perturbed set overflows.
  EXPECT_THROW(param_derivative_field(sp, ParamDirection::lambda_ratio(0, 1), 1e6), InvalidArgument);
}

TEST(LinearizedResidual, LiouvilleMatchesClosedFormField) {
  const C c(0.1, 0.2);
  const auto sp = liouville(c);
  const auto g = GridSpec::with_spacing({0, 0}, 2.0, 1e-2);
  const auto numeric = linearized_residual_max(sp, param_derivative_field(sp, ParamDirection::alpha(1), 1e-4), g);

  // Same 5-point residual applied to the exact field.
  double exact = 0;
  const double h = g.h();
  for (int iy = 1; iy + 1 < g.points_per_side; ++iy) {
    for (int ix = 1; ix + 1 < g.points_per_side; ++ix) {
      const C z = g.point(ix, iy);
      const double phi = alpha_field(z, c);
      const double lap = (alpha_field(z + h, c) + alpha_field(z - h, c) + alpha_field(z + C(0, h), c) +
                          alpha_field(z - C(0, h), c) - 4 * phi) / (h * h);
      const double e = 4 / std::pow(1 + std::norm(z + c), 2);
      exact = std::max(exact, std::abs(lap + 2 * e * phi));
    }
  }
  EXPECT_NEAR(numeric[0], exact, 1e-3 * exact);
  EXPECT_LE(numeric[0], 1e-3);
}

TEST(LinearizedResidual, ZeroDirectionGivesZero) {
  const auto sp = sample_params(2, 0, 0.5);
  const auto field = param_derivative_field(sp, ParamDirection::none(), 1e-4);
  for (double v : field(C(0.3, 0.4)).lower) EXPECT_EQ(v, 0.0);
  for (double v : linearized_residual_max(sp, field, GridSpec({0, 0}, 1.0, 21))) EXPECT_EQ(v, 0.0);
}

TEST(LinearizedResidual, SecondFrequencyDirectionConverges) {
  const auto r = linearized_residual(sample_params(2, 3, 0.5), ParamDirection::beta2(2), 1e-4,
                                     GridSpec::with_spacing({0, 0}, 1.0, 2e-2));
  EXPECT_NEAR(r.order_estimate(), 2.0, 0.1);
}
