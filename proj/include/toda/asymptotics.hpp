#pragma once

// Large-radius probes: Fourier coefficients of U^m and of parameter-derivative
// fields compared with their predicted expansion coefficients.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fourier.hpp"
#include "quadrature.hpp"
#include "residual.hpp"
#include "solution.hpp"

namespace toda {

inline constexpr int kDefaultAngularSamples = 128;
inline constexpr double kDefaultKernelStep = 1e-4;

struct RadiusPair {
  double lo = 200;
  double hi = 400;
};

/// Richardson extrapolation of v(r) = v_inf + C r^{-order}.
inline double richardson(double v_lo, double r_lo, double v_hi, double r_hi, int order = 2) {
  detail::require(r_lo > 0 && r_hi > r_lo, "richardson: need 0 < r_lo < r_hi");
  const double w_lo = std::pow(r_lo, order);
  const double w_hi = std::pow(r_hi, order);
  return (w_hi * v_hi - w_lo * v_lo) / (w_hi - w_lo);
}

struct ExpansionCheck {
  std::string label;
  double r_lo = 0;
  double r_hi = 0;
  double measured_lo = 0;  // scaled coefficient at r_lo
  double measured_hi = 0;  // scaled coefficient at r_hi
  double extrapolated = 0;
  double predicted = 0;
  double reference = 1;      // error normalization; |predicted| unless that is zero
  double rel_error = 0;      // extrapolated vs predicted
  double rel_error_raw = 0;  // measured_hi vs predicted
  double rel_error_lo = 0;   // measured_lo vs predicted

  void finish() {
    extrapolated = r_hi > r_lo ? richardson(measured_lo, r_lo, measured_hi, r_hi) : measured_hi;
    rel_error = std::abs(extrapolated - predicted) / reference;
    rel_error_raw = std::abs(measured_hi - predicted) / reference;
    rel_error_lo = std::abs(measured_lo - predicted) / reference;
  }
};

inline double reference_for(double predicted, double fallback) {
  return predicted != 0 ? std::abs(predicted) : fallback;
}

// ---------------------------------------------------------------------------
// Leading coefficient of e^{-U^m}.

/// Predicted r -> infinity limit of e^{-U^m} r^{-2m(n+1-m)}:
/// 2^{m(m-1)} lambda_n ... lambda_{n+1-m} ((m-1)! ... 0!)^2.
template <class Real>
double predicted_leading_coefficient(const BasicSolutionParams<Real>& sp, int m) {
  const int n = sp.n();
  detail::require(m >= 1 && m <= n, "predicted_leading_coefficient: component out of range");
  long double log_value = static_cast<long double>(m * (m - 1)) * std::log(2.0L);
  for (int l = n + 1 - m; l <= n; ++l) log_value += static_cast<long double>(sp.log_lambdas()[static_cast<std::size_t>(l)]);
  for (int j = 1; j < m; ++j) log_value += 2 * std::lgamma(static_cast<long double>(j + 1));
  return static_cast<double>(std::exp(log_value));
}

struct LeadingCoefficientCheck {
  int m = 1;
  double r = 0;
  int exponent = 0;            // 2m(n+1-m)
  int alternate_exponent = 0;  // 2m(n+2-m)
  double measured = 0;
  double alternate_measured = 0;
  double predicted = 0;
  double rel_error = 0;
  double alternate_rel_error = 0;
  double alternate_orders = 0;  // log10(predicted / alternate_measured)
};

/// Angular mean of e^{-U^m} r^{-2m(n+1-m)} at radius r, next to the same
/// quantity with the exponent 2m(n+2-m).
template <class Real>
LeadingCoefficientCheck leading_coefficient_check(const BasicSolutionParams<Real>& sp, int m, double r,
                                                  int samples = kDefaultAngularSamples) {
  const int n = sp.n();
  detail::require(m >= 1 && m <= n, "leading_coefficient_check: component out of range");
  detail::require(r >= 2 && r <= 1e3, "leading_coefficient_check: radius must be in [2, 1000]");
  LeadingCoefficientCheck out;
  out.m = m;
  out.r = r;
  out.exponent = 2 * m * (n + 1 - m);
  out.alternate_exponent = 2 * m * (n + 2 - m);
  const Real log_r = std::log(static_cast<Real>(r));
  auto scaled = [&](int exponent) {
    return fourier_coeffs<Real>([&](std::complex<Real> z) { return std::exp(-u_upper_at(sp, m, z) - exponent * log_r); },
                                static_cast<Real>(r), samples)
        .a0;
  };
  out.measured = static_cast<double>(scaled(out.exponent));
  out.alternate_measured = static_cast<double>(scaled(out.alternate_exponent));
  out.predicted = predicted_leading_coefficient(sp, m);
  out.rel_error = std::abs(out.measured - out.predicted) / out.predicted;
  out.alternate_rel_error = std::abs(out.alternate_measured - out.predicted) / out.predicted;
  out.alternate_orders = std::log10(out.predicted / out.alternate_measured);
  return out;
}

// ---------------------------------------------------------------------------
// First-frequency coefficients of -U^m.

struct FirstFrequencyCheck {
  int m = 1;
  ExpansionCheck cos_part;  // r a_1 -> 2m alpha_m
  ExpansionCheck sin_part;  // r b_1 -> 2m beta_m
  /// |(ext_cos, ext_sin) - 2m (alpha_m, beta_m)| / |2m (alpha_m, beta_m)|,
  /// or divided by 2m when c = 0.
  double complex_rel_error = 0;
};

template <class Real>
FirstFrequencyCheck first_frequency_check(const BasicSolutionParams<Real>& sp, int m, RadiusPair radii = {},
                                          int samples = kDefaultAngularSamples) {
  detail::require(m >= 1 && m <= sp.n(), "first_frequency_check: component out of range");
  FirstFrequencyCheck out;
  out.m = m;
  const std::complex<double> predicted(2.0 * m * static_cast<double>(sp.alpha(m)), 2.0 * m * static_cast<double>(sp.beta(m)));
  const double reference = reference_for(std::abs(predicted), 2.0 * m);
  auto coeffs_at = [&](double r) {
    return fourier_coeffs<Real>([&](std::complex<Real> z) { return -u_upper_at(sp, m, z); }, static_cast<Real>(r), samples);
  };
  const auto lo = coeffs_at(radii.lo);
  const auto hi = coeffs_at(radii.hi);
  auto fill = [&](ExpansionCheck& e, const char* label, double v_lo, double v_hi, double pred) {
    e.label = std::string(label) + "_" + std::to_string(m);
    e.r_lo = radii.lo;
    e.r_hi = radii.hi;
    e.measured_lo = radii.lo * v_lo;
    e.measured_hi = radii.hi * v_hi;
    e.predicted = pred;
    e.reference = reference;
    e.finish();
  };
  fill(out.cos_part, "alpha", static_cast<double>(lo.a1), static_cast<double>(hi.a1), predicted.real());
  fill(out.sin_part, "beta", static_cast<double>(lo.b1), static_cast<double>(hi.b1), predicted.imag());
  out.complex_rel_error = std::abs(std::complex<double>(out.cos_part.extrapolated, out.sin_part.extrapolated) - predicted) / reference;
  return out;
}

// ---------------------------------------------------------------------------
// Frequency signatures of the linearized kernel.

/// Predicted limit of the scaled coefficient of -dU^m/d(dir): 2m delta_mj for
/// first-frequency directions, -m(m-1) delta_mj + m(m+1) delta_{m,j-1} for
/// second-frequency ones.
inline double predicted_kernel_signature(const ParamDirection& dir, int m) {
  const int j = dir.index;
  if (dir.is_first_frequency()) return m == j ? 2.0 * m : 0.0;
  if (dir.is_second_frequency()) {
    if (m == j) return -static_cast<double>(m * (m - 1));
    if (m == j - 1) return static_cast<double>(m * (m + 1));
    return 0.0;
  }
  throw InvalidArgument("kernel signature needs an alpha/beta direction, got " + dir.name());
}

struct KernelSignatureCheck {
  ParamDirection dir;
  int m = 1;
  int frequency = 1;
  ExpansionCheck signature;  // projection on cos or sin matching the direction
  double cross_term = 0;     // the other projection at r_hi, scaled and normalized
};

template <class Real>
KernelSignatureCheck kernel_signature_check(const BasicSolutionParams<Real>& sp, const ParamDirection& dir, int m,
                                            RadiusPair radii = {}, Real step = static_cast<Real>(kDefaultKernelStep),
                                            int samples = kDefaultAngularSamples) {
  validate_direction(dir, sp.n());
  detail::require(dir.is_first_frequency() || dir.is_second_frequency(),
                  "kernel_signature_check: direction must be alpha/beta or alpha2/beta2");
  detail::require(m >= 1 && m <= sp.n(), "kernel_signature_check: component out of range");
  const auto field = param_derivative_field(sp, dir, step);
  KernelSignatureCheck out;
  out.dir = dir;
  out.m = m;
  out.frequency = dir.is_second_frequency() ? 2 : 1;
  const double predicted = predicted_kernel_signature(dir, m);
  const double fallback = out.frequency == 1 ? 2.0 * m : static_cast<double>(m * (m + 1));
  auto project = [&](double r, bool sine) {
    const auto c = fourier_coeffs<Real>([&](std::complex<Real> z) { return field.upper(m, z); }, static_cast<Real>(r), samples);
    const double v = static_cast<double>(sine ? c.sin_coeff(out.frequency) : c.cos_coeff(out.frequency));
    return v * std::pow(r, out.frequency);
  };
  auto& e = out.signature;
  e.label = dir.name() + "_m" + std::to_string(m);
  e.r_lo = radii.lo;
  e.r_hi = radii.hi;
  e.measured_lo = project(radii.lo, dir.is_sine());
  e.measured_hi = project(radii.hi, dir.is_sine());
  e.predicted = predicted;
  e.reference = reference_for(predicted, fallback);
  e.finish();
  out.cross_term = std::abs(project(radii.hi, !dir.is_sine())) / e.reference;
  return out;
}

// ---------------------------------------------------------------------------
// Constant term of U_i + 4 log r.

/// b_{i,1}, b_{i,2}, b_{i,3} from the tabulated closed forms and from their
/// defining sums over the Cartan row.
struct ConstantTermTables {
  double b1_table = 0, b2_table = 0, b3_table = 0;
  double b1_sum = 0, b2_sum = 0, b3_sum = 0;

  /// -(b1 log 2 + b2 + 2 b3)
  static double limit(double b1, double b2, double b3) { return -(b1 * std::numbers::ln2 + b2 + 2 * b3); }
  double limit_table() const { return limit(b1_table, b2_table, b3_table); }
  double limit_sum() const { return limit(b1_sum, b2_sum, b3_sum); }
};

template <class Real>
ConstantTermTables constant_term_tables(const BasicSolutionParams<Real>& sp, int i) {
  const int n = sp.n();
  detail::require(i >= 1 && i <= n, "constant_term_tables: component out of range");
  auto log_lambda = [&](int l) { return static_cast<double>(sp.log_lambdas()[static_cast<std::size_t>(l)]); };
  auto log_factorial = [](int k) { return std::lgamma(k + 1.0); };
  ConstantTermTables t;
  if (i < n) {
    t.b1_table = -2;
    t.b2_table = log_lambda(n + 1 - i) - log_lambda(n - i);
    t.b3_table = -std::log(static_cast<double>(i));
  } else {
    t.b1_table = static_cast<double>((n - 1) * (n + 2));
    for (int l = 2; l <= n; ++l) t.b2_table += log_lambda(l);
    t.b2_table -= log_lambda(1);
    for (int k = 1; k <= n - 2; ++k) t.b3_table += log_factorial(k);
    t.b3_table += 2 * log_factorial(n - 1);
  }
  // Defining sums: sum_j a_ij x_j with x_j = j(j-1), sum_{l=n+1-j}^n log lambda_l,
  // sum_{l<j} log l!.
  for (int j = 1; j <= n; ++j) {
    const int a = sp.cartan().a_int(i, j);
    if (a == 0) continue;
    double lam = 0, fac = 0;
    for (int l = n + 1 - j; l <= n; ++l) lam += log_lambda(l);
    for (int l = 0; l < j; ++l) fac += log_factorial(l);
    t.b1_sum += a * static_cast<double>(j * (j - 1));
    t.b2_sum += a * lam;
    t.b3_sum += a * fac;
  }
  return t;
}

struct ConstantTermCheck {
  int i = 1;
  ExpansionCheck against_sum;    // predicted from the defining sums
  ConstantTermTables tables;
  double rel_error_table = 0;    // extrapolated vs the tabulated closed forms
  bool tables_agree = false;     // tabulated and summed limits match
};

/// Frequency-0 part of U_i + 4 log r, Richardson-extrapolated. Reported, not
/// asserted: the tabulated b_{n,2} disagrees with its defining sum.
template <class Real>
ConstantTermCheck constant_term_probe(const BasicSolutionParams<Real>& sp, int i, RadiusPair radii = {},
                                      int samples = kDefaultAngularSamples) {
  detail::require(i >= 1 && i <= sp.n(), "constant_term_probe: component out of range");
  ConstantTermCheck out;
  out.i = i;
  out.tables = constant_term_tables(sp, i);
  auto mean_at = [&](double r) {
    const Real log_r = std::log(static_cast<Real>(r));
    return static_cast<double>(fourier_coeffs<Real>(
                                   [&](std::complex<Real> z) {
                                     return eval_all(sp, z).u_lower[static_cast<std::size_t>(i - 1)] + 4 * log_r;
                                   },
                                   static_cast<Real>(r), samples)
                                   .a0);
  };
  auto& e = out.against_sum;
  e.label = "U_" + std::to_string(i) + "+4log(r)";
  e.r_lo = radii.lo;
  e.r_hi = radii.hi;
  e.measured_lo = mean_at(radii.lo);
  e.measured_hi = mean_at(radii.hi);
  e.predicted = out.tables.limit_sum();
  e.reference = reference_for(e.predicted, 1.0);
  e.finish();
  const double table = out.tables.limit_table();
  out.rel_error_table = std::abs(e.extrapolated - table) / reference_for(table, 1.0);
  out.tables_agree = std::abs(table - e.predicted) <= 1e-9 * std::max(1.0, std::abs(table));
  return out;
}

// ---------------------------------------------------------------------------
// Integrals of second-frequency derivative fields over the plane.

struct TIntegralResult {
  int l = 2;
  bool sine = false;
  int component = 1;             // U^component is differentiated
  std::vector<double> radii;     // R_1 < ... < R_K
  std::vector<double> partial;   // int_{B_R} at each radius
  std::vector<double> differences;  // partial[k+1] - partial[k]
  std::vector<double> ratios;       // |d_k| / |d_{k+1}|
  double tail = 0;
  double tail_exponent = 0;      // fitted decay power of the angular mean
  bool tail_fit_ok = false;
  double value = 0;              // partial at R_K plus tail
  bool converging = false;       // every ratio >= min_ratio
};

inline constexpr double kMinCauchyRatio = 1.5;

/// int_{R^2} -dU^component / d(alpha_{l,2} or beta_{l,2}), angular-first with
/// Gauss panels in r and a power-law tail beyond the last radius.
template <class Real>
TIntegralResult t_integral(const BasicSolutionParams<Real>& sp, int l, bool sine, int component,
                           std::vector<double> radii = {50, 100, 200, 400},
                           Real step = static_cast<Real>(kDefaultKernelStep), int samples = 64,
                           double min_ratio = kMinCauchyRatio) {
  const int n = sp.n();
  detail::require(n >= 2, "t_integral: needs n >= 2");
  detail::require(l >= 2 && l <= n, [&] { return "t_integral: l must be in 2.." + std::to_string(n) + ", got " + std::to_string(l); });
  detail::require(component == l - 1 || component == l, "t_integral: component must be l-1 or l");
  detail::require(radii.size() >= 2, "t_integral: need at least two radii");
  detail::require(samples >= kMinAngularSamples, "t_integral: too few angular samples");
  std::sort(radii.begin(), radii.end());
  const auto dir = sine ? ParamDirection::beta2(l) : ParamDirection::alpha2(l);
  const auto field = param_derivative_field(sp, dir, step);
  auto mean = [&](Real r) {
    return circle_mean<Real>([&](std::complex<Real> z) { return field.upper(component, z); }, r, samples);
  };
  const auto edges = radial_panel_edges(radii);
  const auto cumulative = cumulative_disc_integrals<Real>(edges, mean);

  TIntegralResult out;
  out.l = l;
  out.sine = sine;
  out.component = component;
  out.radii = radii;
  for (double R : radii) {
    const auto it = std::find(edges.begin(), edges.end(), R);
    out.partial.push_back(static_cast<double>(cumulative[static_cast<std::size_t>(it - edges.begin())]));
  }
  for (std::size_t k = 0; k + 1 < out.partial.size(); ++k) out.differences.push_back(out.partial[k + 1] - out.partial[k]);
  out.converging = true;
  for (std::size_t k = 0; k + 1 < out.differences.size(); ++k) {
    const double ratio = std::abs(out.differences[k]) / std::abs(out.differences[k + 1]);
    out.ratios.push_back(ratio);
    if (!(ratio >= min_ratio)) out.converging = false;
  }
  // Tail: g(r) ~ C r^{-p} fitted from the outer edges of the last two panels.
  const double r_b = edges.back();
  const double r_a = edges[edges.size() - 2];
  const double g_a = static_cast<double>(mean(static_cast<Real>(r_a)));
  const double g_b = static_cast<double>(mean(static_cast<Real>(r_b)));
  out.value = out.partial.back();
  if (g_a != 0 && g_b != 0 && (g_a > 0) == (g_b > 0)) {
    out.tail_exponent = std::log(g_a / g_b) / std::log(r_b / r_a);
    if (out.tail_exponent > 2) {
      out.tail_fit_ok = true;
      out.tail = 2 * std::numbers::pi * g_b * r_b * r_b / (out.tail_exponent - 2);
      out.value += out.tail;
    }
  }
  return out;
}

}  // namespace toda
