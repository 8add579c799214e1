#pragma once

// Total masses int e^{U_i} by flux through a large circle and by direct
// polar quadrature with a power-law tail.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "fourier.hpp"
#include "quadrature.hpp"
#include "solution.hpp"

namespace toda {

/// 4 pi i (n+1-i)
inline double predicted_mass(int n, int i) {
  detail::require(i >= 1 && i <= n, "predicted_mass: component out of range");
  return 4 * std::numbers::pi * i * (n + 1 - i);
}

/// -(circle integral of d_r U^i) at radius R, with a central difference of
/// step 1e-3 R in r.
template <class Real>
double mass_flux(const BasicSolutionParams<Real>& sp, int i, double R, int samples = 256) {
  detail::require(i >= 1 && i <= sp.n(), "mass_flux: component out of range");
  detail::require(R >= 1e2 && R <= 1e3, "mass_flux: R must be in [100, 1000]");
  const Real r = static_cast<Real>(R);
  const Real dr = static_cast<Real>(1e-3 * R);
  const Real mean_dr = fourier_coeffs<Real>(
                           [&](std::complex<Real> z) {
                             const std::complex<Real> dir = z / r;
                             return (u_upper_at(sp, i, z + dr * dir) - u_upper_at(sp, i, z - dr * dir)) / (2 * dr);
                           },
                           r, samples)
                           .a0;
  return static_cast<double>(-2 * std::numbers::pi_v<Real> * r * mean_dr);
}

struct QuadratureMass {
  double value = 0;         // disc integral plus tail
  double disc = 0;
  double tail = 0;
  double tail_constant = 0;  // C in e^{U_i} ~ C r^{-4}
  double outer_spread = 0;   // relative difference of the two outer averages
  bool tail_fit_unstable = false;
};

inline constexpr double kTailSpreadLimit = 0.10;

/// Disc quadrature of e^{U_i} over B_{R_max} plus pi C / R_max^2, with C
/// the mean of e^{U_i} r^4 on the outer two panel edges.
template <class Real>
QuadratureMass mass_quadrature_detail(const BasicSolutionParams<Real>& sp, int i, double R_max, int samples = 128) {
  detail::require(i >= 1 && i <= sp.n(), "mass_quadrature: component out of range");
  detail::require(R_max > 1, "mass_quadrature: R_max must be > 1");
  const auto idx = static_cast<std::size_t>(i - 1);
  auto mean = [&](Real r) {
    return circle_mean<Real>([&](std::complex<Real> z) { return eval_all(sp, z).exp_lower[idx]; }, r, samples);
  };
  const auto edges = radial_panel_edges({R_max});
  QuadratureMass out;
  out.disc = static_cast<double>(cumulative_disc_integrals<Real>(edges, mean).back());
  const double r_a = edges[edges.size() - 2];
  const double r_b = edges.back();
  const double c_a = static_cast<double>(mean(static_cast<Real>(r_a))) * std::pow(r_a, 4);
  const double c_b = static_cast<double>(mean(static_cast<Real>(r_b))) * std::pow(r_b, 4);
  out.tail_constant = c_b;
  out.outer_spread = std::abs(c_a - c_b) / std::max(std::abs(c_a), std::abs(c_b));
  out.tail_fit_unstable = !(out.outer_spread <= kTailSpreadLimit);
  out.tail = std::numbers::pi * c_b / (R_max * R_max);
  out.value = out.disc + out.tail;
  return out;
}

template <class Real>
double mass_quadrature(const BasicSolutionParams<Real>& sp, int i, double R_max) {
  return mass_quadrature_detail(sp, i, R_max).value;
}

struct MassReport {
  int i = 1;
  double flux_value = 0;
  double quadrature_value = 0;
  double predicted = 0;
  double flux_rel_error = 0;
  double quadrature_rel_error = 0;
  double agreement = 0;  // |flux - quadrature| / predicted
  double R_flux = 0;
  double R_max = 0;
  QuadratureMass quadrature;
};

template <class Real>
MassReport mass_report(const BasicSolutionParams<Real>& sp, int i, double R_flux = 1e3, double R_max = 1e3) {
  MassReport rep;
  rep.i = i;
  rep.R_flux = R_flux;
  rep.R_max = R_max;
  rep.predicted = predicted_mass(sp.n(), i);
  rep.flux_value = mass_flux(sp, i, R_flux);
  rep.quadrature = mass_quadrature_detail(sp, i, R_max);
  rep.quadrature_value = rep.quadrature.value;
  rep.flux_rel_error = std::abs(rep.flux_value - rep.predicted) / rep.predicted;
  rep.quadrature_rel_error = std::abs(rep.quadrature_value - rep.predicted) / rep.predicted;
  rep.agreement = std::abs(rep.flux_value - rep.quadrature_value) / rep.predicted;
  return rep;
}

/// (A m)_i for a mass vector m_1..m_n; each entry should be 8 pi.
inline std::vector<double> mass_sum_rule(const std::vector<double>& masses, const CartanData& cd) {
  detail::require(masses.size() == static_cast<std::size_t>(cd.n()), "mass_sum_rule: length must equal n");
  return to_lower(masses, cd);
}

}  // namespace toda
