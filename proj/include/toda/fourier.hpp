#pragma once

// Low-frequency harmonic analysis on circles |z| = r.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace toda {

/// field(theta) ~ a0 + a1 cos + b1 sin + a2 cos 2theta + b2 sin 2theta + ...
template <class Real>
struct FourierCoeffs {
  Real a0 = 0;
  Real a1 = 0;
  Real b1 = 0;
  Real a2 = 0;
  Real b2 = 0;

  Real cos_coeff(int k) const { return k == 0 ? a0 : (k == 1 ? a1 : a2); }
  Real sin_coeff(int k) const { return k == 1 ? b1 : (k == 2 ? b2 : Real(0)); }
};

/// Uniform angular grid theta_k = 2 pi k / M needs M >= 8 * max frequency.
inline constexpr int kMaxFrequency = 2;
inline constexpr int kMinAngularSamples = 8 * kMaxFrequency;

template <class Real>
Real angle(int k, int samples) {
  return 2 * std::numbers::pi_v<Real> * static_cast<Real>(k) / static_cast<Real>(samples);
}

/// Trapezoid coefficients from samples at theta_k = 2 pi k / M.
template <class Real>
FourierCoeffs<Real> fourier_coeffs(std::span<const Real> samples) {
  const int M = static_cast<int>(samples.size());
  detail::require(M >= kMinAngularSamples, "fourier_coeffs: need at least 16 angular samples");
  FourierCoeffs<Real> out;
  for (int k = 0; k < M; ++k) {
    const Real v = samples[static_cast<std::size_t>(k)];
    const Real t = angle<Real>(k, M);
    out.a0 += v;
    out.a1 += v * std::cos(t);
    out.b1 += v * std::sin(t);
    out.a2 += v * std::cos(2 * t);
    out.b2 += v * std::sin(2 * t);
  }
  const Real inv = Real(1) / static_cast<Real>(M);
  out.a0 *= inv;
  out.a1 *= 2 * inv;
  out.b1 *= 2 * inv;
  out.a2 *= 2 * inv;
  out.b2 *= 2 * inv;
  return out;
}

/// Samples field(z) on |z| = r and returns its low-frequency coefficients.
template <class Real, class Field>
FourierCoeffs<Real> fourier_coeffs(Field&& field, Real r, int samples) {
  detail::require(r > 0, "fourier_coeffs: radius must be positive");
  detail::require(samples >= kMinAngularSamples, "fourier_coeffs: need at least 16 angular samples");
  std::vector<Real> values(static_cast<std::size_t>(samples));
  parallel_for(values.size(), [&](std::size_t k) { values[k] = field(std::polar(r, angle<Real>(static_cast<int>(k), samples))); });
  return fourier_coeffs(std::span<const Real>(values));
}

/// Mean of field over |z| = r (serial; meant to be called from parallel loops).
template <class Real, class Field>
Real circle_mean(Field&& field, Real r, int samples) {
  Real acc = 0;
  for (int k = 0; k < samples; ++k) acc += field(std::polar(r, angle<Real>(k, samples)));
  return acc / static_cast<Real>(samples);
}

}  // namespace toda
