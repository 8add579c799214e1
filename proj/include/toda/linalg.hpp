#pragma once

// Overflow-safe determinants of small dense complex matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace toda {

/// det = phase * exp(log_abs). A singular matrix has log_abs = -inf.
template <class Real>
struct LogDet {
  Real log_abs = 0;
  std::complex<Real> phase{1, 0};
  bool singular() const { return std::isinf(log_abs) && log_abs < 0; }
};

/// Determinant of a k x k row-major matrix by Gaussian elimination with
/// partial pivoting. Each row is first divided by its largest modulus; the
/// row scales and pivot moduli are multiplied into a mantissa/exponent pair
/// (frexp) so that entries spanning many decades neither overflow nor cost a
/// logarithm each.
template <class Real>
LogDet<Real> log_det(std::vector<std::complex<Real>> m, std::size_t k) {
  using std::abs;
  LogDet<Real> out;
  Real mantissa = 1;
  long exponent = 0;
  auto absorb = [&](Real v) {
    int e = 0;
    mantissa = std::frexp(mantissa * v, &e);
    exponent += e;
  };
  auto at = [&](std::size_t r, std::size_t c) -> std::complex<Real>& { return m[r * k + c]; };
  for (std::size_t r = 0; r < k; ++r) {
    Real scale = 0;
    for (std::size_t c = 0; c < k; ++c) scale = std::max(scale, abs(at(r, c)));
    if (scale == Real(0)) {
      out.log_abs = -std::numeric_limits<Real>::infinity();
      return out;
    }
    const Real inv = 1 / scale;
    for (std::size_t c = 0; c < k; ++c) at(r, c) *= inv;
    absorb(scale);
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    Real best = abs(at(col, col));
    for (std::size_t r = col + 1; r < k; ++r) {
      const Real v = abs(at(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == Real(0)) {
      out.log_abs = -std::numeric_limits<Real>::infinity();
      return out;
    }
    if (piv != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(at(piv, c), at(col, c));
      out.phase = -out.phase;
    }
    const std::complex<Real> p = at(col, col);
    absorb(best);
    out.phase *= p / best;
    const std::complex<Real> inv_p = Real(1) / p;
    for (std::size_t r = col + 1; r < k; ++r) {
      const std::complex<Real> factor = at(r, col) * inv_p;
      if (factor == std::complex<Real>(0)) continue;
      for (std::size_t c = col + 1; c < k; ++c) at(r, c) -= factor * at(col, c);
    }
  }
  out.log_abs = std::log(mantissa) + static_cast<Real>(exponent) * std::log(Real(2));
  return out;
}

/// log(sum exp(x_i)); -inf for an empty or all -inf input.
template <class Real>
Real log_sum_exp(const std::vector<Real>& xs) {
  Real top = -std::numeric_limits<Real>::infinity();
  for (Real x : xs) top = std::max(top, x);
  if (std::isinf(top)) return top;
  Real acc = 0;
  for (Real x : xs) acc += std::exp(x - top);
  return top + std::log(acc);
}

}  // namespace toda
