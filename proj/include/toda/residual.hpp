#pragma once

// Finite-difference checks that the constructed family solves the Toda system
// and that parameter derivatives of the family solve its linearization
//
//   Delta phi_i + sum_j a_ij e^{U_j} phi_j = 0.
//
// Laplacians use the 5-point stencil; convergence orders come from an (h, h/2)
// pair of nested grids.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "solution.hpp"

namespace toda {

struct GridSpec {
  std::complex<double> center{0, 0};
  double half_width = 1;
  int points_per_side = 3;

  GridSpec() = default;
  GridSpec(std::complex<double> c, double w, int points) : center(c), half_width(w), points_per_side(points) { validate(); }

  /// Grid on [c - w, c + w]^2 whose spacing is as close to h as possible
  /// with an odd point count.
  static GridSpec with_spacing(std::complex<double> c, double w, double h) {
    detail::require(h > 0 && w > 0, "GridSpec: spacing and half width must be positive");
    int intervals = static_cast<int>(std::lround(2 * w / h));
    if (intervals % 2) ++intervals;
    return GridSpec(c, w, std::max(intervals, 2) + 1);
  }

  double h() const { return 2 * half_width / (points_per_side - 1); }

  /// Same square, half the spacing; every coarse point is a fine point.
  GridSpec refined() const { return GridSpec(center, half_width, 2 * points_per_side - 1); }

  std::complex<double> point(int ix, int iy) const {
    return {center.real() - half_width + ix * h(), center.imag() - half_width + iy * h()};
  }

  void validate() const {
    detail::require(half_width > 0 && std::isfinite(half_width), "GridSpec: half_width must be positive");
    detail::require(points_per_side >= 3 && points_per_side % 2 == 1, "GridSpec: points_per_side must be odd and >= 3");
  }
};

struct ResidualReport {
  double h = 0;
  /// Max |residual| over interior points, per component, at spacing h.
  std::vector<double> max_residual;
  /// Same at spacing h/2 (empty when no refinement was run).
  std::vector<double> max_residual_fine;
  /// log2(max_residual / max_residual_fine) per component.
  std::vector<double> order;

  double overall_max() const { return max_of(max_residual); }
  double overall_max_fine() const { return max_of(max_residual_fine); }
  /// Ratio of the worst components at h and h/2.
  double ratio() const { return overall_max() / overall_max_fine(); }
  double order_estimate() const { return std::log2(ratio()); }

 private:
  static double max_of(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
};

namespace detail {

/// Walks the interior of `g` with a 3-row rolling buffer. row_fn(iy, out)
/// fills `channels` x N samples (channel-major) for row iy; visit(ix, iy,
/// center, laplacian) receives per-channel values and 5-point Laplacians.
template <class RowFn, class Visit>
void stencil_scan(const GridSpec& g, int channels, RowFn&& row_fn, Visit&& visit) {
  const int N = g.points_per_side;
  const auto width = static_cast<std::size_t>(N);
  const auto row_size = static_cast<std::size_t>(channels) * width;
  std::vector<double> rows[3] = {std::vector<double>(row_size), std::vector<double>(row_size),
                                 std::vector<double>(row_size)};
  row_fn(0, std::span<double>(rows[0]));
  row_fn(1, std::span<double>(rows[1]));
  const double inv_h2 = 1.0 / (g.h() * g.h());
  std::vector<double> center(static_cast<std::size_t>(channels));
  std::vector<double> lap(static_cast<std::size_t>(channels));
  for (int iy = 1; iy + 1 < N; ++iy) {
    auto& below = rows[(iy - 1) % 3];
    auto& mid = rows[iy % 3];
    auto& above = rows[(iy + 1) % 3];
    row_fn(iy + 1, std::span<double>(above));
    for (int ix = 1; ix + 1 < N; ++ix) {
      for (int c = 0; c < channels; ++c) {
        const std::size_t base = static_cast<std::size_t>(c) * width;
        const auto i = static_cast<std::size_t>(ix);
        const double v = mid[base + i];
        center[static_cast<std::size_t>(c)] = v;
        lap[static_cast<std::size_t>(c)] =
            (mid[base + i - 1] + mid[base + i + 1] + below[base + i] + above[base + i] - 4 * v) * inv_h2;
      }
      visit(ix, iy, std::span<const double>(center), std::span<const double>(lap));
    }
  }
}

}  // namespace detail

/// Pointwise residuals of both forms of the system at interior grid points:
/// lower[i] = Delta_h U_i + sum_j a_ij e^{U_j}, upper[i] = Delta_h U^i + e^{U_i}.
struct PointResidual {
  std::complex<double> z;
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Evaluates the system on every interior point of g and hands the pointwise
/// residuals to `visit`. Real selects the evaluation precision.
template <class Real, class Visit>
void scan_pde_residual(const BasicSolutionParams<Real>& sp, const GridSpec& g, Visit&& visit) {
  g.validate();
  const int n = sp.n();
  const auto width = static_cast<std::size_t>(g.points_per_side);
  // channels: U_1..U_n, U^1..U^n, e^{U_1}..e^{U_n}
  auto row_fn = [&](int iy, std::span<double> out) {
    parallel_for(width, [&](std::size_t ix) {
      const auto z = g.point(static_cast<int>(ix), iy);
      const auto e = eval_all(sp, std::complex<Real>(static_cast<Real>(z.real()), static_cast<Real>(z.imag())));
      for (int i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(i);
        out[c * width + ix] = static_cast<double>(e.u_lower[c]);
        out[(c + static_cast<std::size_t>(n)) * width + ix] = static_cast<double>(e.u_upper[c]);
        out[(c + 2 * static_cast<std::size_t>(n)) * width + ix] = static_cast<double>(e.exp_lower[c]);
      }
    });
  };
  PointResidual pr;
  pr.lower.resize(static_cast<std::size_t>(n));
  pr.upper.resize(static_cast<std::size_t>(n));
  detail::stencil_scan(g, 3 * n, row_fn, [&](int ix, int iy, std::span<const double> val, std::span<const double> lap) {
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < un; ++i) {
      double coupling = 2 * val[2 * un + i];
      if (i > 0) coupling -= val[2 * un + i - 1];
      if (i + 1 < un) coupling -= val[2 * un + i + 1];
      pr.lower[i] = lap[i] + coupling;
      pr.upper[i] = lap[un + i] + val[2 * un + i];
    }
    pr.z = g.point(ix, iy);
    visit(static_cast<const PointResidual&>(pr));
  });
}

/// Max residual per component of Delta U_i + sum_j a_ij e^{U_j} on one grid.
template <class Real>
std::vector<double> pde_residual_max(const BasicSolutionParams<Real>& sp, const GridSpec& g) {
  std::vector<double> worst(static_cast<std::size_t>(sp.n()), 0.0);
  scan_pde_residual(sp, g, [&](const PointResidual& pr) {
    for (std::size_t i = 0; i < worst.size(); ++i) worst[i] = std::max(worst[i], std::abs(pr.lower[i]));
  });
  return worst;
}

namespace detail {
inline ResidualReport make_report(double h, std::vector<double> coarse, std::vector<double> fine) {
  ResidualReport r;
  r.h = h;
  for (std::size_t i = 0; i < coarse.size(); ++i) r.order.push_back(std::log2(coarse[i] / fine[i]));
  r.max_residual = std::move(coarse);
  r.max_residual_fine = std::move(fine);
  return r;
}
}  // namespace detail

/// Residual at spacing h and h/2 with the observed convergence order.
template <class Real>
ResidualReport pde_residual(const BasicSolutionParams<Real>& sp, const GridSpec& g) {
  return detail::make_report(g.h(), pde_residual_max(sp, g), pde_residual_max(sp, g.refined()));
}

/// phi(z) = -(U(params + step e) - U(params - step e)) / (2 step) along one
/// parameter direction e, in both index conventions.
template <class Real>
class DerivativeField {
 public:
  struct Value {
    std::vector<Real> lower;  // -dU_i
    std::vector<Real> upper;  // -dU^i
  };

  DerivativeField(const BasicSolutionParams<Real>& sp, ParamDirection dir, Real step)
      : dir_(dir), step_(step), plus_(checked_perturb(sp, dir, step)), minus_(checked_perturb(sp, dir, -step)) {}

  Value operator()(std::complex<Real> z) const {
    const auto ep = eval_all(plus_, z);
    const auto em = eval_all(minus_, z);
    Value v;
    const Real inv = -1 / (2 * step_);
    for (std::size_t i = 0; i < ep.u_lower.size(); ++i) {
      v.lower.push_back((ep.u_lower[i] - em.u_lower[i]) * inv);
      v.upper.push_back((ep.u_upper[i] - em.u_upper[i]) * inv);
    }
    return v;
  }

  /// -dU^m only.
  Real upper(int m, std::complex<Real> z) const {
    return -(u_upper_at(plus_, m, z) - u_upper_at(minus_, m, z)) / (2 * step_);
  }

  const ParamDirection& direction() const { return dir_; }
  Real step() const { return step_; }

 private:
  static BasicSolutionParams<Real> checked_perturb(const BasicSolutionParams<Real>& sp, const ParamDirection& dir,
                                                   Real amount) {
    detail::require(std::isfinite(static_cast<double>(amount)) && amount != Real(0),
                    "param_derivative_field: step must be finite and > 0");
    return perturb(sp, dir, amount);
  }

  ParamDirection dir_;
  Real step_;
  BasicSolutionParams<Real> plus_;
  BasicSolutionParams<Real> minus_;
};

template <class Real>
DerivativeField<Real> param_derivative_field(const BasicSolutionParams<Real>& sp, ParamDirection dir, Real step) {
  detail::require(step > 0, "param_derivative_field: step must be > 0");
  return DerivativeField<Real>(sp, dir, step);
}

/// Max |Delta_h phi_i + sum_j a_ij e^{U_j} phi_j| per component on one grid.
template <class Real>
std::vector<double> linearized_residual_max(const BasicSolutionParams<Real>& sp, const DerivativeField<Real>& field,
                                            const GridSpec& g) {
  g.validate();
  const int n = sp.n();
  const auto un = static_cast<std::size_t>(n);
  const auto width = static_cast<std::size_t>(g.points_per_side);
  // channels: phi_1..phi_n, e^{U_1}..e^{U_n}
  auto row_fn = [&](int iy, std::span<double> out) {
    parallel_for(width, [&](std::size_t ix) {
      const auto zd = g.point(static_cast<int>(ix), iy);
      const std::complex<Real> z(static_cast<Real>(zd.real()), static_cast<Real>(zd.imag()));
      const auto phi = field(z);
      const auto e = eval_all(sp, z);
      for (std::size_t i = 0; i < un; ++i) {
        out[i * width + ix] = static_cast<double>(phi.lower[i]);
        out[(i + un) * width + ix] = static_cast<double>(e.exp_lower[i]);
      }
    });
  };
  std::vector<double> worst(un, 0.0);
  detail::stencil_scan(g, 2 * n, row_fn, [&](int, int, std::span<const double> val, std::span<const double> lap) {
    for (std::size_t i = 0; i < un; ++i) {
      double coupling = 2 * val[un + i] * val[i];
      if (i > 0) coupling -= val[un + i - 1] * val[i - 1];
      if (i + 1 < un) coupling -= val[un + i + 1] * val[i + 1];
      worst[i] = std::max(worst[i], std::abs(lap[i] + coupling));
    }
  });
  return worst;
}

/// Linearized residual of the derivative field along `dir` at h and h/2.
template <class Real>
ResidualReport linearized_residual(const BasicSolutionParams<Real>& sp, ParamDirection dir, Real step,
                                   const GridSpec& g) {
  const auto field = param_derivative_field(sp, dir, step);
  return detail::make_report(g.h(), linearized_residual_max(sp, field, g),
                             linearized_residual_max(sp, field, g.refined()));
}

}  // namespace toda
