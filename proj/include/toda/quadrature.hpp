#pragma once

// Radial Gauss-Legendre panels for polar integrals over discs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "errors.hpp"
#include "parallel.hpp"

namespace toda {

inline constexpr int kGaussPoints = 10;

/// Nodes and weights of the 10-point rule on [a, b].
template <class Real>
void gauss_panel(Real a, Real b, std::vector<Real>& nodes, std::vector<Real>& weights) {
  using Rule = boost::math::quadrature::gauss<Real, kGaussPoints>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const Real mid = (a + b) / 2;
  const Real half = (b - a) / 2;
  nodes.clear();
  weights.clear();
  for (std::size_t k = 0; k < x.size(); ++k) {
    nodes.push_back(mid - half * x[k]);
    weights.push_back(half * w[k]);
    if (x[k] != Real(0)) {
      nodes.push_back(mid + half * x[k]);
      weights.push_back(half * w[k]);
    }
  }
}

/// Panel edges 0 = e_0 < ... covering [0, max(checkpoints)]: four equal panels
/// on [0, 1], then geometric panels (`per_octave` per doubling) between
/// consecutive checkpoints. Every checkpoint is an edge.
inline std::vector<double> radial_panel_edges(std::vector<double> checkpoints, int per_octave = 4) {
  detail::require(!checkpoints.empty(), "radial_panel_edges: need at least one radius");
  detail::require(per_octave >= 1, "radial_panel_edges: per_octave must be >= 1");
  std::sort(checkpoints.begin(), checkpoints.end());
  detail::require(checkpoints.front() > 0, "radial_panel_edges: radii must be positive");
  std::vector<double> edges{0.0};
  const double unit = std::min(1.0, checkpoints.front());
  for (int k = 1; k <= 4; ++k) edges.push_back(unit * k / 4);
  double lo = unit;
  for (double hi : checkpoints) {
    if (hi <= lo) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil(per_octave * std::log2(hi / lo) - 1e-9)));
    const double ratio = std::pow(hi / lo, 1.0 / panels);
    for (int k = 1; k < panels; ++k) edges.push_back(lo * std::pow(ratio, k));
    edges.push_back(hi);
    lo = hi;
  }
  return edges;
}

/// Cumulative integrals int_{B_{e_k}} g = int_0^{e_k} 2 pi r mean(r) dr at
/// every edge, where mean(r) is the angular mean of g on |z| = r. Nodes are
/// evaluated in parallel and summed in a fixed order.
template <class Real, class AngularMean>
std::vector<Real> cumulative_disc_integrals(const std::vector<double>& edges, AngularMean&& mean) {
  std::vector<Real> nodes, weights, panel_nodes, panel_weights;
  std::vector<std::size_t> panel_end;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    gauss_panel<Real>(static_cast<Real>(edges[k]), static_cast<Real>(edges[k + 1]), panel_nodes, panel_weights);
    nodes.insert(nodes.end(), panel_nodes.begin(), panel_nodes.end());
    weights.insert(weights.end(), panel_weights.begin(), panel_weights.end());
    panel_end.push_back(nodes.size());
  }
  std::vector<Real> values(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t q) { values[q] = mean(nodes[q]); });
  std::vector<Real> out{Real(0)};
  Real acc = 0;
  std::size_t q = 0;
  for (std::size_t end : panel_end) {
    for (; q < end; ++q) acc += weights[q] * 2 * std::numbers::pi_v<Real> * nodes[q] * values[q];
    out.push_back(acc);
  }
  return out;
}

}  // namespace toda
