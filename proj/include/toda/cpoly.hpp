#pragma once

// Dense complex-coefficient polynomials in one variable.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace toda {

template <class Real>
class ComplexPoly {
 public:
  using Complex = std::complex<Real>;

  ComplexPoly() = default;

  /// coeffs[k] multiplies z^k. Trailing zeros are dropped.
  explicit ComplexPoly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

  static ComplexPoly monomial(int degree, Complex coeff = Complex(1)) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1, Complex(0));
    c.back() = coeff;
    return ComplexPoly(std::move(c));
  }

  /// Highest index with a nonzero coefficient; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  Complex coeff(int k) const {
    if (k < 0 || k > degree()) return Complex(0);
    return c_[static_cast<std::size_t>(k)];
  }
  const std::vector<Complex>& coeffs() const { return c_; }

  template <class Other>
  ComplexPoly<Other> cast() const {
    std::vector<std::complex<Other>> c;
    c.reserve(c_.size());
    for (const auto& v : c_) c.emplace_back(static_cast<Other>(v.real()), static_cast<Other>(v.imag()));
    return ComplexPoly<Other>(std::move(c));
  }

  friend ComplexPoly operator+(const ComplexPoly& p, const ComplexPoly& q) {
    std::vector<Complex> c(std::max(p.c_.size(), q.c_.size()), Complex(0));
    for (std::size_t k = 0; k < p.c_.size(); ++k) c[k] += p.c_[k];
    for (std::size_t k = 0; k < q.c_.size(); ++k) c[k] += q.c_[k];
    return ComplexPoly(std::move(c));
  }
  friend ComplexPoly operator*(Complex s, const ComplexPoly& p) {
    std::vector<Complex> c(p.c_);
    for (auto& v : c) v *= s;
    return ComplexPoly(std::move(c));
  }
  friend bool operator==(const ComplexPoly& p, const ComplexPoly& q) { return p.c_ == q.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Complex(0)) c_.pop_back();
  }
  std::vector<Complex> c_;
};

/// P_i(z) = z^i + sum_{j<i} c_{ij} z^j. Keys of `c` are (i, j); entries with a
/// different first index are ignored, missing entries are zero.
template <class Real>
ComplexPoly<Real> monic_from_coeffs(int i, const std::map<std::pair<int, int>, std::complex<Real>>& c) {
  detail::require(i >= 1, [&] { return "monic_from_coeffs: degree must be >= 1, got " + std::to_string(i); });
  std::vector<std::complex<Real>> coeffs(static_cast<std::size_t>(i) + 1, std::complex<Real>(0));
  coeffs.back() = std::complex<Real>(1);
  for (const auto& [key, value] : c) {
    if (key.first != i) continue;
    detail::require(key.second >= 0 && key.second < i, [&] { return "monic_from_coeffs: coefficient index j=" + std::to_string(key.second) +
                        " invalid for degree " + std::to_string(i); });
    coeffs[static_cast<std::size_t>(key.second)] = value;
  }
  return ComplexPoly<Real>(std::move(coeffs));
}

/// Exact order-th derivative; zero polynomial once order exceeds the degree.
template <class Real>
ComplexPoly<Real> derivative(const ComplexPoly<Real>& p, int order = 1) {
  detail::require(order >= 0, "derivative: order must be >= 0");
  if (order == 0) return p;
  const int d = p.degree();
  if (order > d) return {};
  std::vector<std::complex<Real>> c(static_cast<std::size_t>(d - order) + 1);
  for (int k = order; k <= d; ++k) {
    Real factor = 1;
    for (int t = 0; t < order; ++t) factor *= static_cast<Real>(k - t);
    c[static_cast<std::size_t>(k - order)] = factor * p.coeff(k);
  }
  return ComplexPoly<Real>(std::move(c));
}

/// Horner evaluation.
template <class Real>
std::complex<Real> eval(const ComplexPoly<Real>& p, std::complex<Real> z) {
  std::complex<Real> acc(0);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// Sum of c_k z^k with explicitly accumulated powers. Used as a second
/// evaluation route.
template <class Real>
std::complex<Real> eval_power_sum(const ComplexPoly<Real>& p, std::complex<Real> z) {
  std::complex<Real> acc(0);
  std::complex<Real> power(1);
  for (const auto& ck : p.coeffs()) {
    acc += ck * power;
    power *= z;
  }
  return acc;
}

/// Keeps the `count` highest powers of p (the "first terms" of p).
template <class Real>
ComplexPoly<Real> leading_terms(const ComplexPoly<Real>& p, int count) {
  detail::require(count >= 0, "leading_terms: count must be >= 0");
  std::vector<std::complex<Real>> c(p.coeffs());
  const int cut = p.degree() - count;
  for (int k = 0; k <= cut && k < static_cast<int>(c.size()); ++k) c[static_cast<std::size_t>(k)] = 0;
  return ComplexPoly<Real>(std::move(c));
}

/// q(z) = p(z + a), re-expanded in powers of z (Taylor at a).
template <class Real>
ComplexPoly<Real> shift(const ComplexPoly<Real>& p, std::complex<Real> a) {
  if (p.is_zero()) return p;
  std::vector<std::complex<Real>> c(static_cast<std::size_t>(p.degree()) + 1);
  ComplexPoly<Real> dk = p;
  Real factorial = 1;
  for (int k = 0; k <= p.degree(); ++k) {
    if (k > 0) factorial *= static_cast<Real>(k);
    c[static_cast<std::size_t>(k)] = eval(dk, a) / factorial;
    dk = derivative(dk, 1);
  }
  return ComplexPoly<Real>(std::move(c));
}

}  // namespace toda
