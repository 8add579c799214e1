#pragma once

// Exact Cartan matrix algebra for SU(n+1) (type A_n).
//
// All public indices follow the 1-based convention of the Toda literature:
// entry(i, j) with 1 <= i, j <= n. Storage is 0-based row-major.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace toda {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class CartanData {
 public:
  explicit CartanData(int n) : n_(n) {
    detail::require(n >= 1, [&] { return "cartan: dimension n must be >= 1, got " + std::to_string(n); });
    const auto sz = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    a_.assign(sz, Rational(0));
    a_inv_.assign(sz, Rational(0));
    a_inv_real_.assign(sz, 0.0L);
    for (int i = 1; i <= n; ++i) {
      at(a_, i, i) = 2;
      if (i > 1) at(a_, i, i - 1) = -1;
      if (i < n) at(a_, i, i + 1) = -1;
      for (int j = 1; j <= n; ++j) {
        // a^{ij} = j(n+1-i)/(n+1) for i >= j, symmetric.
        const int hi = std::max(i, j);
        const int lo = std::min(i, j);
        at(a_inv_, i, j) = Rational(lo * (n + 1 - hi), n + 1);
        at(a_inv_real_, i, j) = static_cast<long double>(lo * (n + 1 - hi)) / static_cast<long double>(n + 1);
      }
    }
  }

  int n() const { return n_; }

  /// A entry, 1-based.
  const Rational& a(int i, int j) const { return cat(a_, i, j); }
  /// A^{-1} entry, 1-based.
  const Rational& a_inv(int i, int j) const { return cat(a_inv_, i, j); }
  long double a_inv_real(int i, int j) const { return cat(a_inv_real_, i, j); }

  /// Integer value of a_ij (entries of A are integral).
  int a_int(int i, int j) const {
    if (i == j) return 2;
    return (i - j == 1 || j - i == 1) ? -1 : 0;
  }

 private:
  template <class T>
  T& at(std::vector<T>& v, int i, int j) {
    check(i, j);
    return v[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j - 1)];
  }
  template <class T>
  const T& cat(const std::vector<T>& v, int i, int j) const {
    check(i, j);
    return v[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j - 1)];
  }
  void check(int i, int j) const {
    detail::require(i >= 1 && i <= n_ && j >= 1 && j <= n_, [&] { return "cartan: index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range for n=" +
                        std::to_string(n_); });
  }

  int n_;
  std::vector<Rational> a_;
  std::vector<Rational> a_inv_;
  std::vector<long double> a_inv_real_;
};

inline CartanData cartan_matrix(int n) { return CartanData(n); }

/// 4 * sum_j a^{ij}; equals 2i(n+1-i).
inline Rational row_sum_check(int n, int i) {
  detail::require(n >= 1, "row_sum_check: n must be >= 1");
  detail::require(i >= 1 && i <= n, [&] { return "row_sum_check: index i=" + std::to_string(i) + " out of range 1.." + std::to_string(n); });
  const CartanData cd(n);
  Rational sum = 0;
  for (int j = 1; j <= n; ++j) sum += cd.a_inv(i, j);
  return 4 * sum;
}

/// Lower-index vector U_i -> upper-index U^i = sum_j a^{ij} U_j.
template <class Real>
std::vector<Real> to_upper(std::span<const Real> u, const CartanData& cd) {
  const int n = cd.n();
  detail::require(u.size() == static_cast<std::size_t>(n), [&] { return "to_upper: length " + std::to_string(u.size()) + " != n=" + std::to_string(n); });
  std::vector<Real> out(u.size(), Real(0));
  for (int i = 1; i <= n; ++i) {
    Real acc = 0;
    for (int j = 1; j <= n; ++j) acc += static_cast<Real>(cd.a_inv_real(i, j)) * u[static_cast<std::size_t>(j - 1)];
    out[static_cast<std::size_t>(i - 1)] = acc;
  }
  return out;
}

/// Upper-index vector -> lower-index, U_i = sum_j a_ij U^j (tridiagonal).
template <class Real>
std::vector<Real> to_lower(std::span<const Real> v, const CartanData& cd) {
  const auto n = static_cast<std::size_t>(cd.n());
  detail::require(v.size() == n, [&] { return "to_lower: length " + std::to_string(v.size()) + " != n=" + std::to_string(n); });
  std::vector<Real> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Real acc = 2 * v[i];
    if (i > 0) acc -= v[i - 1];
    if (i + 1 < n) acc -= v[i + 1];
    out[i] = acc;
  }
  return out;
}

template <class Real>
std::vector<Real> to_upper(const std::vector<Real>& u, const CartanData& cd) {
  return to_upper(std::span<const Real>(u), cd);
}
template <class Real>
std::vector<Real> to_lower(const std::vector<Real>& v, const CartanData& cd) {
  return to_lower(std::span<const Real>(v), cd);
}

}  // namespace toda
