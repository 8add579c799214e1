#pragma once

// Exact determinants of the falling-factorial matrices behind the leading and
// subleading expansion coefficients of e^{-U^m}:
//
//   F(m) = (-1)^{m(m-1)/2} (m-1)! (m-2)! ... 1! 0!
//   G(m) = (-1)^{m+1} m! F(m-1)
//
// Row r, column c of the F layout holds prod_{j=c}^{c+r-1} (n - j); the G
// layout uses column index m instead of m-1 in its last column.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cartan.hpp"
#include "errors.hpp"

namespace toda {

class FallingFactorialMatrix {
 public:
  enum class Layout { F, G };

  FallingFactorialMatrix(int m, long n, Layout layout) : m_(m), n_(n), layout_(layout) {
    detail::require(m >= 1, "FallingFactorialMatrix: size must be >= 1");
    detail::require(layout == Layout::F || m >= 2, "FallingFactorialMatrix: G layout needs m >= 2");
  }

  int size() const { return m_; }
  long n() const { return n_; }
  Layout layout() const { return layout_; }

  /// 0-based entry. Empty product (row 0) is 1.
  BigInt entry(int r, int c) const {
    const int col_index = (layout_ == Layout::G && c == m_ - 1) ? m_ : c;
    BigInt acc = 1;
    for (int j = col_index; j < col_index + r; ++j) acc *= BigInt(n_ - j);
    return acc;
  }

  std::vector<std::vector<BigInt>> rows() const {
    std::vector<std::vector<BigInt>> out(static_cast<std::size_t>(m_), std::vector<BigInt>(static_cast<std::size_t>(m_)));
    for (int r = 0; r < m_; ++r)
      for (int c = 0; c < m_; ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = entry(r, c);
    return out;
  }

 private:
  int m_;
  long n_;
  Layout layout_;
};

/// Fraction-free (Bareiss) determinant; every intermediate is an exact integer.
inline BigInt bareiss_det(std::vector<std::vector<BigInt>> a) {
  const std::size_t k = a.size();
  if (k == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t col = 0; col + 1 < k; ++col) {
    if (a[col][col] == 0) {
      std::size_t swap_row = col + 1;
      while (swap_row < k && a[swap_row][col] == 0) ++swap_row;
      if (swap_row == k) return 0;
      std::swap(a[col], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t r = col + 1; r < k; ++r) {
      for (std::size_t c = col + 1; c < k; ++c) {
        a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) / prev;
      }
      a[r][col] = 0;
    }
    prev = a[col][col];
  }
  return sign * a[k - 1][k - 1];
}

inline BigInt factorial(int k) {
  BigInt acc = 1;
  for (int j = 2; j <= k; ++j) acc *= j;
  return acc;
}

/// (-1)^{m(m-1)/2} prod_{j=0}^{m-1} j!
inline BigInt F_closed_form(int m) {
  detail::require(m >= 1, "F_closed_form: m must be >= 1");
  BigInt acc = 1;
  for (int j = 0; j < m; ++j) acc *= factorial(j);
  return ((m * (m - 1) / 2) % 2) ? BigInt(-acc) : acc;
}

/// (-1)^{m+1} m! F(m-1)
inline BigInt G_closed_form(int m) {
  detail::require(m >= 2, "G_closed_form: m must be >= 2");
  const BigInt v = factorial(m) * F_closed_form(m - 1);
  return ((m + 1) % 2) ? BigInt(-v) : v;
}

inline BigInt F_det(int m, long n) {
  detail::require(m >= 1, "F_det: m must be >= 1");
  return bareiss_det(FallingFactorialMatrix(m, n, FallingFactorialMatrix::Layout::F).rows());
}

inline BigInt G_det(int m, long n) {
  detail::require(m >= 2, [&] { return "G_det: m must be >= 2, got " + std::to_string(m); });
  return bareiss_det(FallingFactorialMatrix(m, n, FallingFactorialMatrix::Layout::G).rows());
}

struct IdentityCase {
  char kind = 'F';  // 'F' or 'G'
  int m = 1;
  long n = 0;
  BigInt det;
  BigInt expected;
  bool pass = false;
};

struct IdentitySweepReport {
  std::vector<IdentityCase> cases;
  /// Per m: number of distinct n values swept and the degree bound
  /// m(m-1)/2 of the determinant as a polynomial in n. A sweep with more
  /// distinct values than the bound proves n-independence.
  struct Coverage {
    int m = 1;
    int distinct_n = 0;
    int degree_bound = 0;
    bool proves_n_independence = false;
  };
  std::vector<Coverage> coverage;
  bool all_pass = true;
  /// Index into `cases` of the first mismatch.
  std::optional<std::size_t> first_failure;
};

/// Checks F_det and G_det against their closed forms for every 1 <= m <=
/// m_max and every n in n_values(m) (G from m = 2).
inline IdentitySweepReport verify_identity_sweep(int m_max, const std::function<std::vector<long>(int)>& n_values) {
  detail::require(m_max >= 1 && m_max <= 12, "verify_identity_sweep: m_max must be in 1..12");
  IdentitySweepReport rep;
  for (int m = 1; m <= m_max; ++m) {
    const std::vector<long> n_list = n_values(m);
    for (long n : n_list) {
      IdentityCase f{'F', m, n, F_det(m, n), F_closed_form(m), false};
      f.pass = f.det == f.expected;
      rep.cases.push_back(std::move(f));
      if (m >= 2) {
        IdentityCase g{'G', m, n, G_det(m, n), G_closed_form(m), false};
        g.pass = g.det == g.expected;
        rep.cases.push_back(std::move(g));
      }
    }
    std::vector<long> distinct(n_list);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const int bound = m * (m - 1) / 2;
    rep.coverage.push_back({m, static_cast<int>(distinct.size()), bound, static_cast<int>(distinct.size()) > bound});
  }
  for (std::size_t i = 0; i < rep.cases.size(); ++i) {
    if (!rep.cases[i].pass) {
      rep.all_pass = false;
      rep.first_failure = i;
      break;
    }
  }
  return rep;
}

/// Same n list for every m.
inline IdentitySweepReport verify_identity_sweep(int m_max, const std::vector<long>& n_list) {
  return verify_identity_sweep(m_max, [&](int) { return n_list; });
}

/// n in {m + lo, ..., m + hi} for each m.
inline IdentitySweepReport verify_identity_sweep_relative(int m_max, long lo, long hi) {
  return verify_identity_sweep(m_max, [&](int m) {
    std::vector<long> out;
    for (long n = m + lo; n <= m + hi; ++n) out.push_back(n);
    return out;
  });
}

}  // namespace toda
