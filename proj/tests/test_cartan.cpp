#include <gtest/gtest.h>

#include <random>

#include <toda/cartan.hpp>

using toda::CartanData;
using toda::Rational;

namespace {

// Gauss-Jordan inverse in exact rationals, independent of the closed form.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace

TEST(Cartan, MatrixEntries) {
  const CartanData cd(4);
  EXPECT_EQ(cd.a(1, 1), 2);
  EXPECT_EQ(cd.a(2, 1), -1);
  EXPECT_EQ(cd.a(1, 3), 0);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(cd.a(i, j), cd.a_int(i, j));
}

TEST(Cartan, InverseMatchesGaussJordan) {
  for (int n = 1; n <= 30; ++n) {
    const CartanData cd(n);
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) a[i - 1][j - 1] = cd.a(i, j);
    const auto inv = invert(a);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) ASSERT_EQ(cd.a_inv(i, j), inv[i - 1][j - 1]) << "n=" << n << " (" << i << "," << j << ")";
  }
}

TEST(Cartan, ProductIsIdentityAndSymmetric) {
  for (int n = 1; n <= 30; ++n) {
    const CartanData cd(n);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        Rational s = 0;
        for (int k = 1; k <= n; ++k) s += cd.a(i, k) * cd.a_inv(k, j);
        ASSERT_EQ(s, Rational(i == j ? 1 : 0));
        ASSERT_EQ(cd.a_inv(i, j), cd.a_inv(j, i));
      }
    }
  }
}

TEST(Cartan, RowSums) {
  for (int n = 1; n <= 30; ++n)
    for (int i = 1; i <= n; ++i) ASSERT_EQ(toda::row_sum_check(n, i), Rational(2 * i * (n + 1 - i)));
}

TEST(Cartan, LowerUpperConversion) {
  const CartanData c1(1);
  EXPECT_EQ(toda::to_lower(std::vector<double>{1.0}, c1), std::vector<double>{2.0});
  const CartanData c2(2);
  EXPECT_EQ(toda::to_lower(std::vector<double>{1.0, 0.0}, c2), (std::vector<double>{2.0, -1.0}));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int n = 1; n <= 8; ++n) {
    const CartanData cd(n);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> v(n);
      for (auto& x : v) x = u(rng);
      const auto back = toda::to_lower(toda::to_upper(v, cd), cd);
      for (int i = 0; i < n; ++i) EXPECT_NEAR(back[i], v[i], 1e-14);
    }
  }
}

TEST(Cartan, RejectsBadInput) {
  EXPECT_THROW(CartanData(0), toda::InvalidArgument);
  const CartanData cd(3);
  EXPECT_THROW(cd.a(0, 1), toda::InvalidArgument);
  EXPECT_THROW(cd.a_inv(1, 4), toda::InvalidArgument);
  EXPECT_THROW(toda::to_upper(std::vector<double>{1.0}, cd), toda::InvalidArgument);
  EXPECT_THROW(toda::row_sum_check(3, 4), toda::InvalidArgument);
}
