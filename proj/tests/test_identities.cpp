#include <gtest/gtest.h>

#include <chrono>
#include <numeric>

#include <toda/identities.hpp>

using namespace toda;

namespace {

// Permutation expansion over exact integers.
BigInt leibniz(const std::vector<std::vector<BigInt>>& m) {
  const int k = static_cast<int>(m.size());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    int inversions = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) inversions += perm[a] > perm[b];
    BigInt term = inversions % 2 ? -1 : 1;
    for (int r = 0; r < k; ++r) term *= m[r][perm[r]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST(FallingFactorial, Entries) {
  const FallingFactorialMatrix f(4, 9, FallingFactorialMatrix::Layout::F);
  for (int c = 0; c < 4; ++c) {
    EXPECT_EQ(f.entry(0, c), 1);
    EXPECT_EQ(f.entry(1, c), 9 - c);
  }
  EXPECT_EQ(f.entry(3, 1), BigInt(8 * 7 * 6));
  const FallingFactorialMatrix g(3, 9, FallingFactorialMatrix::Layout::G);
  EXPECT_EQ(g.entry(1, 2), 9 - 3);
  EXPECT_THROW(FallingFactorialMatrix(1, 5, FallingFactorialMatrix::Layout::G), InvalidArgument);
}

TEST(Bareiss, MatchesPermutationExpansion) {
  for (int m = 1; m <= 7; ++m) {
    for (long n : {-3L, 0L, 2L, 5L, 11L}) {
      for (auto layout : {FallingFactorialMatrix::Layout::F, FallingFactorialMatrix::Layout::G}) {
        if (layout == FallingFactorialMatrix::Layout::G && m < 2) continue;
        const auto rows = FallingFactorialMatrix(m, n, layout).rows();
        ASSERT_EQ(bareiss_det(rows), leibniz(rows)) << "m=" << m << " n=" << n;
      }
    }
  }
  // Needs a row swap: leading entry zero.
  std::vector<std::vector<BigInt>> swap{{0, 1, 2}, {3, 4, 5}, {6, 7, 9}};
  EXPECT_EQ(bareiss_det(swap), leibniz(swap));
  std::vector<std::vector<BigInt>> singular{{1, 2}, {2, 4}};
  EXPECT_EQ(bareiss_det(singular), 0);
}

TEST(Identities, SmallValues) {
  for (long n : {0L, 3L, 17L}) {
    EXPECT_EQ(F_det(1, n), 1);
    EXPECT_EQ(F_det(2, n), -1);
    EXPECT_EQ(G_det(2, n), -2);
    EXPECT_EQ(G_det(3, n), -6);
  }
  for (long n = 4; n <= 30; ++n) EXPECT_EQ(F_det(4, n), 12);
  EXPECT_EQ(F_closed_form(4), 12);
  EXPECT_EQ(G_closed_form(3), -6);
  EXPECT_THROW(G_det(1, 5), InvalidArgument);
  EXPECT_THROW(F_det(0, 5), InvalidArgument);
}

TEST(Identities, SweepPassesAndIsFast) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = verify_identity_sweep_relative(10, 0, 40);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_TRUE(rep.all_pass);
  EXPECT_FALSE(rep.first_failure.has_value());
  EXPECT_LT(secs, 5.0);
  for (const auto& cov : rep.coverage) {
    EXPECT_EQ(cov.distinct_n, 41);
    EXPECT_EQ(cov.degree_bound, cov.m * (cov.m - 1) / 2);
    EXPECT_EQ(cov.proves_n_independence, 41 > cov.degree_bound);
  }
}

TEST(Identities, SmallNWithZeroEntries) {
  // n < 2m - 2 puts zeros in the lower rows; the values do not change.
  const auto rep = verify_identity_sweep_relative(8, -8, 0);
  EXPECT_TRUE(rep.all_pass);
}

TEST(Identities, CoverageWithRepeatedN) {
  const auto rep = verify_identity_sweep(3, std::vector<long>{5, 5});
  EXPECT_TRUE(rep.all_pass);
  EXPECT_EQ(rep.coverage[2].distinct_n, 1);
  EXPECT_FALSE(rep.coverage[2].proves_n_independence);
  EXPECT_TRUE(rep.coverage[0].proves_n_independence);
}
