#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dcov/distance.hpp"
#include "dcov/error.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace dcov;

namespace {

double max_abs(const Matrix& m) {
  double mx = 0.0;
  for (double v : m.data()) mx = std::max(mx, std::fabs(v));
  return mx;
}

}  // namespace

TEST(PairwiseDistances, SingleObservation) {
  const auto dm = pairwise_distances(Sample(Matrix{{1.0, 2.0, 3.0}}));
  ASSERT_EQ(dm.n(), 1u);
  EXPECT_EQ(dm(0, 0), 0.0);
}

TEST(PairwiseDistances, ScalarAbsoluteDifferences) {
  const auto dm = pairwise_distances(testutil::scalar_sample({0, 1, 3}));
  EXPECT_EQ(dm.values(), (Matrix{{0, 1, 3}, {1, 0, 2}, {3, 2, 0}}));
}

TEST(PairwiseDistances, ThreeFourFive) {
  const auto dm = pairwise_distances(Sample(Matrix{{0, 0}, {3, 4}}));
  EXPECT_EQ(dm.values(), (Matrix{{0, 5}, {5, 0}}));
}

TEST(PairwiseDistances, RejectsNonFinite) {
  Matrix m{{0, 1}, {2, NAN}};
  try {
    Sample s(m);
    FAIL() << "expected InvalidInput";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("row 1, column 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(Sample(Matrix{{INFINITY}}), InvalidInput);
  EXPECT_THROW(Sample(Matrix(0, 3)), InvalidInput);
}

TEST(PairwiseDistances, InvariantsOnRandomSamples) {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> nd(1, 40), dd(1, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = testutil::gaussian_sample(gen, nd(gen), dd(gen));
    const auto dm = pairwise_distances(s);
    const std::size_t n = dm.n();
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_EQ(dm(k, k), 0.0);
      for (std::size_t l = 0; l < n; ++l) {
        EXPECT_EQ(dm(k, l), dm(l, k));
        EXPECT_GE(dm(k, l), 0.0);
      }
    }
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    for (int t = 0; t < 30; ++t) {
      const auto i = idx(gen), j = idx(gen), k = idx(gen);
      EXPECT_LE(dm(i, k), dm(i, j) + dm(j, k) + 1e-12);
    }
  }
}

TEST(PairwiseDistances, TranslationAndScaling) {
  std::mt19937_64 gen(5);
  const auto s = testutil::gaussian_sample(gen, 25, 4);
  const auto base = pairwise_distances(s);
  Matrix shifted = s.data(), scaled = s.data();
  for (std::size_t k = 0; k < shifted.rows(); ++k)
    for (std::size_t j = 0; j < shifted.cols(); ++j) {
      shifted(k, j) += 10.0 * (j + 1);
      scaled(k, j) *= 3.5;
    }
  const auto ds = pairwise_distances(Sample(shifted));
  const auto dc = pairwise_distances(Sample(scaled));
  for (std::size_t k = 0; k < base.n(); ++k)
    for (std::size_t l = 0; l < base.n(); ++l) {
      EXPECT_NEAR(ds(k, l), base(k, l), 1e-12 * (1 + 10.0 * 4));
      EXPECT_NEAR(dc(k, l), 3.5 * base(k, l), 1e-12 * 3.5 * (1 + base(k, l)));
    }
}

TEST(PairwiseDistances, PermutationEquivariance) {
  std::mt19937_64 gen(6);
  const auto s = testutil::gaussian_sample(gen, 20, 3);
  std::vector<std::size_t> perm(20);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), gen);
  Matrix permuted(20, 3);
  for (std::size_t k = 0; k < 20; ++k)
    for (std::size_t j = 0; j < 3; ++j) permuted(k, j) = s.data()(perm[k], j);
  const auto a = pairwise_distances(s);
  const auto b = pairwise_distances(Sample(permuted));
  for (std::size_t k = 0; k < 20; ++k)
    for (std::size_t l = 0; l < 20; ++l) EXPECT_EQ(b(k, l), a(perm[k], perm[l]));
}

TEST(PairwiseDistances, ThreadCountDoesNotChangeBits) {
  std::mt19937_64 gen(8);
  const auto s = testutil::gaussian_sample(gen, 64, 5);
  const auto one = pairwise_distances(s, Threads{1});
  const auto four = pairwise_distances(s, Threads{4});
  EXPECT_EQ(one.values(), four.values());
}

TEST(DistanceMatrix, FromValuesValidates) {
  EXPECT_NO_THROW(DistanceMatrix::from_values(Matrix{{0, 2}, {2, 0}}));
  EXPECT_THROW(DistanceMatrix::from_values(Matrix{{1, 2}, {2, 0}}), InvalidInput);
  EXPECT_THROW(DistanceMatrix::from_values(Matrix{{0, 2}, {3, 0}}), InvalidInput);
  EXPECT_THROW(DistanceMatrix::from_values(Matrix{{0, -2}, {-2, 0}}), InvalidInput);
  EXPECT_THROW(DistanceMatrix::from_values(Matrix{{0, 1, 2}, {1, 0, 2}}), InvalidInput);
}

TEST(DoubleCenter, TwoPoints) {
  const double d = 2.5;
  const auto c = double_center(DistanceMatrix::from_values(Matrix{{0, d}, {d, 0}}));
  EXPECT_EQ(c.values(), (Matrix{{-d / 2, d / 2}, {d / 2, -d / 2}}));
}

TEST(DoubleCenter, ScalarZeroOneThree) {
  // Frozen from the long double oracle: A = [[-4/3, 0, 4/3], [0, -2/3, 2/3], [4/3, 2/3, -2]].
  const oracle::LMat ref = oracle::center(oracle::distances({{0}, {1}, {3}}));
  const double expected[3][3] = {{-4.0 / 3, 0, 4.0 / 3}, {0, -2.0 / 3, 2.0 / 3}, {4.0 / 3, 2.0 / 3, -2}};
  const auto c = centered_distances(testutil::scalar_sample({0, 1, 3}));
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      EXPECT_NEAR(static_cast<double>(ref[k][l]), expected[k][l], 1e-15);
      EXPECT_NEAR(c(k, l), expected[k][l], 1e-14);
    }
}

TEST(DoubleCenter, IdenticalPointsGiveZeroMatrix) {
  const auto c = centered_distances(Sample(Matrix(7, 3, 1.25)));
  for (double v : c.values().data()) EXPECT_EQ(v, 0.0);
}

TEST(DoubleCenter, RowAndColumnSumsVanish) {
  std::mt19937_64 gen(12);
  for (std::size_t n : {2u, 3u, 17u, 100u, 400u}) {
    const auto dm = pairwise_distances(testutil::gaussian_sample(gen, n, 6));
    const auto c = double_center(dm);
    const double tol = 1e-10 * static_cast<double>(n) * max_abs(dm.values());
    for (std::size_t k = 0; k < n; ++k) {
      double rs = 0.0, cs = 0.0;
      for (std::size_t l = 0; l < n; ++l) {
        rs += c(k, l);
        cs += c(l, k);
        EXPECT_EQ(c(k, l), c(l, k));
      }
      EXPECT_LE(std::fabs(rs), tol);
      EXPECT_LE(std::fabs(cs), tol);
    }
  }
}

TEST(DoubleCenter, Idempotent) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = centered_distances(testutil::gaussian_sample(gen, 3 + trial * 4, 1 + trial % 5));
    const Matrix again = double_center(c.values());
    for (std::size_t i = 0; i < again.data().size(); ++i)
      EXPECT_NEAR(again.data()[i], c.values().data()[i], 1e-12);
  }
}

TEST(DoubleCenter, MatchesOracle) {
  std::mt19937_64 gen(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rows = oracle::gaussian_rows(gen, 2 + trial * 2, 1 + trial % 7);
    const auto ref = oracle::center(oracle::distances(rows));
    const auto c = centered_distances(Sample(testutil::to_matrix(rows)));
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (std::size_t l = 0; l < rows.size(); ++l)
        EXPECT_NEAR(c(k, l), static_cast<double>(ref[k][l]), 1e-12);
  }
}
