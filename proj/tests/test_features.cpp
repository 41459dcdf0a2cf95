#include <cmath>
#include <random>

#include "fwlbp/features.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace fwlbp {
namespace {

using testing::CodeOf;

Eigen::MatrixXd RandomMatrix(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd x(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) x(i, j) = g(rng) * (1.0 + j);  // distinct spreads
  return x;
}

Eigen::MatrixXd Covariance(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd c = x.rowwise() - x.colwise().mean();
  return c.transpose() * c / static_cast<double>(x.rows() - 1);
}

TEST(SqrtTransformTest, Values) {
  const std::vector<double> x{0, 1, 4};
  EXPECT_EQ(SqrtTransform(x), (std::vector<double>{0, 1, 2}));
  EXPECT_EQ(SqrtTransform(std::vector<double>(5, 0.0)), std::vector<double>(5, 0.0));
}

TEST(SqrtTransformTest, L1NormalizedGivesUnitL2) {
  std::vector<double> x(768);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s = 0.0;
  for (double& v : x) s += (v = u(rng));
  for (double& v : x) v /= s;
  double n2 = 0.0;
  for (double v : SqrtTransform(x)) n2 += v * v;
  EXPECT_NEAR(std::sqrt(n2), 1.0, 1e-12);
}

TEST(SqrtTransformTest, RejectsNegative) {
  const std::vector<double> x{1.0, -1e-300};
  EXPECT_EQ(CodeOf([&] { SqrtTransform(x); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([] { SqrtTransform(Eigen::MatrixXd::Constant(2, 2, -1.0)); }),
            ErrorCode::kDomain);
}

TEST(SqrtTransformTest, SignedSqrt) {
  Eigen::MatrixXd x(1, 3);
  x << -4, 0, 9;
  Eigen::MatrixXd want(1, 3);
  want << -2, 0, 3;
  EXPECT_TRUE(SignedSqrtTransform(x).isApprox(want));
}

TEST(PcaTest, LineYEqualsTwoX) {
  Eigen::MatrixXd x(5, 2);
  for (int i = 0; i < 5; ++i) x.row(i) << i - 1.5, 2.0 * (i - 1.5);
  const PcaModel p = PcaFit(x, 1);
  EXPECT_NEAR(p.components(0, 0), 1.0 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(p.components(1, 0), 2.0 / std::sqrt(5.0), 1e-12);
  // No spread across the line.
  const PcaModel full = PcaFit(x, 2);
  EXPECT_NEAR(full.eigenvalues(1), 0.0, 1e-10);
}

TEST(PcaTest, IdenticalSamples) {
  Eigen::MatrixXd x(4, 3);
  for (int i = 0; i < 4; ++i) x.row(i) << 1, 2, 3;
  const PcaModel p = PcaFit(x, 2);
  for (Eigen::Index i = 0; i < p.eigenvalues.size(); ++i) EXPECT_NEAR(p.eigenvalues(i), 0.0, 1e-12);
  EXPECT_NEAR(PcaTransform(p, x.row(2).transpose()).norm(), 0.0, 1e-12);
}

TEST(PcaTest, FullRankReconstruction) {
  const Eigen::MatrixXd x = RandomMatrix(20, 10, 2);
  const PcaModel p = PcaFit(x, 10);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Eigen::VectorXd row = x.row(i).transpose();
    EXPECT_LT((PcaInverseTransform(p, PcaTransform(p, row)) - row).norm(), 1e-8);
  }
}

TEST(PcaTest, MeanMapsToZero) {
  const PcaModel p = PcaFit(RandomMatrix(12, 6, 3), 4);
  EXPECT_LT(PcaTransform(p, p.mean).norm(), 1e-12);
}

TEST(PcaTest, FullRankIsIsometry) {
  const Eigen::MatrixXd x = RandomMatrix(20, 10, 4);
  const PcaModel p = PcaFit(x, 10);
  const Eigen::MatrixXd y = PcaTransformRows(p, x);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) {
      EXPECT_NEAR((y.row(i) - y.row(j)).norm(), (x.row(i) - x.row(j)).norm(), 1e-8);
    }
  }
}

TEST(PcaTest, Errors) {
  const Eigen::MatrixXd x = RandomMatrix(5, 4, 5);
  EXPECT_EQ(CodeOf([&] { PcaFit(x, 0); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([&] { PcaFit(x, 5); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { PcaFit(Eigen::MatrixXd::Ones(1, 3), 1); }),
            ErrorCode::kInsufficientSamples);
  const PcaModel p = PcaFit(x, 2);
  EXPECT_EQ(CodeOf([&] { PcaTransform(p, Eigen::VectorXd::Zero(3)); }),
            ErrorCode::kShapeMismatch);
  EXPECT_EQ(CodeOf([&] { PcaInverseTransform(p, Eigen::VectorXd::Zero(3)); }),
            ErrorCode::kShapeMismatch);
}

TEST(PcaTest, SignConvention) {
  const PcaModel p = PcaFit(RandomMatrix(15, 8, 6), 5);
  for (Eigen::Index c = 0; c < p.components.cols(); ++c) {
    Eigen::Index arg;
    p.components.col(c).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(p.components(arg, c), 0.0);
  }
  Eigen::MatrixXd cols(2, 2);
  cols << 0.6, -0.1, -0.8, 0.3;
  CanonicalizeSigns(cols);
  EXPECT_GT(cols(1, 0), 0.0);
  EXPECT_GT(cols(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(cols(0, 0), -0.6);
}

class PcaProperty : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(PcaProperty, Invariants) {
  const auto [m, n] = GetParam();
  const Eigen::MatrixXd x = RandomMatrix(m, n, 7 + m);
  const int k = std::min(m - 1, n);
  const PcaModel p = PcaFit(x, k);
  const Eigen::MatrixXd cov = Covariance(x);

  EXPECT_LT((p.components.transpose() * p.components -
             Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-8);
  for (Eigen::Index i = 0; i < k; ++i) {
    EXPECT_GE(p.eigenvalues(i), -1e-10);
    if (i + 1 < k) {
      EXPECT_GE(p.eigenvalues(i), p.eigenvalues(i + 1));
    }
    EXPECT_LT((cov * p.components.col(i) - p.eigenvalues(i) * p.components.col(i)).norm(), 1e-8)
        << "pair " << i;
  }

  // Empirical variance of each transformed coordinate is non-increasing.
  const Eigen::MatrixXd y = PcaTransformRows(p, x);
  const Eigen::MatrixXd yc = y.rowwise() - y.colwise().mean();
  const Eigen::VectorXd var = yc.colwise().squaredNorm().transpose() / (m - 1);
  for (Eigen::Index i = 0; i + 1 < k; ++i) EXPECT_GE(var(i) + 1e-10, var(i + 1));

  if (k == n) {
    EXPECT_NEAR(p.eigenvalues.sum(), cov.trace(), 1e-8);
  }
}

// (30, 8) takes the covariance path, (8, 30) the Gram path.
INSTANTIATE_TEST_SUITE_P(Shapes, PcaProperty,
                         ::testing::Values(std::pair{30, 8}, std::pair{8, 30},
                                           std::pair{11, 10}, std::pair{10, 10}));

TEST(PcaTest, GramAndCovariancePathsAgree) {
  // Wide data: Gram path. The same subspace from an explicit covariance
  // eigendecomposition must match up to sign.
  const Eigen::MatrixXd x = RandomMatrix(9, 25, 8);
  const PcaModel p = PcaFit(x, 8);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Covariance(x));
  const Eigen::Index n = x.cols();
  for (Eigen::Index i = 0; i < 8; ++i) {
    const Eigen::VectorXd ref = es.eigenvectors().col(n - 1 - i);
    EXPECT_NEAR(p.eigenvalues(i), es.eigenvalues()(n - 1 - i), 1e-8);
    EXPECT_NEAR(std::abs(ref.dot(p.components.col(i))), 1.0, 1e-8);
  }
}

}  // namespace
}  // namespace fwlbp
