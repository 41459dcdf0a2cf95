#include "fwlbp/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fwlbp/error.hpp"

namespace fwlbp {

std::vector<double> SqrtTransform(std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Require(x[i] >= 0.0, ErrorCode::kDomain,
            "square-root preprocessing needs non-negative features");
    out[i] = std::sqrt(x[i]);
  }
  return out;
}

Eigen::MatrixXd SqrtTransform(const Eigen::MatrixXd& x) {
  Require((x.array() >= 0.0).all(), ErrorCode::kDomain,
          "square-root preprocessing needs non-negative features");
  return x.array().sqrt().matrix();
}

Eigen::MatrixXd SignedSqrtTransform(const Eigen::MatrixXd& x) {
  return x.unaryExpr([](double v) { return std::copysign(std::sqrt(std::abs(v)), v); });
}

void CanonicalizeSigns(Eigen::MatrixXd& columns) {
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Eigen::Index best = 0;
    columns.col(j).cwiseAbs().maxCoeff(&best);
    if (columns(best, j) < 0.0) columns.col(j) *= -1.0;
  }
}

PcaModel PcaFit(const Eigen::MatrixXd& train, Eigen::Index k) {
  const Eigen::Index m = train.rows();
  const Eigen::Index n = train.cols();
  Require(m >= 2, ErrorCode::kInsufficientSamples, "PCA needs at least 2 samples");
  Require(k >= 1 && k <= std::min(m - 1, n), ErrorCode::kInvalidParameter,
          "PCA k must lie in [1, min(m-1, n)]");
  Require(train.allFinite(), ErrorCode::kDomain, "PCA input is not finite");

  PcaModel model;
  model.mean = train.colwise().mean().transpose();
  const Eigen::MatrixXd centered = train.rowwise() - model.mean.transpose();
  const double denom = static_cast<double>(m - 1);

  Eigen::VectorXd evals;
  Eigen::MatrixXd evecs;
  if (n <= m) {
    const Eigen::MatrixXd cov = (centered.transpose() * centered) / denom;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    Require(es.info() == Eigen::Success, ErrorCode::kDomain,
            "covariance eigendecomposition failed");
    evals = es.eigenvalues().reverse();
    evecs = es.eigenvectors().rowwise().reverse();
    evecs = evecs.leftCols(k).eval();
  } else {
    // Gram trick: X X^T v = lambda v  =>  X^T v / ||X^T v|| is an eigenvector
    // of X^T X with the same eigenvalue.
    const Eigen::MatrixXd gram = (centered * centered.transpose()) / denom;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    Require(es.info() == Eigen::Success, ErrorCode::kDomain,
            "Gram eigendecomposition failed");
    evals = es.eigenvalues().reverse();
    const Eigen::MatrixXd v = es.eigenvectors().rowwise().reverse();
    evecs.resize(n, k);
    const double scale = evals.size() ? std::max(evals(0), 0.0) : 0.0;
    Eigen::Index filled = 0;
    for (Eigen::Index j = 0; j < k; ++j) {
      Eigen::VectorXd u = centered.transpose() * v.col(j);
      const double norm = u.norm();
      if (evals(j) > 1e-12 * std::max(scale, 1e-300) && norm > 0.0) {
        evecs.col(j) = u / norm;
        ++filled;
      } else {
        evecs.col(j).setZero();
      }
    }
    // Null-space directions are arbitrary; complete to an orthonormal set so
    // the component invariants hold even for rank-deficient data.
    if (filled < k) {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(evecs.leftCols(filled));
      Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
      Eigen::Index next = filled;
      for (Eigen::Index j = filled; j < k; ++j) evecs.col(j) = q.col(next++);
    }
  }
  // Round-off can leave tiny negatives on null directions.
  model.eigenvalues = evals.head(k).cwiseMax(0.0);
  model.components = std::move(evecs);
  CanonicalizeSigns(model.components);
  return model;
}

Eigen::VectorXd PcaTransform(const PcaModel& model, const Eigen::VectorXd& x) {
  Require(x.size() == model.input_dim(), ErrorCode::kShapeMismatch,
          "PCA input length does not match the model");
  return model.components.transpose() * (x - model.mean);
}

Eigen::MatrixXd PcaTransformRows(const PcaModel& model, const Eigen::MatrixXd& x) {
  Require(x.cols() == model.input_dim(), ErrorCode::kShapeMismatch,
          "PCA input width does not match the model");
  return (x.rowwise() - model.mean.transpose()) * model.components;
}

Eigen::VectorXd PcaInverseTransform(const PcaModel& model, const Eigen::VectorXd& y) {
  Require(y.size() == model.output_dim(), ErrorCode::kShapeMismatch,
          "PCA coordinate length does not match the model");
  return model.components * y + model.mean;
}

}  // namespace fwlbp
