#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace fwlbp {

// One sample per row.
struct FeatureMatrix {
  Eigen::MatrixXd data;
  std::vector<int> labels;       // empty or one per row
  std::vector<std::string> ids;  // empty or one per row

  Eigen::Index rows() const { return data.rows(); }
  Eigen::Index cols() const { return data.cols(); }
};

// Elementwise square root; rejects negative entries.
std::vector<double> SqrtTransform(std::span<const double> x);
Eigen::MatrixXd SqrtTransform(const Eigen::MatrixXd& x);

// sign(x) * sqrt(|x|), for features that may be negative (post-PCA).
Eigen::MatrixXd SignedSqrtTransform(const Eigen::MatrixXd& x);

struct PcaModel {
  Eigen::VectorXd mean;         // n
  Eigen::MatrixXd components;   // n x k, orthonormal columns
  Eigen::VectorXd eigenvalues;  // k, descending

  Eigen::Index input_dim() const { return mean.size(); }
  Eigen::Index output_dim() const { return components.cols(); }
};

// Principal axes of the (m-1)-normalized covariance of the rows of `train`.
// Uses the n x n covariance when n <= m and the m x m Gram matrix otherwise.
PcaModel PcaFit(const Eigen::MatrixXd& train, Eigen::Index k);

Eigen::VectorXd PcaTransform(const PcaModel& model, const Eigen::VectorXd& x);
// Row-wise transform of a sample matrix.
Eigen::MatrixXd PcaTransformRows(const PcaModel& model, const Eigen::MatrixXd& x);
Eigen::VectorXd PcaInverseTransform(const PcaModel& model, const Eigen::VectorXd& y);

// Flips each column so its largest-magnitude entry is positive.
void CanonicalizeSigns(Eigen::MatrixXd& columns);

}  // namespace fwlbp
