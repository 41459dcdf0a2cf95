#include "fwlbp/classifier.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "fwlbp/error.hpp"
#include "fwlbp/features.hpp"

namespace fwlbp {

int SubspaceDimension(const Eigen::VectorXd& singular_values,
                      const SubspacePolicy& policy) {
  const Eigen::Index n = singular_values.size();
  if (n == 0) return 1;
  const double top = singular_values(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (singular_values(i) > 1e-12 * std::max(top, 1e-300)) ++rank;
  }
  rank = std::max<Eigen::Index>(rank, 1);
  if (policy.kind == SubspacePolicy::Kind::kFixed) {
    Require(policy.dim >= 1, ErrorCode::kInvalidParameter,
            "fixed subspace dimension must be >= 1");
    return static_cast<int>(std::min<Eigen::Index>(policy.dim, rank));
  }
  Require(policy.energy > 0.0 && policy.energy <= 1.0,
          ErrorCode::kInvalidParameter, "energy fraction must be in (0, 1]");
  const double total = singular_values.squaredNorm();
  if (total == 0.0) return 1;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < rank; ++i) {
    acc += singular_values(i) * singular_values(i);
    if (acc / total >= policy.energy) return static_cast<int>(i + 1);
  }
  return static_cast<int>(rank);
}

NscModel::NscModel(std::vector<int> classes, std::vector<Eigen::MatrixXd> bases,
                   SubspacePolicy policy)
    : classes_(std::move(classes)), bases_(std::move(bases)), policy_(policy) {
  Require(classes_.size() == bases_.size(), ErrorCode::kShapeMismatch,
          "class list and basis list differ in length");
  Require(std::is_sorted(classes_.begin(), classes_.end()) &&
              std::adjacent_find(classes_.begin(), classes_.end()) == classes_.end(),
          ErrorCode::kInvalidParameter, "class labels must be strictly ascending");
  for (const auto& b : bases_) {
    Require(b.cols() >= 1, ErrorCode::kInvalidParameter, "empty class basis");
    Require(b.rows() == bases_.front().rows(), ErrorCode::kShapeMismatch,
            "class bases differ in feature dimension");
  }
}

NscModel NscModel::Fit(const Eigen::MatrixXd& features,
                       const std::vector<int>& labels,
                       const SubspacePolicy& policy) {
  Require(static_cast<Eigen::Index>(labels.size()) == features.rows(),
          ErrorCode::kShapeMismatch, "one label per sample is required");
  Require(features.allFinite(), ErrorCode::kDomain, "NSC features are not finite");
  std::map<int, std::vector<Eigen::Index>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i]].push_back(static_cast<Eigen::Index>(i));
  }
  Require(!by_class.empty(), ErrorCode::kInsufficientSamples, "no training samples");

  std::vector<int> classes;
  std::vector<Eigen::MatrixXd> bases;
  for (const auto& [label, rows] : by_class) {
    Require(rows.size() >= 2, ErrorCode::kInsufficientSamples,
            "class " + std::to_string(label) + " has fewer than 2 samples");
    // Columns are samples.
    Eigen::MatrixXd xc(features.cols(), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      xc.col(static_cast<Eigen::Index>(j)) = features.row(rows[j]).transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(xc, Eigen::ComputeThinU);
    const int s = SubspaceDimension(svd.singularValues(), policy);
    Eigen::MatrixXd basis = svd.matrixU().leftCols(s);
    CanonicalizeSigns(basis);
    classes.push_back(label);
    bases.push_back(std::move(basis));
  }
  return NscModel(std::move(classes), std::move(bases), policy);
}

std::size_t NscModel::IndexOf(int label) const {
  const auto it = std::lower_bound(classes_.begin(), classes_.end(), label);
  Require(it != classes_.end() && *it == label, ErrorCode::kUnknownClass,
          "class " + std::to_string(label) + " is not in the model");
  return static_cast<std::size_t>(it - classes_.begin());
}

double NscModel::Residual(const Eigen::VectorXd& y, int label) const {
  const auto& b = bases_[IndexOf(label)];
  Require(y.size() == b.rows(), ErrorCode::kShapeMismatch,
          "query length does not match the model feature dimension");
  return (y - b * (b.transpose() * y)).norm();
}

std::vector<double> NscModel::Residuals(const Eigen::VectorXd& y) const {
  std::vector<double> out;
  out.reserve(classes_.size());
  for (int c : classes_) out.push_back(Residual(y, c));
  return out;
}

int NscModel::Predict(const Eigen::VectorXd& y) const {
  Require(!classes_.empty(), ErrorCode::kEmptyModel, "NSC model has no classes");
  const auto r = Residuals(y);
  return classes_[static_cast<std::size_t>(
      std::min_element(r.begin(), r.end()) - r.begin())];
}

}  // namespace fwlbp
