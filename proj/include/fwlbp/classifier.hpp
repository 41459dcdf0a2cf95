#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace fwlbp {

struct SubspacePolicy {
  enum class Kind { kFixed, kEnergy };
  Kind kind = Kind::kEnergy;
  int dim = 1;           // kFixed
  double energy = 0.95;  // kEnergy: smallest s with cumulative sigma^2 share >= energy

  static SubspacePolicy Fixed(int s) { return {Kind::kFixed, s, 0.95}; }
  static SubspacePolicy Energy(double f) { return {Kind::kEnergy, 1, f}; }
};

// Number of leading singular values needed under `policy`, clamped to
// [1, rank].
int SubspaceDimension(const Eigen::VectorXd& singular_values,
                      const SubspacePolicy& policy);

// Nearest subspace classifier. Class c is represented by an orthonormal
// basis B_c of the leading left singular vectors of its (uncentered)
// training samples; a query goes to the class with the smallest residual
// ||y - B_c B_c^T y||.
class NscModel {
 public:
  NscModel() = default;
  NscModel(std::vector<int> classes, std::vector<Eigen::MatrixXd> bases,
           SubspacePolicy policy);

  // Rows of `features` are samples.
  static NscModel Fit(const Eigen::MatrixXd& features,
                      const std::vector<int>& labels,
                      const SubspacePolicy& policy);

  double Residual(const Eigen::VectorXd& y, int label) const;
  // Residuals in class order.
  std::vector<double> Residuals(const Eigen::VectorXd& y) const;
  // Ties go to the earliest class in label order.
  int Predict(const Eigen::VectorXd& y) const;

  const std::vector<int>& classes() const { return classes_; }
  const std::vector<Eigen::MatrixXd>& bases() const { return bases_; }
  const SubspacePolicy& policy() const { return policy_; }
  Eigen::Index feature_dim() const {
    return bases_.empty() ? 0 : bases_.front().rows();
  }

 private:
  std::size_t IndexOf(int label) const;

  std::vector<int> classes_;  // ascending
  std::vector<Eigen::MatrixXd> bases_;
  SubspacePolicy policy_;
};

}  // namespace fwlbp
