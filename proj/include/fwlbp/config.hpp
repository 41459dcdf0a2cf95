#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fwlbp/classifier.hpp"
#include "fwlbp/descriptor.hpp"

namespace fwlbp {

enum class SqrtPlacement { kBeforePca, kAfterPca, kNone };

struct PipelineConfig {
  int r_min = 2;
  int r_max = 7;
  std::vector<LbpRadius> radii = DefaultRadii();
  int pca_k = 300;
  SubspacePolicy subspace = SubspacePolicy::Energy(0.95);
  bool normalize = true;
  double target_mean = 128.0;
  double target_std = 20.0;
  std::uint64_t seed = 1;
  FdRegression fd_regression = FdRegression::kLogLog;
  SqrtPlacement sqrt = SqrtPlacement::kBeforePca;
  int folds = 10;
  bool noise_before_normalization = false;
  bool noisy_train = false;
  SignalPower snr_power = SignalPower::kMeanSquare;

  FdRange fd_range() const { return {r_min, r_max, fd_regression}; }

  // Throws InvalidParameter; r_max == r_min raises InsufficientLayers since
  // the FD regression needs two scales.
  void Validate() const;
};

std::string ToJson(const PipelineConfig& cfg, int indent = 2);
// Keys absent from `json` keep the value already in `base`.
PipelineConfig ConfigFromJson(const std::string& json,
                              const PipelineConfig& base = {});

const char* SqrtPlacementName(SqrtPlacement p);
const char* FdRegressionName(FdRegression m);
const char* SignalPowerName(SignalPower p);

}  // namespace fwlbp
