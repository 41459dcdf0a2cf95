#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fwlbp/classifier.hpp"
#include "fwlbp/config.hpp"
#include "fwlbp/dataset.hpp"
#include "fwlbp/features.hpp"

namespace fwlbp {

struct NoiseSpec {
  double snr_db;
  std::uint64_t seed;
};

// Photometric normalization (if enabled) plus optional additive noise, in
// the order chosen by cfg.noise_before_normalization.
GrayImage Preprocess(const GrayImage& img, const PipelineConfig& cfg,
                     const std::optional<NoiseSpec>& noise = std::nullopt);

// Preprocess + FWLBP descriptor.
std::vector<double> ExtractFeatures(const GrayImage& img, const PipelineConfig& cfg,
                                    const std::optional<NoiseSpec>& noise = std::nullopt);

// One descriptor row per dataset sample. When `noise_snr_db` is set each
// sample gets independent noise seeded from (cfg.seed, noise_salt, index).
Eigen::MatrixXd ExtractDatasetFeatures(const Dataset& ds, const PipelineConfig& cfg,
                                       unsigned jobs,
                                       std::optional<double> noise_snr_db = std::nullopt,
                                       std::uint64_t noise_salt = 0);

// sqrt -> PCA -> NSC, fitted on training rows only.
struct TrainedPipeline {
  SqrtPlacement sqrt = SqrtPlacement::kBeforePca;
  PcaModel pca;
  NscModel nsc;
  bool pca_clamped = false;  // requested k exceeded min(m-1, n)

  Eigen::VectorXd Project(const Eigen::VectorXd& descriptor) const;
  int Predict(const Eigen::VectorXd& descriptor) const;
  std::vector<double> Residuals(const Eigen::VectorXd& descriptor) const;
};

TrainedPipeline FitPipeline(const Eigen::MatrixXd& descriptors,
                            const std::vector<int>& labels,
                            const PipelineConfig& cfg);

// Stratified assignment of sample i to fold[i] in [0, k).
std::vector<int> KFoldSplit(const std::vector<int>& labels, int k, std::uint64_t seed);

struct EvalReport {
  std::vector<double> fold_accuracies;
  double mean = 0.0;
  double stddev = 0.0;  // population
  std::vector<std::vector<int>> confusion;  // [true][predicted]
  std::vector<std::string> class_names;
  std::vector<std::string> notes;
  std::string config_json;
};

// Folds are drawn from the labels; fold f trains on train_features rows
// outside f and scores test_features rows inside f. The two matrices may be
// the same (plain CV) or differ (e.g. noisy test copies).
EvalReport CrossValidateFeatures(const Eigen::MatrixXd& train_features,
                                 const Eigen::MatrixXd& test_features,
                                 const std::vector<int>& labels,
                                 const std::vector<std::string>& class_names,
                                 const PipelineConfig& cfg);

EvalReport CrossValidate(const Dataset& ds, const PipelineConfig& cfg, unsigned jobs = 0);

struct NoiseResult {
  double snr_db;
  EvalReport report;
};

// Test copies are corrupted at each SNR; training copies stay clean unless
// cfg.noisy_train is set.
std::vector<NoiseResult> NoiseSweep(const Dataset& ds, const std::vector<double>& snr_levels,
                                    const PipelineConfig& cfg, unsigned jobs = 0);

struct RmaxResult {
  int r_max;
  std::optional<EvalReport> report;
  std::string error;  // set when the configuration is rejected
};

std::vector<RmaxResult> RmaxSweep(const Dataset& ds, const std::vector<int>& rmax_values,
                                  const PipelineConfig& cfg, unsigned jobs = 0);

struct InvarianceRow {
  std::string transform;  // "scale" or "rotation"
  double param;
  double chi2_fwlbp;
  double chi2_lbp;
};

std::vector<double> InvarianceScaleFactors();     // 0.5 .. 2.0, geometric, 9 steps
std::vector<double> InvarianceRotationAngles();  // 0..90 degrees, 9 steps

// Scale rows compare whole images; rotation rows compare the centered
// square inscribed in the rotation disc.
std::vector<InvarianceRow> InvarianceReport(const GrayImage& img, const PipelineConfig& cfg);
std::string InvarianceToCsv(const std::vector<InvarianceRow>& rows);

std::string ReportToJson(const EvalReport& r);
std::string ReportTable(const EvalReport& r);

}  // namespace fwlbp
