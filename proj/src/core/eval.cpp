#include "fwlbp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "fwlbp/descriptor.hpp"
#include "fwlbp/error.hpp"
#include "fwlbp/parallel.hpp"
#include "fwlbp/serialize.hpp"
#include "json.hpp"

namespace fwlbp {

GrayImage Preprocess(const GrayImage& img, const PipelineConfig& cfg,
                     const std::optional<NoiseSpec>& noise) {
  GrayImage out = img;
  if (noise && cfg.noise_before_normalization) {
    out = AddGaussianNoise(out, noise->snr_db, noise->seed, cfg.snr_power);
  }
  if (cfg.normalize) out = NormalizeIntensity(out, cfg.target_mean, cfg.target_std);
  if (noise && !cfg.noise_before_normalization) {
    out = AddGaussianNoise(out, noise->snr_db, noise->seed, cfg.snr_power);
  }
  return out;
}

std::vector<double> ExtractFeatures(const GrayImage& img, const PipelineConfig& cfg,
                                    const std::optional<NoiseSpec>& noise) {
  return ExtractFwlbp(Preprocess(img, cfg, noise), cfg.radii, cfg.fd_range()).values;
}

Eigen::MatrixXd ExtractDatasetFeatures(const Dataset& ds, const PipelineConfig& cfg,
                                       unsigned jobs, std::optional<double> noise_snr_db,
                                       std::uint64_t noise_salt) {
  cfg.Validate();
  const auto n = static_cast<Eigen::Index>(DescriptorLength(cfg.radii));
  Eigen::MatrixXd out(static_cast<Eigen::Index>(ds.samples.size()), n);
  ParallelFor(ds.samples.size(), jobs, [&](std::size_t i) {
    std::optional<NoiseSpec> noise;
    if (noise_snr_db) {
      noise = NoiseSpec{*noise_snr_db, MixSeed(MixSeed(cfg.seed, noise_salt), i)};
    }
    const auto f = ExtractFeatures(ds.Load(i), cfg, noise);
    out.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(f.data(), n);
  });
  return out;
}

Eigen::VectorXd TrainedPipeline::Project(const Eigen::VectorXd& descriptor) const {
  Eigen::MatrixXd row = descriptor.transpose();
  if (sqrt == SqrtPlacement::kBeforePca) row = SqrtTransform(row);
  Eigen::MatrixXd z = PcaTransformRows(pca, row);
  if (sqrt == SqrtPlacement::kAfterPca) z = SignedSqrtTransform(z);
  return z.row(0).transpose();
}

int TrainedPipeline::Predict(const Eigen::VectorXd& descriptor) const {
  return nsc.Predict(Project(descriptor));
}

std::vector<double> TrainedPipeline::Residuals(const Eigen::VectorXd& descriptor) const {
  return nsc.Residuals(Project(descriptor));
}

TrainedPipeline FitPipeline(const Eigen::MatrixXd& descriptors,
                            const std::vector<int>& labels,
                            const PipelineConfig& cfg) {
  Require(descriptors.rows() >= 2, ErrorCode::kInsufficientSamples,
          "need at least 2 training samples");
  TrainedPipeline tp;
  tp.sqrt = cfg.sqrt;
  Eigen::MatrixXd x = descriptors;
  if (cfg.sqrt == SqrtPlacement::kBeforePca) x = SqrtTransform(x);
  const Eigen::Index k_max = std::min(x.rows() - 1, x.cols());
  const Eigen::Index k = std::min<Eigen::Index>(cfg.pca_k, k_max);
  tp.pca_clamped = k < cfg.pca_k;
  tp.pca = PcaFit(x, k);
  Eigen::MatrixXd z = PcaTransformRows(tp.pca, x);
  if (cfg.sqrt == SqrtPlacement::kAfterPca) z = SignedSqrtTransform(z);
  tp.nsc = NscModel::Fit(z, labels, cfg.subspace);
  return tp;
}

std::vector<int> KFoldSplit(const std::vector<int>& labels, int k, std::uint64_t seed) {
  Require(k >= 2, ErrorCode::kInvalidParameter, "k-fold needs k >= 2");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  std::vector<int> fold(labels.size(), -1);
  std::size_t offset = 0;
  for (auto& [label, idx] : by_class) {
    Require(idx.size() >= static_cast<std::size_t>(k), ErrorCode::kInsufficientSamples,
            "class " + std::to_string(label) + " has " + std::to_string(idx.size()) +
                " samples, fewer than k=" + std::to_string(k));
    std::mt19937_64 rng(MixSeed(seed, static_cast<std::uint64_t>(label)));
    // Fisher-Yates with an explicit draw so the order does not depend on the
    // standard library's shuffle.
    for (std::size_t i = idx.size() - 1; i > 0; --i) {
      const std::size_t j = rng() % (i + 1);
      std::swap(idx[i], idx[j]);
    }
    for (std::size_t j = 0; j < idx.size(); ++j) {
      fold[idx[j]] = static_cast<int>((offset + j) % static_cast<std::size_t>(k));
    }
    offset += idx.size();
  }
  return fold;
}

EvalReport CrossValidateFeatures(const Eigen::MatrixXd& train_features,
                                 const Eigen::MatrixXd& test_features,
                                 const std::vector<int>& labels,
                                 const std::vector<std::string>& class_names,
                                 const PipelineConfig& cfg) {
  Require(train_features.rows() == static_cast<Eigen::Index>(labels.size()) &&
              test_features.rows() == train_features.rows() &&
              test_features.cols() == train_features.cols(),
          ErrorCode::kShapeMismatch, "feature matrices and labels disagree in shape");
  const auto folds = KFoldSplit(labels, cfg.folds, cfg.seed);
  const std::size_t nc = class_names.size();
  EvalReport rep;
  rep.class_names = class_names;
  rep.confusion.assign(nc, std::vector<int>(nc, 0));
  rep.config_json = ToJson(cfg, -1);
  bool clamped = false;
  Eigen::Index used_k = 0;

  for (int f = 0; f < cfg.folds; ++f) {
    std::vector<Eigen::Index> train_rows, test_rows;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      (folds[i] == f ? test_rows : train_rows).push_back(static_cast<Eigen::Index>(i));
    }
    Eigen::MatrixXd xtrain(static_cast<Eigen::Index>(train_rows.size()), train_features.cols());
    std::vector<int> ytrain;
    for (std::size_t r = 0; r < train_rows.size(); ++r) {
      xtrain.row(static_cast<Eigen::Index>(r)) = train_features.row(train_rows[r]);
      ytrain.push_back(labels[static_cast<std::size_t>(train_rows[r])]);
    }
    const TrainedPipeline tp = FitPipeline(xtrain, ytrain, cfg);
    clamped = clamped || tp.pca_clamped;
    used_k = tp.pca.output_dim();
    int correct = 0;
    for (Eigen::Index r : test_rows) {
      const int truth = labels[static_cast<std::size_t>(r)];
      const int pred = tp.Predict(test_features.row(r).transpose());
      correct += pred == truth;
      rep.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(pred)] += 1;
    }
    rep.fold_accuracies.push_back(test_rows.empty()
                                      ? 0.0
                                      : static_cast<double>(correct) /
                                            static_cast<double>(test_rows.size()));
  }
  const double n = static_cast<double>(rep.fold_accuracies.size());
  rep.mean = std::accumulate(rep.fold_accuracies.begin(), rep.fold_accuracies.end(), 0.0) / n;
  double var = 0.0;
  for (double a : rep.fold_accuracies) var += (a - rep.mean) * (a - rep.mean);
  rep.stddev = std::sqrt(var / n);
  if (clamped) {
    rep.notes.push_back("pca_k=" + std::to_string(cfg.pca_k) +
                        " exceeds training rank; using k=" + std::to_string(used_k));
  }
  return rep;
}

EvalReport CrossValidate(const Dataset& ds, const PipelineConfig& cfg, unsigned jobs) {
  const Eigen::MatrixXd feats = ExtractDatasetFeatures(ds, cfg, jobs);
  return CrossValidateFeatures(feats, feats, ds.labels(), ds.class_names, cfg);
}

std::vector<NoiseResult> NoiseSweep(const Dataset& ds, const std::vector<double>& snr_levels,
                                    const PipelineConfig& cfg, unsigned jobs) {
  const Eigen::MatrixXd clean = ExtractDatasetFeatures(ds, cfg, jobs);
  std::vector<NoiseResult> out;
  for (std::size_t l = 0; l < snr_levels.size(); ++l) {
    const Eigen::MatrixXd noisy =
        ExtractDatasetFeatures(ds, cfg, jobs, snr_levels[l], l + 1);
    const Eigen::MatrixXd& train = cfg.noisy_train ? noisy : clean;
    out.push_back({snr_levels[l],
                   CrossValidateFeatures(train, noisy, ds.labels(), ds.class_names, cfg)});
  }
  return out;
}

std::vector<RmaxResult> RmaxSweep(const Dataset& ds, const std::vector<int>& rmax_values,
                                  const PipelineConfig& cfg, unsigned jobs) {
  std::vector<RmaxResult> out;
  for (int r : rmax_values) {
    PipelineConfig c = cfg;
    c.r_max = r;
    RmaxResult res{r, std::nullopt, {}};
    try {
      c.Validate();
      res.report = CrossValidate(ds, c, jobs);
    } catch (const Error& e) {
      res.error = std::string(ErrorCodeName(e.code())) + ": " + e.what();
    }
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<double> InvarianceScaleFactors() {
  std::vector<double> f;
  for (int i = 0; i < 9; ++i) f.push_back(0.5 * std::pow(2.0, i / 4.0));
  f[4] = 1.0;
  return f;
}

std::vector<double> InvarianceRotationAngles() {
  return {0.0, 5.0, 10.0, 15.0, 30.0, 45.0, 60.0, 75.0, 90.0};
}

std::vector<InvarianceRow> InvarianceReport(const GrayImage& img, const PipelineConfig& cfg) {
  cfg.Validate();
  const GrayImage base = Preprocess(img, cfg);
  const FdRange fd = cfg.fd_range();
  const auto fw_base = ExtractFwlbp(base, cfg.radii, fd).values;
  const auto lbp_base = ExtractLbpHistogram(base, cfg.radii).values;
  std::vector<InvarianceRow> rows;
  for (double s : InvarianceScaleFactors()) {
    const GrayImage t = Resample(base, s);
    rows.push_back({"scale", s,
                    ChiSquareDistance(fw_base, ExtractFwlbp(t, cfg.radii, fd).values),
                    ChiSquareDistance(lbp_base, ExtractLbpHistogram(t, cfg.radii).values)});
  }
  const std::size_t side = InscribedSquareSide(base);
  const GrayImage crop = CropCenter(base, side, side);
  const auto fw_crop = ExtractFwlbp(crop, cfg.radii, fd).values;
  const auto lbp_crop = ExtractLbpHistogram(crop, cfg.radii).values;
  for (double a : InvarianceRotationAngles()) {
    const GrayImage t = CropCenter(Rotate(base, a), side, side);
    rows.push_back({"rotation", a,
                    ChiSquareDistance(fw_crop, ExtractFwlbp(t, cfg.radii, fd).values),
                    ChiSquareDistance(lbp_crop, ExtractLbpHistogram(t, cfg.radii).values)});
  }
  return rows;
}

std::string InvarianceToCsv(const std::vector<InvarianceRow>& rows) {
  std::string out = "transform,param,chi2_fwlbp,chi2_lbp\n";
  for (const auto& r : rows) {
    out += r.transform + "," + FormatDouble(r.param) + "," + FormatDouble(r.chi2_fwlbp) +
           "," + FormatDouble(r.chi2_lbp) + "\n";
  }
  return out;
}

std::string ReportToJson(const EvalReport& r) {
  nlohmann::json j = {
      {"fold_accuracies", r.fold_accuracies},
      {"mean", r.mean},
      {"std", r.stddev},
      {"confusion", r.confusion},
      {"class_names", r.class_names},
      {"notes", r.notes},
      {"config", r.config_json.empty() ? nlohmann::json::object()
                                       : nlohmann::json::parse(r.config_json)},
  };
  return j.dump(2);
}

std::string ReportTable(const EvalReport& r) {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "accuracy %.2f%% +/- %.2f%% over %zu folds\n",
                100.0 * r.mean, 100.0 * r.stddev, r.fold_accuracies.size());
  out << buf;
  std::size_t w = 5;
  for (const auto& n : r.class_names) w = std::max(w, n.size());
  out << std::string(w, ' ');
  for (std::size_t c = 0; c < r.class_names.size(); ++c) {
    std::snprintf(buf, sizeof(buf), " %6zu", c);
    out << buf;
  }
  out << '\n';
  for (std::size_t t = 0; t < r.confusion.size(); ++t) {
    out << r.class_names[t] << std::string(w - r.class_names[t].size(), ' ');
    for (int v : r.confusion[t]) {
      std::snprintf(buf, sizeof(buf), " %6d", v);
      out << buf;
    }
    out << '\n';
  }
  for (const auto& n : r.notes) out << "note: " << n << '\n';
  return out.str();
}

}  // namespace fwlbp
