#include "fwlbp/config.hpp"

#include <set>

#include "fwlbp/error.hpp"
#include "json.hpp"

namespace fwlbp {

using nlohmann::json;

const char* SqrtPlacementName(SqrtPlacement p) {
  switch (p) {
    case SqrtPlacement::kBeforePca: return "before_pca";
    case SqrtPlacement::kAfterPca: return "after_pca";
    case SqrtPlacement::kNone: return "none";
  }
  return "before_pca";
}

const char* FdRegressionName(FdRegression m) {
  return m == FdRegression::kLinear ? "linear" : "loglog";
}

const char* SignalPowerName(SignalPower p) {
  return p == SignalPower::kVariance ? "variance" : "mean_square";
}

void PipelineConfig::Validate() const {
  Require(r_min >= 2, ErrorCode::kInvalidParameter, "r_min must be >= 2");
  Require(r_max >= r_min, ErrorCode::kInvalidParameter, "r_max must be >= r_min");
  Require(r_max > r_min, ErrorCode::kInsufficientLayers,
          "r_max == r_min leaves a single scale; FD regression needs two");
  Require(!radii.empty(), ErrorCode::kInvalidParameter, "radii list is empty");
  for (const auto& r : radii) {
    Require(r.radius > 0.0 && r.samples >= 1 && r.samples <= kMaxLbpSamples,
            ErrorCode::kInvalidParameter, "invalid LBP radius/sample pair");
  }
  Require(pca_k >= 1, ErrorCode::kInvalidParameter, "pca_k must be >= 1");
  Require(target_std > 0.0, ErrorCode::kInvalidParameter, "target_std must be > 0");
  Require(folds >= 2, ErrorCode::kInvalidParameter, "folds must be >= 2");
  if (subspace.kind == SubspacePolicy::Kind::kFixed) {
    Require(subspace.dim >= 1, ErrorCode::kInvalidParameter,
            "subspace dimension must be >= 1");
  } else {
    Require(subspace.energy > 0.0 && subspace.energy <= 1.0,
            ErrorCode::kInvalidParameter, "subspace energy must be in (0, 1]");
  }
}

std::string ToJson(const PipelineConfig& cfg, int indent) {
  json radii = json::array();
  for (const auto& r : cfg.radii) radii.push_back({{"radius", r.radius}, {"samples", r.samples}});
  json subspace;
  if (cfg.subspace.kind == SubspacePolicy::Kind::kFixed) {
    subspace = {{"policy", "fixed"}, {"dim", cfg.subspace.dim}};
  } else {
    subspace = {{"policy", "energy"}, {"energy", cfg.subspace.energy}};
  }
  json j = {
      {"r_min", cfg.r_min},
      {"r_max", cfg.r_max},
      {"radii", radii},
      {"pca_k", cfg.pca_k},
      {"subspace", subspace},
      {"normalize", cfg.normalize},
      {"target_mean", cfg.target_mean},
      {"target_std", cfg.target_std},
      {"seed", cfg.seed},
      {"fd_regression", FdRegressionName(cfg.fd_regression)},
      {"sqrt", SqrtPlacementName(cfg.sqrt)},
      {"folds", cfg.folds},
      {"noise_before_normalization", cfg.noise_before_normalization},
      {"noisy_train", cfg.noisy_train},
      {"snr_power", SignalPowerName(cfg.snr_power)},
  };
  return j.dump(indent);
}

PipelineConfig ConfigFromJson(const std::string& text, const PipelineConfig& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("config is not valid JSON: ") + e.what());
  }
  Require(j.is_object(), ErrorCode::kParse, "config must be a JSON object");
  static const std::set<std::string> known = {
      "r_min", "r_max", "radii", "pca_k", "subspace", "normalize",
      "target_mean", "target_std", "seed", "fd_regression", "sqrt", "folds",
      "noise_before_normalization", "noisy_train", "snr_power"};
  for (const auto& [key, _] : j.items()) {
    Require(known.count(key) > 0, ErrorCode::kInvalidParameter,
            "unknown config key '" + key + "'");
  }
  PipelineConfig cfg = base;
  try {
    if (j.contains("r_min")) cfg.r_min = j["r_min"].get<int>();
    if (j.contains("r_max")) cfg.r_max = j["r_max"].get<int>();
    if (j.contains("radii")) {
      cfg.radii.clear();
      for (const auto& r : j["radii"]) {
        cfg.radii.push_back({r.at("radius").get<double>(), r.at("samples").get<int>()});
      }
    }
    if (j.contains("pca_k")) cfg.pca_k = j["pca_k"].get<int>();
    if (j.contains("subspace")) {
      const auto& s = j["subspace"];
      const auto policy = s.at("policy").get<std::string>();
      if (policy == "fixed") {
        cfg.subspace = SubspacePolicy::Fixed(s.at("dim").get<int>());
      } else if (policy == "energy") {
        cfg.subspace = SubspacePolicy::Energy(s.at("energy").get<double>());
      } else {
        Fail(ErrorCode::kInvalidParameter, "unknown subspace policy '" + policy + "'");
      }
    }
    if (j.contains("normalize")) cfg.normalize = j["normalize"].get<bool>();
    if (j.contains("target_mean")) cfg.target_mean = j["target_mean"].get<double>();
    if (j.contains("target_std")) cfg.target_std = j["target_std"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("fd_regression")) {
      const auto m = j["fd_regression"].get<std::string>();
      Require(m == "loglog" || m == "linear", ErrorCode::kInvalidParameter,
              "fd_regression must be 'loglog' or 'linear'");
      cfg.fd_regression = m == "linear" ? FdRegression::kLinear : FdRegression::kLogLog;
    }
    if (j.contains("sqrt")) {
      const auto s = j["sqrt"].get<std::string>();
      if (s == "before_pca") cfg.sqrt = SqrtPlacement::kBeforePca;
      else if (s == "after_pca") cfg.sqrt = SqrtPlacement::kAfterPca;
      else if (s == "none") cfg.sqrt = SqrtPlacement::kNone;
      else Fail(ErrorCode::kInvalidParameter, "sqrt must be before_pca, after_pca or none");
    }
    if (j.contains("folds")) cfg.folds = j["folds"].get<int>();
    if (j.contains("noise_before_normalization")) {
      cfg.noise_before_normalization = j["noise_before_normalization"].get<bool>();
    }
    if (j.contains("noisy_train")) cfg.noisy_train = j["noisy_train"].get<bool>();
    if (j.contains("snr_power")) {
      const auto p = j["snr_power"].get<std::string>();
      Require(p == "mean_square" || p == "variance", ErrorCode::kInvalidParameter,
              "snr_power must be 'mean_square' or 'variance'");
      cfg.snr_power = p == "variance" ? SignalPower::kVariance : SignalPower::kMeanSquare;
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("bad config value: ") + e.what());
  }
  return cfg;
}

}  // namespace fwlbp
