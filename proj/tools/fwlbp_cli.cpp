// fwlbp command-line tool. Links only the C interface.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fwlbp/fwlbp.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitExists = 3;

const char* kConfigHelp = R"(Config file keys (JSON object, all optional; flags override the file):
  r_min, r_max          scale-space kernel range for the FD estimate (2, 7)
  radii                 [{"radius":R,"samples":N},...] ([1,8],[2,8],[3,8])
  pca_k                 PCA output dimension, clamped to the training rank (300)
  subspace              {"policy":"energy","energy":F} or {"policy":"fixed","dim":S}
                        (energy 0.95)
  normalize             photometric normalization on/off (true)
  target_mean, target_std
                        normalization targets (128, 20)
  seed                  seed for folds and noise (1)
  fd_regression         "loglog" or "linear" (loglog)
  sqrt                  "before_pca", "after_pca" or "none" (before_pca)
  folds                 cross-validation folds (10)
  noise_before_normalization
                        add test noise before normalizing (false)
  noisy_train           corrupt training copies too in noise sweeps (false)
  snr_power             signal power for SNR: "mean_square" or "variance"
                        (mean_square)
)";

// Thrown to leave a subcommand with a specific exit code.
struct Exit {
  int code;
};

[[noreturn]] void Die(fwlbp_status st, const std::string& context) {
  std::cerr << "fwlbp: " << context << ": " << fwlbp_last_error() << " ("
            << fwlbp_status_name(st) << ")\n";
  throw Exit{st == FWLBP_ERR_EXISTS ? kExitExists : kExitRuntime};
}

void Check(fwlbp_status st, const std::string& context) {
  if (st != FWLBP_OK) Die(st, context);
}

[[noreturn]] void Usage(const std::string& msg) {
  std::cerr << "fwlbp: " << msg << "\n";
  throw Exit{kExitUsage};
}

// A rejected configuration is the caller's mistake, not a runtime failure.
void CheckUsage(fwlbp_status st, const std::string& context) {
  if (st != FWLBP_OK) Usage(context + ": " + fwlbp_last_error());
}

struct StrDeleter {
  void operator()(char* s) const { fwlbp_string_free(s); }
};
using CStr = std::unique_ptr<char, StrDeleter>;

template <typename T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using Image = std::unique_ptr<fwlbp_image, HandleDeleter<fwlbp_image, fwlbp_image_free>>;
using Config = std::unique_ptr<fwlbp_config, HandleDeleter<fwlbp_config, fwlbp_config_free>>;
using DatasetH =
    std::unique_ptr<fwlbp_dataset, HandleDeleter<fwlbp_dataset, fwlbp_dataset_free>>;
using Model = std::unique_ptr<fwlbp_model, HandleDeleter<fwlbp_model, fwlbp_model_free>>;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "fwlbp: cannot read " << path << "\n";
    throw Exit{kExitRuntime};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "fwlbp: cannot write " << path.string() << "\n";
    throw Exit{kExitRuntime};
  }
}

// Pipeline options shared by extract, fit and eval. Unset flags leave the
// config file (or default) value alone.
struct ConfigFlags {
  std::string config_path;
  std::optional<int> r_min, r_max, pca_k, subspace_dim, folds;
  std::optional<double> subspace_energy, target_mean, target_std;
  std::optional<std::uint64_t> seed;
  std::string fd_regression, snr_power;
  bool no_sqrt = false, sqrt_after_pca = false, no_normalize = false;
  bool noise_before_norm = false, noisy_train = false;

  void Register(CLI::App* app, bool noise_flags) {
    app->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--seed", seed, "seed for folds and noise");
    app->add_option("--r-min", r_min, "smallest scale-space kernel size");
    app->add_option("--r-max", r_max, "largest scale-space kernel size");
    app->add_option("--pca-k", pca_k, "PCA output dimension");
    app->add_option("--subspace-dim", subspace_dim, "fixed NSC subspace dimension");
    app->add_option("--subspace-energy", subspace_energy,
                    "NSC subspace energy fraction in (0, 1]");
    app->add_option("--fd-regression", fd_regression, "loglog or linear")
        ->check(CLI::IsMember({"loglog", "linear"}));
    app->add_flag("--no-sqrt", no_sqrt, "skip the square-root feature transform");
    app->add_flag("--sqrt-after-pca", sqrt_after_pca,
                  "apply a signed square root after PCA instead of before");
    app->add_flag("--no-normalize", no_normalize, "skip photometric normalization");
    app->add_option("--target-mean", target_mean, "normalization mean");
    app->add_option("--target-std", target_std, "normalization standard deviation");
    app->add_option("--folds", folds, "cross-validation folds");
    if (noise_flags) {
      app->add_flag("--noise-before-normalization", noise_before_norm,
                    "add test noise before normalizing");
      app->add_flag("--noisy-train", noisy_train, "corrupt training copies too");
      app->add_option("--snr-power", snr_power, "mean_square or variance")
          ->check(CLI::IsMember({"mean_square", "variance"}));
    }
    app->footer(kConfigHelp);
  }

  Config Build() const {
    if (no_sqrt && sqrt_after_pca) Usage("--no-sqrt and --sqrt-after-pca conflict");
    if (subspace_dim && subspace_energy) {
      Usage("--subspace-dim and --subspace-energy conflict");
    }
    fwlbp_config* raw = nullptr;
    if (!config_path.empty()) {
      CheckUsage(fwlbp_config_from_json(ReadFile(config_path).c_str(), &raw), config_path);
    } else {
      Check(fwlbp_config_create(&raw), "config");
    }
    Config cfg(raw);
    json patch = json::object();
    if (r_min) patch["r_min"] = *r_min;
    if (r_max) patch["r_max"] = *r_max;
    if (pca_k) patch["pca_k"] = *pca_k;
    if (subspace_dim) patch["subspace"] = {{"policy", "fixed"}, {"dim", *subspace_dim}};
    if (subspace_energy) {
      patch["subspace"] = {{"policy", "energy"}, {"energy", *subspace_energy}};
    }
    if (folds) patch["folds"] = *folds;
    if (seed) patch["seed"] = *seed;
    if (target_mean) patch["target_mean"] = *target_mean;
    if (target_std) patch["target_std"] = *target_std;
    if (!fd_regression.empty()) patch["fd_regression"] = fd_regression;
    if (!snr_power.empty()) patch["snr_power"] = snr_power;
    if (no_sqrt) patch["sqrt"] = "none";
    if (sqrt_after_pca) patch["sqrt"] = "after_pca";
    if (no_normalize) patch["normalize"] = false;
    if (noise_before_norm) patch["noise_before_normalization"] = true;
    if (noisy_train) patch["noisy_train"] = true;
    CheckUsage(fwlbp_config_update_json(cfg.get(), patch.dump().c_str()), "options");
    return cfg;
  }
};

std::string ConfigJson(const fwlbp_config* cfg) {
  char* raw = nullptr;
  Check(fwlbp_config_to_json(cfg, &raw), "config");
  return std::string(CStr(raw).get()) + "\n";
}

// Refuses to touch existing files unless forced.
void GuardOutputs(const std::vector<fs::path>& files, bool force) {
  if (force) return;
  for (const auto& f : files) {
    if (fs::exists(f)) {
      std::cerr << "fwlbp: " << f.string() << " exists; use --force to overwrite\n";
      throw Exit{kExitExists};
    }
  }
}

void MakeDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    std::cerr << "fwlbp: cannot create " << dir.string() << "\n";
    throw Exit{kExitRuntime};
  }
}

DatasetH LoadDataset(const std::string& dir) {
  fwlbp_dataset* raw = nullptr;
  Check(fwlbp_dataset_load(dir.c_str(), &raw), dir);
  return DatasetH(raw);
}

Image LoadImage(const std::string& path) {
  fwlbp_image* raw = nullptr;
  Check(fwlbp_image_load(path.c_str(), &raw), path);
  return Image(raw);
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---- extract ----

struct ExtractArgs {
  ConfigFlags flags;
  std::vector<std::string> inputs;
  std::string output;
  std::string label;
  bool keep_going = false;
  bool force = false;
  unsigned jobs = 0;
};

int RunExtract(const ExtractArgs& a) {
  if (a.inputs.empty()) Usage("extract: no input images given (see --help)");
  Config cfg = a.flags.Build();
  std::vector<std::string> labels;
  for (const auto& p : a.inputs) {
    labels.push_back(a.label.empty() ? fs::path(p).parent_path().filename().string() : a.label);
  }
  std::vector<const char*> cp, cl;
  for (std::size_t i = 0; i < a.inputs.size(); ++i) {
    cp.push_back(a.inputs[i].c_str());
    cl.push_back(labels[i].c_str());
  }
  fs::path out_path(a.output);
  fs::path cfg_path = out_path;
  cfg_path += ".config.json";
  if (!a.output.empty()) GuardOutputs({out_path, cfg_path}, a.force);

  char* csv_raw = nullptr;
  char* err_raw = nullptr;
  const fwlbp_status st = fwlbp_extract_files(cp.data(), cl.data(), cp.size(), cfg.get(),
                                              a.jobs, a.keep_going, &csv_raw, &err_raw);
  CStr csv(csv_raw), errs(err_raw);
  if (errs) std::cerr << errs.get();
  if (st != FWLBP_OK && !a.keep_going) Die(st, "extract");
  if (!csv) Die(st, "extract");
  if (a.output.empty()) {
    std::cout << csv.get();
  } else {
    WriteFile(out_path, csv.get());
    WriteFile(cfg_path, ConfigJson(cfg.get()));
  }
  return st == FWLBP_OK ? 0 : kExitRuntime;
}

// ---- fit ----

struct FitArgs {
  ConfigFlags flags;
  std::string dataset;
  std::string out;
  bool force = false;
  unsigned jobs = 0;
};

int RunFit(const FitArgs& a) {
  Config cfg = a.flags.Build();
  const fs::path out(a.out);
  GuardOutputs({out / "pca.json", out / "nsc.json", out / "config.json"}, a.force);
  DatasetH ds = LoadDataset(a.dataset);
  fwlbp_model* raw = nullptr;
  Check(fwlbp_model_fit(ds.get(), cfg.get(), a.jobs, &raw), "fit");
  Model model(raw);
  Check(fwlbp_model_save(model.get(), a.out.c_str(), a.force), a.out);
  std::cout << "fitted " << fwlbp_model_class_count(model.get()) << " classes on "
            << fwlbp_dataset_size(ds.get()) << " images; bundle in " << a.out << "\n";
  return 0;
}

// ---- predict ----

struct PredictArgs {
  std::string model;
  std::vector<std::string> images;
};

int RunPredict(const PredictArgs& a) {
  if (a.images.empty()) Usage("predict: no input image given (see --help)");
  fwlbp_model* raw = nullptr;
  Check(fwlbp_model_load(a.model.c_str(), &raw), a.model);
  Model model(raw);
  json results = json::array();
  for (const auto& path : a.images) {
    Image img = LoadImage(path);
    char* out = nullptr;
    Check(fwlbp_model_predict(model.get(), img.get(), &out), path);
    json j = json::parse(CStr(out).get());
    if (a.images.size() == 1) {
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    j["path"] = path;
    results.push_back(std::move(j));
  }
  std::cout << results.dump(2) << "\n";
  return 0;
}

// ---- eval ----

struct EvalArgs {
  ConfigFlags flags;
  std::string mode;
  std::string dataset;
  std::string out;
  std::string image;
  std::vector<double> levels{100, 30, 15, 10, 5};
  std::vector<int> rmax_values{2, 3, 4, 5, 6, 7};
  bool force = false;
  unsigned jobs = 0;
};

int RunEval(const EvalArgs& a) {
  Config cfg = a.flags.Build();
  const fs::path out(a.out);
  const std::string cfg_text = ConfigJson(cfg.get());

  if (a.mode == "invariance") {
    std::string image = a.image;
    DatasetH ds;
    if (image.empty()) {
      if (a.dataset.empty()) Usage("eval invariance: give --image or a dataset directory");
      ds = LoadDataset(a.dataset);
      image = (fs::path(a.dataset) / fwlbp_dataset_sample_id(ds.get(), 0)).string();
    }
    GuardOutputs({out / "invariance.csv", out / "config.json"}, a.force);
    Image img = LoadImage(image);
    char* csv = nullptr;
    Check(fwlbp_eval_invariance(img.get(), cfg.get(), &csv), "invariance");
    CStr text(csv);
    MakeDir(out);
    WriteFile(out / "invariance.csv", text.get());
    WriteFile(out / "config.json", cfg_text);
    std::cout << "image " << image << "\n" << text.get();
    return 0;
  }

  if (a.dataset.empty()) Usage("eval " + a.mode + ": dataset directory required");
  DatasetH ds = LoadDataset(a.dataset);
  if (a.mode == "cv") {
    GuardOutputs({out / "report.json", out / "report.txt", out / "config.json"}, a.force);
    char* j = nullptr;
    char* t = nullptr;
    Check(fwlbp_eval_cv(ds.get(), cfg.get(), a.jobs, &j, &t), "cross-validation");
    CStr js(j), table(t);
    MakeDir(out);
    WriteFile(out / "report.json", std::string(js.get()) + "\n");
    WriteFile(out / "report.txt", table.get());
    WriteFile(out / "config.json", cfg_text);
    std::cout << table.get();
    return 0;
  }
  if (a.mode == "noise") {
    GuardOutputs({out / "noise.json", out / "noise.csv", out / "config.json"}, a.force);
    char* j = nullptr;
    Check(fwlbp_eval_noise(ds.get(), cfg.get(), a.levels.data(), a.levels.size(), a.jobs, &j),
          "noise sweep");
    const json arr = json::parse(CStr(j).get());
    std::string csv = "snr_db,mean,std\n";
    for (const auto& r : arr) {
      std::ostringstream line;
      line << r["snr_db"].get<double>() << "," << r["report"]["mean"].get<double>() << ","
           << r["report"]["std"].get<double>() << "\n";
      csv += line.str();
    }
    MakeDir(out);
    WriteFile(out / "noise.json", arr.dump(2) + "\n");
    WriteFile(out / "noise.csv", csv);
    WriteFile(out / "config.json", cfg_text);
    std::cout << csv;
    return 0;
  }
  if (a.mode == "rmax") {
    GuardOutputs({out / "rmax.json", out / "rmax.csv", out / "config.json"}, a.force);
    char* j = nullptr;
    Check(fwlbp_eval_rmax(ds.get(), cfg.get(), a.rmax_values.data(), a.rmax_values.size(),
                          a.jobs, &j),
          "r_max sweep");
    const json arr = json::parse(CStr(j).get());
    std::string csv = "r_max,mean,std,error\n";
    for (const auto& r : arr) {
      std::ostringstream line;
      line << r["r_max"].get<int>() << ",";
      if (r.contains("report")) {
        line << r["report"]["mean"].get<double>() << "," << r["report"]["std"].get<double>()
             << ",";
      } else {
        line << ",,\"" << r["error"].get<std::string>() << "\"";
      }
      csv += line.str() + "\n";
    }
    MakeDir(out);
    WriteFile(out / "rmax.json", arr.dump(2) + "\n");
    WriteFile(out / "rmax.csv", csv);
    WriteFile(out / "config.json", cfg_text);
    std::cout << csv;
    return 0;
  }
  Usage("unknown eval mode '" + a.mode + "'");
}

// ---- synth ----

struct SynthArgs {
  std::string spec_path;
  std::string out;
  std::optional<int> per_class;
  std::optional<std::size_t> size;
  std::optional<std::uint64_t> seed;
  std::optional<double> sensor_noise;
  std::string jitter;
  bool force = false;
  unsigned jobs = 0;
};

int RunSynth(const SynthArgs& a) {
  json spec = json::object();
  if (!a.spec_path.empty()) {
    try {
      spec = json::parse(ReadFile(a.spec_path));
    } catch (const json::exception& e) {
      std::cerr << "fwlbp: " << a.spec_path << ": " << e.what() << "\n";
      return kExitRuntime;
    }
  }
  bool replan = false;
  if (a.per_class) spec["per_class"] = *a.per_class, replan = true;
  if (a.seed) spec["seed"] = *a.seed, replan = true;
  if (a.size) spec["size"] = *a.size;
  if (a.sensor_noise) spec["sensor_noise"] = *a.sensor_noise;
  if (!a.jitter.empty()) {
    bool scale = false, rotation = false;
    for (const auto& item : SplitList(a.jitter)) {
      if (item == "scale") scale = true;
      else if (item == "rotation") rotation = true;
      else if (item != "none") Usage("--jitter takes scale, rotation or none");
    }
    spec["jitter"]["scale"] = scale;
    spec["jitter"]["rotation"] = rotation;
    replan = true;
  }
  // Recorded samples no longer match a changed plan.
  if (replan) spec.erase("samples");
  char* manifest = nullptr;
  Check(fwlbp_synth_corpus(spec.dump().c_str(), a.out.c_str(), a.force, a.jobs, &manifest),
        a.out);
  const json m = json::parse(CStr(manifest).get());
  std::cout << "wrote " << m["samples"].size() << " images in " << m["classes"].size()
            << " classes to " << a.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractal-weighted LBP texture descriptors and classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fwlbp_version());
  const char* jobs_help = "worker threads (default: FWLBP_JOBS or core count)";

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "FWLBP descriptors of PGM images as CSV");
  extract->add_option("inputs", ex.inputs, "PGM images");
  extract->add_option("-o,--output", ex.output, "CSV file (default stdout); a "
                                                 "<output>.config.json echo is written next to it");
  extract->add_option("--label", ex.label, "label column value (default: parent directory)");
  extract->add_flag("--keep-going", ex.keep_going, "skip unreadable images instead of stopping");
  extract->add_flag("--force", ex.force, "overwrite existing output");
  extract->add_option("-j,--jobs", ex.jobs, jobs_help);
  ex.flags.Register(extract, false);

  FitArgs fit;
  auto* fitc = app.add_subcommand("fit", "train PCA + nearest-subspace model on a dataset");
  fitc->add_option("dataset", fit.dataset, "dataset root: <root>/<class>/*.pgm")->required();
  fitc->add_option("-o,--out", fit.out, "bundle directory (pca.json, nsc.json, config.json)")
      ->required();
  fitc->add_flag("--force", fit.force, "overwrite an existing bundle");
  fitc->add_option("-j,--jobs", fit.jobs, jobs_help);
  fit.flags.Register(fitc, false);

  PredictArgs pred;
  auto* predc = app.add_subcommand("predict", "classify images with a fitted bundle");
  predc->add_option("-m,--model", pred.model, "bundle directory")->required();
  predc->add_option("images", pred.images, "PGM images");
  predc->footer("The bundle's config.json fixes every pipeline setting.");

  EvalArgs ev;
  auto* evalc = app.add_subcommand("eval", "cross-validation, noise, r_max and invariance reports");
  evalc->add_option("mode", ev.mode, "cv, noise, rmax or invariance")
      ->required()
      ->check(CLI::IsMember({"cv", "noise", "rmax", "invariance"}));
  evalc->add_option("dataset", ev.dataset, "dataset root: <root>/<class>/*.pgm");
  evalc->add_option("-o,--out", ev.out, "report directory")->required();
  evalc->add_option("--image", ev.image, "invariance: image to transform (default: first "
                                         "dataset sample)");
  evalc->add_option("--levels", ev.levels, "noise: SNR levels in dB")
      ->delimiter(',')
      ->capture_default_str();
  evalc->add_option("--rmax-values", ev.rmax_values, "rmax: r_max values")
      ->delimiter(',')
      ->capture_default_str();
  evalc->add_flag("--force", ev.force, "overwrite existing reports");
  evalc->add_option("-j,--jobs", ev.jobs, jobs_help);
  ev.flags.Register(evalc, true);

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "write a synthetic texture corpus");
  synth->add_option("-o,--out", sy.out, "output directory")->required();
  synth->add_option("--spec", sy.spec_path,
                    "corpus description or earlier manifest.json (regenerates it exactly)")
      ->check(CLI::ExistingFile);
  synth->add_option("--per-class", sy.per_class, "samples per class (20)");
  synth->add_option("--size", sy.size, "image side in pixels (128)");
  synth->add_option("--seed", sy.seed, "corpus seed (1)");
  synth->add_option("--sensor-noise", sy.sensor_noise,
                    "std of acquisition noise added before quantization (1)");
  synth->add_option("--jitter", sy.jitter, "per-sample transforms: scale,rotation or none");
  synth->add_flag("--force", sy.force, "overwrite existing files");
  synth->add_option("-j,--jobs", sy.jobs, jobs_help);
  synth->footer(
      "Corpus description keys: classes [{name, kind, params}], per_class, size, seed,\n"
      "sensor_noise, jitter {scale, scale_min, scale_max, rotation, rotation_min,\n"
      "rotation_max}. Kinds: sinusoid (frequency, components, orientation), checker\n"
      "(period, orientation), fractal_noise (beta), blob (blob_radius, blob_density).\n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*extract) return RunExtract(ex);
    if (*fitc) return RunFit(fit);
    if (*predc) return RunPredict(pred);
    if (*evalc) return RunEval(ev);
    if (*synth) return RunSynth(sy);
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "fwlbp: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
