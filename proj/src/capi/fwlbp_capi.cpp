#include "fwlbp/fwlbp.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fwlbp/config.hpp"
#include "fwlbp/dataset.hpp"
#include "fwlbp/descriptor.hpp"
#include "fwlbp/error.hpp"
#include "fwlbp/eval.hpp"
#include "fwlbp/fractal.hpp"
#include "fwlbp/image.hpp"
#include "fwlbp/parallel.hpp"
#include "fwlbp/serialize.hpp"
#include "fwlbp/synth.hpp"
#include "json.hpp"

struct fwlbp_image {
  fwlbp::GrayImage img;
};

struct fwlbp_config {
  fwlbp::PipelineConfig cfg;
};

struct fwlbp_dataset {
  fwlbp::Dataset ds;
};

struct fwlbp_model {
  fwlbp::PipelineConfig cfg;
  fwlbp::TrainedPipeline pipe;
  std::vector<std::string> class_names;  // parallel to pipe.nsc.classes()
};

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using fwlbp::ErrorCode;

thread_local std::string g_last_error;

fwlbp_status StatusOf(ErrorCode c) {
  switch (c) {
    case ErrorCode::kParse: return FWLBP_ERR_PARSE;
    case ErrorCode::kTruncated: return FWLBP_ERR_TRUNCATED;
    case ErrorCode::kUnsupportedFormat: return FWLBP_ERR_UNSUPPORTED_FORMAT;
    case ErrorCode::kConstantImage: return FWLBP_ERR_CONSTANT_IMAGE;
    case ErrorCode::kDegenerateSize: return FWLBP_ERR_DEGENERATE_SIZE;
    case ErrorCode::kInvalidParameter: return FWLBP_ERR_INVALID_PARAMETER;
    case ErrorCode::kImageTooSmall: return FWLBP_ERR_IMAGE_TOO_SMALL;
    case ErrorCode::kInsufficientLayers: return FWLBP_ERR_INSUFFICIENT_LAYERS;
    case ErrorCode::kBorderViolation: return FWLBP_ERR_BORDER_VIOLATION;
    case ErrorCode::kShapeMismatch: return FWLBP_ERR_SHAPE_MISMATCH;
    case ErrorCode::kDomain: return FWLBP_ERR_DOMAIN;
    case ErrorCode::kInsufficientSamples: return FWLBP_ERR_INSUFFICIENT_SAMPLES;
    case ErrorCode::kUnknownClass: return FWLBP_ERR_UNKNOWN_CLASS;
    case ErrorCode::kEmptyModel: return FWLBP_ERR_EMPTY_MODEL;
    case ErrorCode::kIo: return FWLBP_ERR_IO;
    case ErrorCode::kExists: return FWLBP_ERR_EXISTS;
  }
  return FWLBP_ERR_INTERNAL;
}

// Runs fn, translating exceptions into a status plus thread-local message.
template <typename Fn>
fwlbp_status Guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return FWLBP_OK;
  } catch (const fwlbp::Error& e) {
    g_last_error = e.what();
    return StatusOf(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return FWLBP_ERR_INTERNAL;
}

fwlbp_status NullStatus(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return FWLBP_ERR_INVALID_ARGUMENT;
}

#define FWLBP_REQUIRE_ARG(p) \
  do {                       \
    if (!(p)) return NullStatus(#p); \
  } while (0)

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fwlbp_image* Wrap(fwlbp::GrayImage img) { return new fwlbp_image{std::move(img)}; }

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  fwlbp::Require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  fwlbp::Require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  fwlbp::Require(static_cast<bool>(out), ErrorCode::kIo, "write failed: " + path.string());
}

std::string PredictJson(const fwlbp_model& m, const Eigen::VectorXd& descriptor) {
  const auto res = m.pipe.Residuals(descriptor);
  std::vector<std::size_t> order(res.size());
  std::iota(order.begin(), order.end(), 0);
  // Stable, so equal residuals keep label order and the winner matches
  // NscModel::Predict.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return res[a] < res[b]; });
  json arr = json::array();
  for (std::size_t i : order) {
    arr.push_back({{"class", m.class_names[i]}, {"residual", res[i]}});
  }
  json j = {{"label", m.class_names[order.front()]}, {"residuals", arr}};
  return j.dump(2);
}

void CheckBundleShapes(const fwlbp_model& m) {
  const auto n = static_cast<Eigen::Index>(fwlbp::DescriptorLength(m.cfg.radii));
  fwlbp::Require(m.pipe.pca.input_dim() == n, ErrorCode::kShapeMismatch,
                 "PCA input dimension " + std::to_string(m.pipe.pca.input_dim()) +
                     " does not match descriptor length " + std::to_string(n));
  fwlbp::Require(m.pipe.nsc.feature_dim() == m.pipe.pca.output_dim(),
                 ErrorCode::kShapeMismatch,
                 "NSC feature dimension " + std::to_string(m.pipe.nsc.feature_dim()) +
                     " does not match PCA output dimension " +
                     std::to_string(m.pipe.pca.output_dim()));
  fwlbp::Require(m.class_names.size() == m.pipe.nsc.classes().size(),
                 ErrorCode::kShapeMismatch, "class name count does not match NSC classes");
}

}  // namespace

extern "C" {

const char* fwlbp_version(void) { return "0.1.0"; }

const char* fwlbp_status_name(fwlbp_status status) {
  switch (status) {
    case FWLBP_OK: return "OK";
    case FWLBP_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case FWLBP_ERR_INTERNAL: return "Internal";
    default:
      if (status >= FWLBP_ERR_PARSE && status <= FWLBP_ERR_EXISTS) {
        return fwlbp::ErrorCodeName(static_cast<ErrorCode>(status - 1));
      }
      return "Unknown";
  }
}

const char* fwlbp_last_error(void) { return g_last_error.c_str(); }

void fwlbp_string_free(char* s) { std::free(s); }

unsigned fwlbp_default_jobs(void) { return fwlbp::DefaultJobs(); }

fwlbp_status fwlbp_image_create(size_t width, size_t height, const double* data,
                                fwlbp_image** out) {
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] {
    if (data) {
      std::vector<double> v(data, data + width * height);
      *out = Wrap(fwlbp::GrayImage(width, height, std::move(v)));
    } else {
      *out = Wrap(fwlbp::GrayImage(width, height, 0.0));
    }
  });
}

fwlbp_status fwlbp_image_load(const char* path, fwlbp_image** out) {
  FWLBP_REQUIRE_ARG(path);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] { *out = Wrap(fwlbp::LoadPgmFile(path)); });
}

fwlbp_status fwlbp_image_load_memory(const uint8_t* bytes, size_t size, fwlbp_image** out) {
  FWLBP_REQUIRE_ARG(bytes || size == 0);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] { *out = Wrap(fwlbp::LoadPgm({bytes, size})); });
}

fwlbp_status fwlbp_image_save(const fwlbp_image* img, const char* path, int binary,
                              unsigned maxval) {
  FWLBP_REQUIRE_ARG(img);
  FWLBP_REQUIRE_ARG(path);
  return Guard([&] {
    fwlbp::SavePgmFile(img->img, path,
                       binary ? fwlbp::PgmEncoding::kBinary : fwlbp::PgmEncoding::kAscii,
                       maxval);
  });
}

void fwlbp_image_free(fwlbp_image* img) { delete img; }

size_t fwlbp_image_width(const fwlbp_image* img) { return img ? img->img.width() : 0; }

size_t fwlbp_image_height(const fwlbp_image* img) { return img ? img->img.height() : 0; }

const double* fwlbp_image_data(const fwlbp_image* img) {
  return img ? img->img.data().data() : nullptr;
}

fwlbp_status fwlbp_image_normalize(const fwlbp_image* img, double mean, double stddev,
                                   fwlbp_image** out) {
  FWLBP_REQUIRE_ARG(img);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] { *out = Wrap(fwlbp::NormalizeIntensity(img->img, mean, stddev)); });
}

fwlbp_status fwlbp_image_resample(const fwlbp_image* img, double factor, fwlbp_image** out) {
  FWLBP_REQUIRE_ARG(img);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] { *out = Wrap(fwlbp::Resample(img->img, factor)); });
}

fwlbp_status fwlbp_image_rotate(const fwlbp_image* img, double degrees, fwlbp_image** out) {
  FWLBP_REQUIRE_ARG(img);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] { *out = Wrap(fwlbp::Rotate(img->img, degrees)); });
}

fwlbp_status fwlbp_image_add_noise(const fwlbp_image* img, double snr_db, uint64_t seed,
                                   int variance_power, fwlbp_image** out) {
  FWLBP_REQUIRE_ARG(img);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] {
    *out = Wrap(fwlbp::AddGaussianNoise(
        img->img, snr_db, seed,
        variance_power ? fwlbp::SignalPower::kVariance : fwlbp::SignalPower::kMeanSquare));
  });
}

fwlbp_status fwlbp_fd_image(const fwlbp_image* img, int r_min, int r_max, int linear,
                            fwlbp_image** out) {
  FWLBP_REQUIRE_ARG(img);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] {
    auto fd = fwlbp::ComputeFdImage(
        img->img, r_min, r_max,
        linear ? fwlbp::FdRegression::kLinear : fwlbp::FdRegression::kLogLog);
    *out = Wrap(std::move(fd.values));
  });
}

fwlbp_status fwlbp_config_create(fwlbp_config** out) {
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] { *out = new fwlbp_config{}; });
}

fwlbp_status fwlbp_config_from_json(const char* text, fwlbp_config** out) {
  FWLBP_REQUIRE_ARG(text);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] {
    auto cfg = fwlbp::ConfigFromJson(text);
    cfg.Validate();
    *out = new fwlbp_config{std::move(cfg)};
  });
}

fwlbp_status fwlbp_config_update_json(fwlbp_config* cfg, const char* text) {
  FWLBP_REQUIRE_ARG(cfg);
  FWLBP_REQUIRE_ARG(text);
  return Guard([&] {
    auto next = fwlbp::ConfigFromJson(text, cfg->cfg);
    next.Validate();
    cfg->cfg = std::move(next);
  });
}

fwlbp_status fwlbp_config_to_json(const fwlbp_config* cfg, char** out) {
  FWLBP_REQUIRE_ARG(cfg);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] { *out = Dup(fwlbp::ToJson(cfg->cfg)); });
}

void fwlbp_config_free(fwlbp_config* cfg) { delete cfg; }

fwlbp_status fwlbp_descriptor_length(const fwlbp_config* cfg, size_t* out) {
  FWLBP_REQUIRE_ARG(cfg);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] { *out = fwlbp::DescriptorLength(cfg->cfg.radii); });
}

fwlbp_status fwlbp_extract(const fwlbp_image* img, const fwlbp_config* cfg, double* out,
                           size_t length) {
  FWLBP_REQUIRE_ARG(img);
  FWLBP_REQUIRE_ARG(cfg);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] {
    const std::size_t n = fwlbp::DescriptorLength(cfg->cfg.radii);
    fwlbp::Require(length == n, ErrorCode::kShapeMismatch,
                   "output buffer holds " + std::to_string(length) + " values, descriptor has " +
                       std::to_string(n));
    cfg->cfg.Validate();
    const auto v = fwlbp::ExtractFeatures(img->img, cfg->cfg);
    std::copy(v.begin(), v.end(), out);
  });
}

fwlbp_status fwlbp_extract_files(const char* const* paths, const char* const* labels,
                                 size_t count, const fwlbp_config* cfg, unsigned jobs,
                                 int keep_going, char** csv, char** errors) {
  FWLBP_REQUIRE_ARG(paths || count == 0);
  FWLBP_REQUIRE_ARG(cfg);
  FWLBP_REQUIRE_ARG(csv);
  if (errors) *errors = nullptr;
  fwlbp_status first = FWLBP_OK;
  std::string first_msg;
  const fwlbp_status st = Guard([&] {
    cfg->cfg.Validate();
    struct Item {
      std::vector<double> values;
      bool ok = false;
      fwlbp_status status = FWLBP_OK;
      std::string message;
    };
    std::vector<Item> items(count);
    fwlbp::ParallelFor(count, jobs, [&](std::size_t i) {
      items[i].status = Guard([&] {
        items[i].values = fwlbp::ExtractFeatures(fwlbp::LoadPgmFile(paths[i]), cfg->cfg);
      });
      items[i].ok = items[i].status == FWLBP_OK;
      if (!items[i].ok) items[i].message = g_last_error;
    });
    std::vector<fwlbp::DescriptorRow> rows;
    std::string err_lines;
    for (std::size_t i = 0; i < count; ++i) {
      if (!items[i].ok) {
        if (first == FWLBP_OK) {
          first = items[i].status;
          first_msg = std::string(paths[i]) + ": " + items[i].message;
        }
        err_lines += std::string(paths[i]) + ": " + items[i].message + "\n";
        if (!keep_going) break;
        continue;
      }
      rows.push_back({paths[i], labels && labels[i] ? labels[i] : "", std::move(items[i].values)});
    }
    if (first != FWLBP_OK && !keep_going) return;
    *csv = Dup(fwlbp::DescriptorsToCsv(rows));
    if (errors && !err_lines.empty()) *errors = Dup(err_lines);
  });
  if (st != FWLBP_OK) return st;
  if (first != FWLBP_OK) g_last_error = first_msg;
  if (first != FWLBP_OK && !keep_going) *csv = nullptr;
  return first;
}

fwlbp_status fwlbp_dataset_load(const char* root, fwlbp_dataset** out) {
  FWLBP_REQUIRE_ARG(root);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] { *out = new fwlbp_dataset{fwlbp::LoadDatasetDir(root)}; });
}

void fwlbp_dataset_free(fwlbp_dataset* ds) { delete ds; }

size_t fwlbp_dataset_size(const fwlbp_dataset* ds) { return ds ? ds->ds.samples.size() : 0; }

size_t fwlbp_dataset_class_count(const fwlbp_dataset* ds) {
  return ds ? ds->ds.class_names.size() : 0;
}

const char* fwlbp_dataset_class_name(const fwlbp_dataset* ds, size_t i) {
  if (!ds || i >= ds->ds.class_names.size()) return nullptr;
  return ds->ds.class_names[i].c_str();
}

const char* fwlbp_dataset_sample_id(const fwlbp_dataset* ds, size_t i) {
  if (!ds || i >= ds->ds.samples.size()) return nullptr;
  return ds->ds.samples[i].id.c_str();
}

int fwlbp_dataset_sample_label(const fwlbp_dataset* ds, size_t i) {
  if (!ds || i >= ds->ds.samples.size()) return -1;
  return ds->ds.samples[i].label;
}

fwlbp_status fwlbp_model_fit(const fwlbp_dataset* ds, const fwlbp_config* cfg, unsigned jobs,
                             fwlbp_model** out) {
  FWLBP_REQUIRE_ARG(ds);
  FWLBP_REQUIRE_ARG(cfg);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] {
    auto m = std::make_unique<fwlbp_model>();
    m->cfg = cfg->cfg;
    const Eigen::MatrixXd feats = fwlbp::ExtractDatasetFeatures(ds->ds, m->cfg, jobs);
    m->pipe = fwlbp::FitPipeline(feats, ds->ds.labels(), m->cfg);
    for (int label : m->pipe.nsc.classes()) {
      m->class_names.push_back(ds->ds.class_names.at(static_cast<std::size_t>(label)));
    }
    *out = m.release();
  });
}

fwlbp_status fwlbp_model_save(const fwlbp_model* model, const char* dir, int force) {
  FWLBP_REQUIRE_ARG(model);
  FWLBP_REQUIRE_ARG(dir);
  return Guard([&] {
    const fs::path root(dir);
    const fs::path files[] = {root / "pca.json", root / "nsc.json", root / "config.json"};
    if (!force) {
      for (const auto& f : files) {
        fwlbp::Require(!fs::exists(f), ErrorCode::kExists,
                       f.string() + " exists; pass force to overwrite");
      }
    }
    std::error_code ec;
    fs::create_directories(root, ec);
    fwlbp::Require(!ec && fs::is_directory(root), ErrorCode::kIo,
                   "cannot create directory " + root.string());
    WriteText(files[0], fwlbp::PcaToJson(model->pipe.pca) + "\n");
    WriteText(files[1], fwlbp::NscToJson(model->pipe.nsc, model->class_names) + "\n");
    WriteText(files[2], fwlbp::ToJson(model->cfg) + "\n");
  });
}

fwlbp_status fwlbp_model_load(const char* dir, fwlbp_model** out) {
  FWLBP_REQUIRE_ARG(dir);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] {
    const fs::path root(dir);
    auto m = std::make_unique<fwlbp_model>();
    m->cfg = fwlbp::ConfigFromJson(ReadText(root / "config.json"));
    m->cfg.Validate();
    m->pipe.sqrt = m->cfg.sqrt;
    m->pipe.pca = fwlbp::PcaFromJson(ReadText(root / "pca.json"));
    m->pipe.nsc = fwlbp::NscFromJson(ReadText(root / "nsc.json"), &m->class_names);
    CheckBundleShapes(*m);
    *out = m.release();
  });
}

void fwlbp_model_free(fwlbp_model* model) { delete model; }

size_t fwlbp_model_class_count(const fwlbp_model* model) {
  return model ? model->class_names.size() : 0;
}

fwlbp_status fwlbp_model_predict(const fwlbp_model* model, const fwlbp_image* img,
                                 char** out) {
  FWLBP_REQUIRE_ARG(model);
  FWLBP_REQUIRE_ARG(img);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] {
    CheckBundleShapes(*model);
    const auto v = fwlbp::ExtractFeatures(img->img, model->cfg);
    *out = Dup(PredictJson(*model, Eigen::Map<const Eigen::VectorXd>(
                                       v.data(), static_cast<Eigen::Index>(v.size()))));
  });
}

fwlbp_status fwlbp_model_predict_descriptor(const fwlbp_model* model, const double* descriptor,
                                            size_t length, char** out) {
  FWLBP_REQUIRE_ARG(model);
  FWLBP_REQUIRE_ARG(descriptor);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] {
    CheckBundleShapes(*model);
    fwlbp::Require(static_cast<Eigen::Index>(length) == model->pipe.pca.input_dim(),
                   ErrorCode::kShapeMismatch,
                   "descriptor has " + std::to_string(length) + " values, model expects " +
                       std::to_string(model->pipe.pca.input_dim()));
    *out = Dup(PredictJson(*model, Eigen::Map<const Eigen::VectorXd>(
                                       descriptor, static_cast<Eigen::Index>(length))));
  });
}

fwlbp_status fwlbp_model_config(const fwlbp_model* model, fwlbp_config** out) {
  FWLBP_REQUIRE_ARG(model);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] { *out = new fwlbp_config{model->cfg}; });
}

fwlbp_status fwlbp_eval_cv(const fwlbp_dataset* ds, const fwlbp_config* cfg, unsigned jobs,
                           char** out_json, char** table) {
  FWLBP_REQUIRE_ARG(ds);
  FWLBP_REQUIRE_ARG(cfg);
  FWLBP_REQUIRE_ARG(out_json);
  return Guard([&] {
    const auto rep = fwlbp::CrossValidate(ds->ds, cfg->cfg, jobs);
    std::string j = fwlbp::ReportToJson(rep);
    std::string t = table ? fwlbp::ReportTable(rep) : std::string();
    *out_json = Dup(j);
    if (table) *table = Dup(t);
  });
}

fwlbp_status fwlbp_eval_noise(const fwlbp_dataset* ds, const fwlbp_config* cfg,
                              const double* snr_db, size_t count, unsigned jobs,
                              char** out_json) {
  FWLBP_REQUIRE_ARG(ds);
  FWLBP_REQUIRE_ARG(cfg);
  FWLBP_REQUIRE_ARG(snr_db || count == 0);
  FWLBP_REQUIRE_ARG(out_json);
  return Guard([&] {
    const auto res = fwlbp::NoiseSweep(ds->ds, {snr_db, snr_db + count}, cfg->cfg, jobs);
    json arr = json::array();
    for (const auto& r : res) {
      arr.push_back({{"snr_db", r.snr_db}, {"report", json::parse(fwlbp::ReportToJson(r.report))}});
    }
    *out_json = Dup(arr.dump(2));
  });
}

fwlbp_status fwlbp_eval_rmax(const fwlbp_dataset* ds, const fwlbp_config* cfg,
                             const int* r_max, size_t count, unsigned jobs, char** out_json) {
  FWLBP_REQUIRE_ARG(ds);
  FWLBP_REQUIRE_ARG(cfg);
  FWLBP_REQUIRE_ARG(r_max || count == 0);
  FWLBP_REQUIRE_ARG(out_json);
  return Guard([&] {
    const auto res = fwlbp::RmaxSweep(ds->ds, {r_max, r_max + count}, cfg->cfg, jobs);
    json arr = json::array();
    for (const auto& r : res) {
      if (r.report) {
        arr.push_back({{"r_max", r.r_max}, {"report", json::parse(fwlbp::ReportToJson(*r.report))}});
      } else {
        arr.push_back({{"r_max", r.r_max}, {"error", r.error}});
      }
    }
    *out_json = Dup(arr.dump(2));
  });
}

fwlbp_status fwlbp_eval_invariance(const fwlbp_image* img, const fwlbp_config* cfg, char** csv) {
  FWLBP_REQUIRE_ARG(img);
  FWLBP_REQUIRE_ARG(cfg);
  FWLBP_REQUIRE_ARG(csv);
  return Guard([&] {
    *csv = Dup(fwlbp::InvarianceToCsv(fwlbp::InvarianceReport(img->img, cfg->cfg)));
  });
}

fwlbp_status fwlbp_synth_texture(const char* kind, const char* params_json, size_t size,
                                 uint64_t seed, fwlbp_image** out) {
  FWLBP_REQUIRE_ARG(kind);
  FWLBP_REQUIRE_ARG(out);
  return Guard([&] {
    const auto k = fwlbp::ParseTextureKind(kind);
    fwlbp::Require(k.has_value(), ErrorCode::kInvalidParameter,
                   std::string("unknown texture kind '") + kind + "'");
    const fwlbp::SynthParams p =
        params_json ? fwlbp::SynthParamsFromJson(params_json) : fwlbp::SynthParams{};
    *out = Wrap(fwlbp::SynthTexture(*k, p, size, seed));
  });
}

fwlbp_status fwlbp_synth_corpus(const char* spec_json, const char* out_dir, int force,
                                unsigned jobs, char** manifest) {
  FWLBP_REQUIRE_ARG(out_dir);
  return Guard([&] {
    auto [spec, entries] = fwlbp::ManifestFromJson(spec_json ? spec_json : "{}");
    const fs::path root(out_dir);
    const std::string text = fwlbp::ManifestToJson(spec, entries) + "\n";
    if (!force) {
      fwlbp::Require(!fs::exists(root / "manifest.json"), ErrorCode::kExists,
                     (root / "manifest.json").string() + " exists; pass force to overwrite");
      for (const auto& e : entries) {
        fwlbp::Require(!fs::exists(root / e.id), ErrorCode::kExists,
                       (root / e.id).string() + " exists; pass force to overwrite");
      }
    }
    std::error_code ec;
    for (const auto& c : spec.classes) {
      fs::create_directories(root / c.name, ec);
      fwlbp::Require(!ec, ErrorCode::kIo,
                     "cannot create " + (root / c.name).string() + ": " + ec.message());
    }
    fwlbp::ParallelFor(entries.size(), jobs, [&](std::size_t i) {
      fwlbp::GrayImage img = fwlbp::RenderEntry(spec, entries[i]);
      // Samples sit on the 1/257 grid, so maxval 65535 stores them exactly.
      for (double& v : img.pixels()) v *= 257.0;
      fwlbp::SavePgmFile(img, root / entries[i].id, fwlbp::PgmEncoding::kBinary, 65535);
    });
    WriteText(root / "manifest.json", text);
    if (manifest) *manifest = Dup(text);
  });
}

}  // extern "C"
