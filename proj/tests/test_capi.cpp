// Exercises the shared library through its C header only.
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include <unistd.h>

#include "fwlbp/fwlbp.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct ImageDel {
  void operator()(fwlbp_image* p) const { fwlbp_image_free(p); }
};
struct ConfigDel {
  void operator()(fwlbp_config* p) const { fwlbp_config_free(p); }
};
struct DatasetDel {
  void operator()(fwlbp_dataset* p) const { fwlbp_dataset_free(p); }
};
struct ModelDel {
  void operator()(fwlbp_model* p) const { fwlbp_model_free(p); }
};
using Image = std::unique_ptr<fwlbp_image, ImageDel>;
using Config = std::unique_ptr<fwlbp_config, ConfigDel>;
using DatasetPtr = std::unique_ptr<fwlbp_dataset, DatasetDel>;
using Model = std::unique_ptr<fwlbp_model, ModelDel>;

std::string Take(char* s) {
  std::string out = s ? s : "";
  fwlbp_string_free(s);
  return out;
}

Image MakeImage(size_t w, size_t h, double (*f)(size_t, size_t)) {
  std::vector<double> v(w * h);
  for (size_t y = 0; y < h; ++y)
    for (size_t x = 0; x < w; ++x) v[y * w + x] = f(x, y);
  fwlbp_image* img = nullptr;
  EXPECT_EQ(fwlbp_image_create(w, h, v.data(), &img), FWLBP_OK);
  return Image(img);
}

double Wavy(size_t x, size_t y) {
  return 128 + 50 * std::sin(0.3 * x) * std::cos(0.21 * y) + 20 * std::sin(0.9 * x + 1.7 * y);
}

class CorpusDir : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = fs::temp_directory_path() / ("fwlbp_capi_corpus_" + std::to_string(getpid()));
    fs::remove_all(root_);
    char* manifest = nullptr;
    ASSERT_EQ(fwlbp_synth_corpus(R"({"per_class": 6, "size": 64, "seed": 2})",
                                 root_.c_str(), 0, 0, &manifest),
              FWLBP_OK)
        << fwlbp_last_error();
    manifest_ = Take(manifest);
  }
  static void TearDownTestSuite() { fs::remove_all(root_); }

  static fs::path root_;
  static std::string manifest_;
};
fs::path CorpusDir::root_;
std::string CorpusDir::manifest_;

TEST(CapiBasics, VersionAndStatusNames) {
  EXPECT_STRNE(fwlbp_version(), "");
  EXPECT_STREQ(fwlbp_status_name(FWLBP_OK), "OK");
  EXPECT_STRNE(fwlbp_status_name(FWLBP_ERR_EXISTS), fwlbp_status_name(FWLBP_ERR_IO));
  EXPECT_GE(fwlbp_default_jobs(), 1u);
}

TEST(CapiBasics, NullArgumentsAreRejected) {
  EXPECT_EQ(fwlbp_image_create(2, 2, nullptr, nullptr), FWLBP_ERR_INVALID_ARGUMENT);
  EXPECT_STRNE(fwlbp_last_error(), "");
  EXPECT_EQ(fwlbp_config_to_json(nullptr, nullptr), FWLBP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(fwlbp_image_width(nullptr), 0u);
  fwlbp_image_free(nullptr);
  fwlbp_string_free(nullptr);
}

TEST(CapiImage, CreateInspectAndErrors) {
  fwlbp_image* raw = nullptr;
  ASSERT_EQ(fwlbp_image_create(3, 2, nullptr, &raw), FWLBP_OK);
  Image zero(raw);
  EXPECT_EQ(fwlbp_image_width(zero.get()), 3u);
  EXPECT_EQ(fwlbp_image_height(zero.get()), 2u);
  EXPECT_EQ(fwlbp_image_data(zero.get())[5], 0.0);
  EXPECT_EQ(fwlbp_image_create(0, 2, nullptr, &raw), FWLBP_ERR_DEGENERATE_SIZE);

  fwlbp_image* norm = nullptr;
  EXPECT_EQ(fwlbp_image_normalize(zero.get(), 128, 20, &norm), FWLBP_ERR_CONSTANT_IMAGE);
  EXPECT_NE(std::string(fwlbp_last_error()).size(), 0u);

  const std::string pgm = "P2\n2 1\n255\n7 9\n";
  ASSERT_EQ(fwlbp_image_load_memory(reinterpret_cast<const uint8_t*>(pgm.data()), pgm.size(), &raw),
            FWLBP_OK);
  Image loaded(raw);
  EXPECT_EQ(fwlbp_image_data(loaded.get())[1], 9.0);
  const std::string bad = "P7\n";
  EXPECT_EQ(fwlbp_image_load_memory(reinterpret_cast<const uint8_t*>(bad.data()), bad.size(), &raw),
            FWLBP_ERR_UNSUPPORTED_FORMAT);
  EXPECT_EQ(fwlbp_image_load("/nonexistent/x.pgm", &raw), FWLBP_ERR_IO);
}

TEST(CapiImage, SaveLoadRoundTrip) {
  const Image img = MakeImage(20, 10, [](size_t x, size_t y) { return double((x * 7 + y * 3) % 256); });
  const fs::path p = fs::temp_directory_path() / "fwlbp_capi_rt.pgm";
  ASSERT_EQ(fwlbp_image_save(img.get(), p.c_str(), 1, 255), FWLBP_OK);
  fwlbp_image* raw = nullptr;
  ASSERT_EQ(fwlbp_image_load(p.c_str(), &raw), FWLBP_OK);
  Image back(raw);
  for (size_t i = 0; i < 200; ++i) {
    EXPECT_EQ(fwlbp_image_data(back.get())[i], fwlbp_image_data(img.get())[i]);
  }
  fs::remove(p);
}

TEST(CapiImage, TransformsAndFd) {
  const Image img = MakeImage(64, 64, Wavy);
  fwlbp_image* raw = nullptr;
  ASSERT_EQ(fwlbp_image_resample(img.get(), 0.5, &raw), FWLBP_OK);
  Image half(raw);
  EXPECT_EQ(fwlbp_image_width(half.get()), 32u);
  ASSERT_EQ(fwlbp_image_rotate(img.get(), 90, &raw), FWLBP_OK);
  Image rot(raw);
  EXPECT_EQ(fwlbp_image_width(rot.get()), 64u);
  ASSERT_EQ(fwlbp_image_add_noise(img.get(), 20, 3, 0, &raw), FWLBP_OK);
  Image noisy(raw);
  EXPECT_NE(fwlbp_image_data(noisy.get())[0], fwlbp_image_data(img.get())[0]);

  const Image flat = MakeImage(16, 16, [](size_t, size_t) { return 100.0; });
  ASSERT_EQ(fwlbp_fd_image(flat.get(), 2, 7, 0, &raw), FWLBP_OK);
  Image fd(raw);
  for (size_t i = 0; i < 256; ++i) EXPECT_NEAR(fwlbp_image_data(fd.get())[i], 2.0, 1e-9);
  EXPECT_EQ(fwlbp_fd_image(flat.get(), 2, 2, 0, &raw), FWLBP_ERR_INSUFFICIENT_LAYERS);
}

TEST(CapiSynth, TextureKindsAndErrors) {
  fwlbp_image* raw = nullptr;
  ASSERT_EQ(fwlbp_synth_texture("checker", R"({"period": 8})", 64, 1, &raw), FWLBP_OK);
  Image img(raw);
  EXPECT_EQ(fwlbp_image_width(img.get()), 64u);
  fwlbp_image* again = nullptr;
  ASSERT_EQ(fwlbp_synth_texture("checker", R"({"period": 8})", 64, 1, &again), FWLBP_OK);
  Image twin(again);
  EXPECT_TRUE(std::equal(fwlbp_image_data(img.get()), fwlbp_image_data(img.get()) + 64 * 64,
                         fwlbp_image_data(twin.get())));
  EXPECT_EQ(fwlbp_synth_texture("plasma", nullptr, 64, 1, &raw), FWLBP_ERR_INVALID_PARAMETER);
  EXPECT_EQ(fwlbp_synth_texture("blob", R"({"blob_radius": 0.1})", 64, 1, &raw),
            FWLBP_ERR_INVALID_PARAMETER);
}

TEST(CapiConfig, JsonRoundTripAndUpdate) {
  fwlbp_config* raw = nullptr;
  ASSERT_EQ(fwlbp_config_create(&raw), FWLBP_OK);
  Config cfg(raw);
  char* text = nullptr;
  ASSERT_EQ(fwlbp_config_to_json(cfg.get(), &text), FWLBP_OK);
  const json j = json::parse(Take(text));
  EXPECT_EQ(j["r_max"], 7);
  EXPECT_EQ(j["radii"].size(), 3u);

  ASSERT_EQ(fwlbp_config_update_json(cfg.get(), R"({"r_max": 5, "radii": [{"radius": 1, "samples": 8}]})"),
            FWLBP_OK);
  size_t len = 0;
  ASSERT_EQ(fwlbp_descriptor_length(cfg.get(), &len), FWLBP_OK);
  EXPECT_EQ(len, 256u);
  EXPECT_EQ(fwlbp_config_update_json(cfg.get(), R"({"bogus": 1})"), FWLBP_ERR_INVALID_PARAMETER);
  EXPECT_EQ(fwlbp_config_from_json("{", &raw), FWLBP_ERR_PARSE);
}

TEST(CapiExtract, DescriptorSumsToOne) {
  fwlbp_config* raw = nullptr;
  ASSERT_EQ(fwlbp_config_create(&raw), FWLBP_OK);
  Config cfg(raw);
  size_t len = 0;
  ASSERT_EQ(fwlbp_descriptor_length(cfg.get(), &len), FWLBP_OK);
  ASSERT_EQ(len, 768u);
  const Image img = MakeImage(48, 48, Wavy);
  std::vector<double> d(len);
  ASSERT_EQ(fwlbp_extract(img.get(), cfg.get(), d.data(), d.size()), FWLBP_OK);
  EXPECT_NEAR(std::accumulate(d.begin(), d.end(), 0.0), 1.0, 1e-12);
  EXPECT_EQ(fwlbp_extract(img.get(), cfg.get(), d.data(), 10), FWLBP_ERR_SHAPE_MISMATCH);
}

TEST_F(CorpusDir, SynthRefusesOverwriteUnlessForced) {
  EXPECT_EQ(json::parse(manifest_)["samples"].size(), 24u);
  EXPECT_EQ(fwlbp_synth_corpus(R"({"per_class": 6, "size": 64, "seed": 2})", root_.c_str(), 0, 1,
                               nullptr),
            FWLBP_ERR_EXISTS);
  // Regenerating from the manifest with force reproduces the files.
  const fs::path first = root_ / json::parse(manifest_)["samples"][0]["path"].get<std::string>();
  std::ifstream in(first, std::ios::binary);
  const std::string before((std::istreambuf_iterator<char>(in)), {});
  ASSERT_EQ(fwlbp_synth_corpus(manifest_.c_str(), root_.c_str(), 1, 2, nullptr), FWLBP_OK);
  std::ifstream in2(first, std::ios::binary);
  EXPECT_EQ(std::string((std::istreambuf_iterator<char>(in2)), {}), before);
}

TEST_F(CorpusDir, DatasetFitSaveLoadPredict) {
  fwlbp_dataset* dsraw = nullptr;
  ASSERT_EQ(fwlbp_dataset_load(root_.c_str(), &dsraw), FWLBP_OK) << fwlbp_last_error();
  DatasetPtr ds(dsraw);
  ASSERT_EQ(fwlbp_dataset_size(ds.get()), 24u);
  ASSERT_EQ(fwlbp_dataset_class_count(ds.get()), 4u);
  EXPECT_EQ(fwlbp_dataset_class_name(ds.get(), 99), nullptr);
  EXPECT_EQ(fwlbp_dataset_sample_label(ds.get(), 0), 0);

  fwlbp_config* craw = nullptr;
  ASSERT_EQ(fwlbp_config_from_json(R"({"folds": 3})", &craw), FWLBP_OK);
  Config cfg(craw);
  fwlbp_model* mraw = nullptr;
  ASSERT_EQ(fwlbp_model_fit(ds.get(), cfg.get(), 0, &mraw), FWLBP_OK) << fwlbp_last_error();
  Model model(mraw);
  EXPECT_EQ(fwlbp_model_class_count(model.get()), 4u);

  const fs::path dir = fs::temp_directory_path() / ("fwlbp_capi_model_" + std::to_string(getpid()));
  fs::remove_all(dir);
  ASSERT_EQ(fwlbp_model_save(model.get(), dir.c_str(), 0), FWLBP_OK);
  EXPECT_TRUE(fs::exists(dir / "pca.json"));
  EXPECT_TRUE(fs::exists(dir / "nsc.json"));
  EXPECT_TRUE(fs::exists(dir / "config.json"));
  EXPECT_EQ(fwlbp_model_save(model.get(), dir.c_str(), 0), FWLBP_ERR_EXISTS);
  EXPECT_EQ(fwlbp_model_save(model.get(), dir.c_str(), 1), FWLBP_OK);

  ASSERT_EQ(fwlbp_model_load(dir.c_str(), &mraw), FWLBP_OK) << fwlbp_last_error();
  Model loaded(mraw);
  fwlbp_image* iraw = nullptr;
  const std::string sample = (root_ / fwlbp_dataset_sample_id(ds.get(), 7)).string();
  ASSERT_EQ(fwlbp_image_load(sample.c_str(), &iraw), FWLBP_OK);
  Image img(iraw);
  char* a = nullptr;
  char* b = nullptr;
  ASSERT_EQ(fwlbp_model_predict(model.get(), img.get(), &a), FWLBP_OK);
  ASSERT_EQ(fwlbp_model_predict(loaded.get(), img.get(), &b), FWLBP_OK);
  const std::string ja = Take(a);
  EXPECT_EQ(ja, Take(b));
  const json pred = json::parse(ja);
  EXPECT_EQ(pred["label"], fwlbp_dataset_class_name(ds.get(), fwlbp_dataset_sample_label(ds.get(), 7)));
  ASSERT_EQ(pred["residuals"].size(), 4u);
  for (size_t i = 1; i < 4; ++i) {
    EXPECT_LE(pred["residuals"][i - 1]["residual"].get<double>(),
              pred["residuals"][i]["residual"].get<double>());
  }
  EXPECT_EQ(pred["residuals"][0]["class"], pred["label"]);

  std::vector<double> d(768);
  ASSERT_EQ(fwlbp_extract(img.get(), cfg.get(), d.data(), d.size()), FWLBP_OK);
  char* c = nullptr;
  ASSERT_EQ(fwlbp_model_predict_descriptor(loaded.get(), d.data(), d.size(), &c), FWLBP_OK);
  EXPECT_EQ(Take(c), ja);
  EXPECT_EQ(fwlbp_model_predict_descriptor(loaded.get(), d.data(), 5, &c), FWLBP_ERR_SHAPE_MISMATCH);

  // A bundle whose pieces disagree is refused.
  std::ofstream(dir / "pca.json") << R"({"n":3,"k":1,"mean":[0,0,0],"components":[1,0,0],"eigenvalues":[1]})";
  EXPECT_EQ(fwlbp_model_load(dir.c_str(), &mraw), FWLBP_ERR_SHAPE_MISMATCH);
  fs::remove_all(dir);
}

TEST_F(CorpusDir, EvalEntryPoints) {
  fwlbp_dataset* dsraw = nullptr;
  ASSERT_EQ(fwlbp_dataset_load(root_.c_str(), &dsraw), FWLBP_OK);
  DatasetPtr ds(dsraw);
  fwlbp_config* craw = nullptr;
  ASSERT_EQ(fwlbp_config_from_json(R"({"folds": 3})", &craw), FWLBP_OK);
  Config cfg(craw);

  char* j = nullptr;
  char* table = nullptr;
  ASSERT_EQ(fwlbp_eval_cv(ds.get(), cfg.get(), 0, &j, &table), FWLBP_OK);
  const json rep = json::parse(Take(j));
  EXPECT_EQ(rep["fold_accuracies"].size(), 3u);
  EXPECT_NE(Take(table).find("accuracy"), std::string::npos);

  const double snr[] = {100, 10};
  ASSERT_EQ(fwlbp_eval_noise(ds.get(), cfg.get(), snr, 2, 0, &j), FWLBP_OK);
  const json noise = json::parse(Take(j));
  ASSERT_EQ(noise.size(), 2u);
  EXPECT_EQ(noise[1]["snr_db"], 10.0);

  const int rmax[] = {2, 4};
  ASSERT_EQ(fwlbp_eval_rmax(ds.get(), cfg.get(), rmax, 2, 0, &j), FWLBP_OK);
  const json rm = json::parse(Take(j));
  EXPECT_TRUE(rm[0].contains("error"));
  EXPECT_TRUE(rm[1].contains("report"));

  const Image img = MakeImage(96, 96, Wavy);
  ASSERT_EQ(fwlbp_eval_invariance(img.get(), cfg.get(), &j), FWLBP_OK);
  const std::string csv = Take(j);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 19);
}

TEST_F(CorpusDir, ExtractFilesKeepGoing) {
  fwlbp_config* craw = nullptr;
  ASSERT_EQ(fwlbp_config_create(&craw), FWLBP_OK);
  Config cfg(craw);
  const std::string good = (root_ / json::parse(manifest_)["samples"][0]["path"].get<std::string>()).string();
  const char* paths[] = {good.c_str(), "/nonexistent.pgm", good.c_str()};
  char* csv = nullptr;
  char* errors = nullptr;
  EXPECT_EQ(fwlbp_extract_files(paths, nullptr, 3, cfg.get(), 0, 0, &csv, &errors), FWLBP_ERR_IO);
  fwlbp_string_free(csv);
  fwlbp_string_free(errors);
  csv = errors = nullptr;
  EXPECT_EQ(fwlbp_extract_files(paths, nullptr, 3, cfg.get(), 0, 1, &csv, &errors), FWLBP_ERR_IO);
  const std::string out = Take(csv);
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 3);  // header + 2 rows
  EXPECT_NE(Take(errors).find("/nonexistent.pgm"), std::string::npos);
}

}  // namespace
