#include "fwlbp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "fwlbp/error.hpp"
#include "fwlbp/parallel.hpp"
#include "json.hpp"

namespace fwlbp {

namespace fs = std::filesystem;
using nlohmann::json;

SynthParams SynthParamsFromJson(const json& j);

std::vector<int> Dataset::labels() const {
  std::vector<int> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.label);
  return out;
}

GrayImage Dataset::Load(std::size_t i) const {
  const Sample& s = samples.at(i);
  if (s.image) return *s.image;
  return LoadPgmFile(s.path);
}

Dataset LoadDatasetDir(const fs::path& root) {
  std::error_code ec;
  Require(fs::is_directory(root, ec), ErrorCode::kIo,
          "dataset root is not a directory: " + root.string());
  std::vector<fs::path> class_dirs;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_directory()) class_dirs.push_back(e.path());
  }
  std::sort(class_dirs.begin(), class_dirs.end());
  Dataset ds;
  for (const auto& dir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && e.path().extension() == ".pgm") files.push_back(e.path());
    }
    if (files.empty()) continue;
    std::sort(files.begin(), files.end());
    const int label = static_cast<int>(ds.class_names.size());
    ds.class_names.push_back(dir.filename().string());
    for (const auto& f : files) {
      ds.samples.push_back({fs::relative(f, root).generic_string(), label, f, std::nullopt});
    }
  }
  Require(ds.class_names.size() >= 2, ErrorCode::kInsufficientSamples,
          "dataset needs at least 2 class directories containing .pgm files");
  return ds;
}

std::vector<CorpusEntry> PlanCorpus(const CorpusSpec& spec) {
  Require(!spec.classes.empty() && spec.per_class >= 1, ErrorCode::kInvalidParameter,
          "corpus needs at least one class and one sample per class");
  const auto& j = spec.jitter;
  Require(!j.scale || (j.scale_min > 0.0 && j.scale_min <= j.scale_max),
          ErrorCode::kInvalidParameter, "invalid scale jitter range");
  Require(!j.rotation || j.rotation_min <= j.rotation_max,
          ErrorCode::kInvalidParameter, "invalid rotation jitter range");
  Require(spec.sensor_noise >= 0.0, ErrorCode::kInvalidParameter,
          "sensor noise must be non-negative");
  std::vector<CorpusEntry> out;
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    for (int i = 0; i < spec.per_class; ++i) {
      CorpusEntry e;
      e.label = static_cast<int>(c);
      char name[32];
      std::snprintf(name, sizeof(name), "%03d.pgm", i);
      e.id = spec.classes[c].name + "/" + name;
      const std::uint64_t key = MixSeed(spec.seed, c * 100003u + static_cast<std::uint64_t>(i));
      e.seed = MixSeed(key, 1);
      std::mt19937_64 rng(MixSeed(key, 2));
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double us = u(rng), ur = u(rng);
      // Log-uniform scale so zooming in and out are equally likely.
      if (j.scale) {
        e.jitter.scale = std::exp(std::log(j.scale_min) +
                                  us * (std::log(j.scale_max) - std::log(j.scale_min)));
      }
      if (j.rotation) {
        e.jitter.rotation_deg = j.rotation_min + ur * (j.rotation_max - j.rotation_min);
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

GrayImage RenderEntry(const CorpusSpec& spec, const CorpusEntry& e) {
  const auto& cls = spec.classes.at(static_cast<std::size_t>(e.label));
  GrayImage img = SynthSample(cls.kind, cls.params, spec.size, e.seed, e.jitter);
  std::mt19937_64 rng(MixSeed(e.seed, 3));
  std::normal_distribution<double> noise(0.0, spec.sensor_noise);
  // Headroom keeps the noise from clipping (clipped pixels tie again).
  const double lo = std::min(16.0, 4.0 * spec.sensor_noise);
  for (double& v : img.pixels()) {
    v = lo + v * (255.0 - 2.0 * lo) / 255.0;
    if (spec.sensor_noise > 0.0) v += noise(rng);
    v = std::clamp(std::round(v * 257.0), 0.0, 65535.0) / 257.0;
  }
  return img;
}

Dataset GenerateCorpus(const CorpusSpec& spec, unsigned jobs) {
  const auto entries = PlanCorpus(spec);
  Dataset ds;
  for (const auto& c : spec.classes) ds.class_names.push_back(c.name);
  ds.samples.resize(entries.size());
  ParallelFor(entries.size(), jobs, [&](std::size_t i) {
    ds.samples[i] = {entries[i].id, entries[i].label, {}, RenderEntry(spec, entries[i])};
  });
  return ds;
}

namespace {

json ParamsToJson(TextureKind kind, const SynthParams& p) {
  switch (kind) {
    case TextureKind::kSinusoid:
      return {{"frequency", p.frequency}, {"components", p.components},
              {"orientation", p.orientation}};
    case TextureKind::kChecker:
      return {{"period", p.period}, {"orientation", p.orientation}};
    case TextureKind::kFractalNoise:
      return {{"beta", p.beta}};
    case TextureKind::kBlob:
      return {{"blob_radius", p.blob_radius}, {"blob_density", p.blob_density}};
  }
  return json::object();
}

json SpecToJson(const CorpusSpec& spec) {
  json classes = json::array();
  for (const auto& c : spec.classes) {
    classes.push_back({{"name", c.name}, {"kind", TextureKindName(c.kind)},
                       {"params", ParamsToJson(c.kind, c.params)}});
  }
  const auto& j = spec.jitter;
  return {
      {"classes", classes},
      {"per_class", spec.per_class},
      {"size", spec.size},
      {"seed", spec.seed},
      {"sensor_noise", spec.sensor_noise},
      {"jitter",
       {{"scale", j.scale}, {"scale_min", j.scale_min}, {"scale_max", j.scale_max},
        {"rotation", j.rotation}, {"rotation_min", j.rotation_min},
        {"rotation_max", j.rotation_max}}},
  };
}

CorpusSpec SpecFromJson(const json& j) {
  CorpusSpec spec;
  if (j.contains("classes")) {
    spec.classes.clear();
    for (const auto& c : j["classes"]) {
      const auto kind_name = c.at("kind").get<std::string>();
      const auto kind = ParseTextureKind(kind_name);
      Require(kind.has_value(), ErrorCode::kInvalidParameter,
              "unknown texture kind '" + kind_name + "'");
      spec.classes.push_back({c.at("name").get<std::string>(), *kind,
                              SynthParamsFromJson(c.value("params", json::object()))});
    }
  }
  if (j.contains("per_class")) spec.per_class = j["per_class"].get<int>();
  if (j.contains("size")) spec.size = j["size"].get<std::size_t>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("sensor_noise")) spec.sensor_noise = j["sensor_noise"].get<double>();
  if (j.contains("jitter")) {
    const auto& jj = j["jitter"];
    auto& t = spec.jitter;
    t.scale = jj.value("scale", t.scale);
    t.scale_min = jj.value("scale_min", t.scale_min);
    t.scale_max = jj.value("scale_max", t.scale_max);
    t.rotation = jj.value("rotation", t.rotation);
    t.rotation_min = jj.value("rotation_min", t.rotation_min);
    t.rotation_max = jj.value("rotation_max", t.rotation_max);
  }
  return spec;
}

}  // namespace

SynthParams SynthParamsFromJson(const json& j) {
  SynthParams p;
  if (j.contains("frequency")) p.frequency = j["frequency"].get<double>();
  if (j.contains("components")) p.components = j["components"].get<int>();
  if (j.contains("orientation")) p.orientation = j["orientation"].get<double>();
  if (j.contains("period")) p.period = j["period"].get<double>();
  if (j.contains("beta")) p.beta = j["beta"].get<double>();
  if (j.contains("blob_radius")) p.blob_radius = j["blob_radius"].get<double>();
  if (j.contains("blob_density")) p.blob_density = j["blob_density"].get<double>();
  return p;
}

SynthParams SynthParamsFromJson(const std::string& text) {
  try {
    return SynthParamsFromJson(json::parse(text));
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed texture params: ") + e.what());
  }
}

std::string ManifestToJson(const CorpusSpec& spec,
                           const std::vector<CorpusEntry>& entries) {
  json j = SpecToJson(spec);
  json samples = json::array();
  for (const auto& e : entries) {
    samples.push_back({{"path", e.id},
                       {"class", spec.classes.at(static_cast<std::size_t>(e.label)).name},
                       {"label", e.label},
                       {"seed", e.seed},
                       {"scale", e.jitter.scale},
                       {"rotation", e.jitter.rotation_deg}});
  }
  j["samples"] = samples;
  return j.dump(2);
}

std::pair<CorpusSpec, std::vector<CorpusEntry>> ManifestFromJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    CorpusSpec spec = SpecFromJson(j);
    std::vector<CorpusEntry> entries;
    if (j.contains("samples")) {
      for (const auto& s : j["samples"]) {
        CorpusEntry e;
        e.id = s.at("path").get<std::string>();
        e.label = s.at("label").get<int>();
        e.seed = s.at("seed").get<std::uint64_t>();
        e.jitter.scale = s.at("scale").get<double>();
        e.jitter.rotation_deg = s.at("rotation").get<double>();
        Require(e.label >= 0 && static_cast<std::size_t>(e.label) < spec.classes.size(),
                ErrorCode::kParse, "manifest sample has an unknown label");
        entries.push_back(std::move(e));
      }
    } else {
      entries = PlanCorpus(spec);
    }
    return {std::move(spec), std::move(entries)};
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed corpus manifest: ") + e.what());
  }
}

CorpusSpec CorpusSpecFromJson(const std::string& text) {
  try {
    return SpecFromJson(json::parse(text));
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed corpus spec: ") + e.what());
  }
}

}  // namespace fwlbp
