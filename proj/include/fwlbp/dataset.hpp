#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fwlbp/image.hpp"
#include "fwlbp/synth.hpp"

namespace fwlbp {

struct Sample {
  std::string id;                  // relative path or generated name
  int label = 0;                   // index into Dataset::class_names
  std::filesystem::path path;      // empty for in-memory samples
  std::optional<GrayImage> image;  // set for in-memory samples
};

struct Dataset {
  std::vector<Sample> samples;
  std::vector<std::string> class_names;

  std::vector<int> labels() const;
  GrayImage Load(std::size_t i) const;
};

// root/<class>/*.pgm; classes and files in lexicographic order.
Dataset LoadDatasetDir(const std::filesystem::path& root);

struct JitterRange {
  bool scale = false;
  double scale_min = 0.7;
  double scale_max = 1.4;
  bool rotation = false;
  double rotation_min = 0.0;
  double rotation_max = 90.0;
};

struct CorpusSpec {
  std::vector<NamedTexture> classes = StandardClassSet();
  int per_class = 20;
  std::size_t size = 128;
  std::uint64_t seed = 1;
  JitterRange jitter;
  // Additive Gaussian noise std (grey levels) applied before 16-bit
  // quantization. Rendered textures otherwise have exactly flat patches
  // whose LBP ties flip under any perturbation.
  double sensor_noise = 1.0;
};

struct CorpusEntry {
  std::string id;
  int label = 0;
  std::uint64_t seed = 0;
  SampleJitter jitter;
};

// Draws per-sample seeds and jitter deterministically from spec.seed.
std::vector<CorpusEntry> PlanCorpus(const CorpusSpec& spec);
// Rendered, sensor-noised and rounded to the 16-bit grid (steps of 1/257),
// so a maxval-65535 PGM holds each sample exactly.
GrayImage RenderEntry(const CorpusSpec& spec, const CorpusEntry& e);

// In-memory dataset with every image rendered.
Dataset GenerateCorpus(const CorpusSpec& spec, unsigned jobs = 0);

std::string ManifestToJson(const CorpusSpec& spec,
                           const std::vector<CorpusEntry>& entries);
std::pair<CorpusSpec, std::vector<CorpusEntry>> ManifestFromJson(
    const std::string& text);

// Partial corpus description: {"classes":[{"name","kind","params":{...}}],
// "per_class","size","seed","jitter":{...}}; absent keys keep defaults.
CorpusSpec CorpusSpecFromJson(const std::string& text);

// {"frequency", "components", ...}; absent keys keep SynthParams defaults.
SynthParams SynthParamsFromJson(const std::string& text);

}  // namespace fwlbp
