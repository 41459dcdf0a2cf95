#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fwlbp/image.hpp"

namespace fwlbp {

enum class TextureKind { kSinusoid, kChecker, kFractalNoise, kBlob };

const char* TextureKindName(TextureKind kind);
std::optional<TextureKind> ParseTextureKind(const std::string& name);

// Generator parameters. Each kind reads only its own fields.
struct SynthParams {
  // sinusoid
  double frequency = 0.125;  // cycles per pixel
  int components = 2;        // orientations spread evenly over 180 degrees
  double orientation = 0.0;  // degrees; checker also uses it
  // checker
  double period = 16.0;  // pixels per square
  // fractal_noise: power spectrum ~ |f|^-beta
  double beta = 2.6;
  // blob
  double blob_radius = 4.0;
  double blob_density = 1.0;  // expected blob discs per unit area
};

// Deterministic in (kind, params, size, seed). Output is min-max mapped to
// [0, 255]; a generator with no variation yields a constant 128 image.
GrayImage SynthTexture(TextureKind kind, const SynthParams& params,
                       std::size_t size, std::uint64_t seed);

struct SampleJitter {
  double scale = 1.0;
  double rotation_deg = 0.0;
};

// Generates an oversized texture, rotates and rescales it, then crops the
// center so the output contains no rotation fill.
GrayImage SynthSample(TextureKind kind, const SynthParams& params,
                      std::size_t size, std::uint64_t seed,
                      const SampleJitter& jitter);

struct NamedTexture {
  std::string name;
  TextureKind kind;
  SynthParams params;
};

// Twelve textures spanning all generator kinds; the desk-scale stand-in for
// a real texture album.
std::vector<NamedTexture> StandardTextureSet();

// Four well separated classes for classification runs.
std::vector<NamedTexture> StandardClassSet();

// splitmix64 step; used to derive independent per-item seeds.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t salt);

}  // namespace fwlbp
