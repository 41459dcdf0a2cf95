#include "fwlbp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fwlbp/error.hpp"

namespace fwlbp {
namespace {

constexpr double kPi = std::numbers::pi;

GrayImage MinMaxTo255(std::size_t size, std::vector<double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double a = *lo, b = *hi;
  if (!(b - a > 1e-12 * std::max(1.0, std::abs(a)))) {
    std::fill(v.begin(), v.end(), 128.0);
  } else {
    for (double& x : v) x = (x - a) / (b - a) * 255.0;
  }
  return GrayImage(size, size, std::move(v));
}

std::vector<double> Sinusoid(const SynthParams& p, std::size_t n,
                             std::mt19937_64& rng) {
  Require(p.frequency >= 0.0 && p.components >= 1, ErrorCode::kInvalidParameter,
          "sinusoid needs frequency >= 0 and components >= 1");
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::vector<double> v(n * n, 0.0);
  for (int c = 0; c < p.components; ++c) {
    const double th = (p.orientation + 180.0 * c / p.components) * kPi / 180.0;
    const double kx = 2.0 * kPi * p.frequency * std::cos(th);
    const double ky = 2.0 * kPi * p.frequency * std::sin(th);
    const double ph = phase(rng);
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t x = 0; x < n; ++x) {
        v[y * n + x] += std::cos(kx * static_cast<double>(x) +
                                 ky * static_cast<double>(y) + ph);
      }
    }
  }
  return v;
}

std::vector<double> Checker(const SynthParams& p, std::size_t n,
                            std::mt19937_64& rng) {
  Require(p.period >= 2.0, ErrorCode::kInvalidParameter,
          "checker period must be >= 2 pixels");
  std::uniform_real_distribution<double> offset(0.0, 2.0 * p.period);
  const double ou = offset(rng), ov = offset(rng);
  const double th = p.orientation * kPi / 180.0;
  const double c = std::cos(th), s = std::sin(th);
  constexpr int kSuper = 4;  // 4x4 supersampling softens aliased edges
  std::vector<double> v(n * n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      double acc = 0.0;
      for (int sy = 0; sy < kSuper; ++sy) {
        for (int sx = 0; sx < kSuper; ++sx) {
          const double px = static_cast<double>(x) + (sx + 0.5) / kSuper;
          const double py = static_cast<double>(y) + (sy + 0.5) / kSuper;
          const double u = (px * c + py * s + ou) / p.period;
          const double w = (-px * s + py * c + ov) / p.period;
          const auto parity = (static_cast<long long>(std::floor(u)) +
                               static_cast<long long>(std::floor(w))) & 1;
          acc += parity ? 1.0 : 0.0;
        }
      }
      v[y * n + x] = acc / (kSuper * kSuper);
    }
  }
  return v;
}

// Spectral synthesis: random complex amplitudes shaped by |f|^(-beta/2),
// inverse DFT along rows then columns.
std::vector<double> FractalNoise(const SynthParams& p, std::size_t n,
                                 std::mt19937_64& rng) {
  Require(p.beta > 0.0 && p.beta < 6.0, ErrorCode::kInvalidParameter,
          "fractal_noise beta must be in (0, 6)");
  using cd = std::complex<double>;
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cd> spec(n * n);
  const auto signed_freq = [n](std::size_t k) {
    const auto kk = static_cast<double>(k);
    return k <= n / 2 ? kk : kk - static_cast<double>(n);
  };
  for (std::size_t ky = 0; ky < n; ++ky) {
    for (std::size_t kx = 0; kx < n; ++kx) {
      const double fx = signed_freq(kx), fy = signed_freq(ky);
      const double f = std::hypot(fx, fy);
      const double re = gauss(rng), im = gauss(rng);
      spec[ky * n + kx] = f == 0.0 ? cd(0.0, 0.0)
                                   : cd(re, im) * std::pow(f, -p.beta / 2.0);
    }
  }
  std::vector<cd> twiddle(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    twiddle[k] = cd(std::cos(a), std::sin(a));
  }
  std::vector<cd> tmp(n * n);
  for (std::size_t ky = 0; ky < n; ++ky) {
    for (std::size_t x = 0; x < n; ++x) {
      cd acc(0.0, 0.0);
      for (std::size_t kx = 0; kx < n; ++kx) {
        acc += spec[ky * n + kx] * twiddle[(kx * x) % n];
      }
      tmp[ky * n + x] = acc;
    }
  }
  std::vector<double> v(n * n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      cd acc(0.0, 0.0);
      for (std::size_t ky = 0; ky < n; ++ky) {
        acc += tmp[ky * n + x] * twiddle[(ky * y) % n];
      }
      v[y * n + x] = acc.real();
    }
  }
  return v;
}

std::vector<double> Blobs(const SynthParams& p, std::size_t n,
                          std::mt19937_64& rng) {
  Require(p.blob_radius > 0.5 && p.blob_density > 0.0,
          ErrorCode::kInvalidParameter,
          "blob radius must exceed 0.5 px and density must be positive");
  const double area = static_cast<double>(n * n);
  const double disc = kPi * p.blob_radius * p.blob_radius;
  std::poisson_distribution<long> count_dist(p.blob_density * area / disc);
  const long count = std::max<long>(1, count_dist(rng));
  std::uniform_real_distribution<double> pos(0.0, static_cast<double>(n));
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::vector<double> v(n * n, 0.0);
  const double inv2s2 = 1.0 / (2.0 * p.blob_radius * p.blob_radius);
  const auto reach = static_cast<long>(std::ceil(3.0 * p.blob_radius));
  const auto ln = static_cast<long>(n);
  for (long i = 0; i < count; ++i) {
    const double bx = pos(rng), by = pos(rng), a = amp(rng);
    const long x0 = std::max(0L, static_cast<long>(bx) - reach);
    const long x1 = std::min(ln - 1, static_cast<long>(bx) + reach);
    const long y0 = std::max(0L, static_cast<long>(by) - reach);
    const long y1 = std::min(ln - 1, static_cast<long>(by) + reach);
    for (long y = y0; y <= y1; ++y) {
      for (long x = x0; x <= x1; ++x) {
        const double dx = static_cast<double>(x) - bx;
        const double dy = static_cast<double>(y) - by;
        v[static_cast<std::size_t>(y * ln + x)] +=
            a * std::exp(-(dx * dx + dy * dy) * inv2s2);
      }
    }
  }
  return v;
}

}  // namespace

const char* TextureKindName(TextureKind kind) {
  switch (kind) {
    case TextureKind::kSinusoid: return "sinusoid";
    case TextureKind::kChecker: return "checker";
    case TextureKind::kFractalNoise: return "fractal_noise";
    case TextureKind::kBlob: return "blob";
  }
  return "unknown";
}

std::optional<TextureKind> ParseTextureKind(const std::string& name) {
  for (auto k : {TextureKind::kSinusoid, TextureKind::kChecker,
                 TextureKind::kFractalNoise, TextureKind::kBlob}) {
    if (name == TextureKindName(k)) return k;
  }
  return std::nullopt;
}

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

GrayImage SynthTexture(TextureKind kind, const SynthParams& params,
                       std::size_t size, std::uint64_t seed) {
  Require(size >= 64, ErrorCode::kInvalidParameter,
          "synthetic textures must be at least 64x64");
  std::mt19937_64 rng(seed);
  switch (kind) {
    case TextureKind::kSinusoid: return MinMaxTo255(size, Sinusoid(params, size, rng));
    case TextureKind::kChecker: return MinMaxTo255(size, Checker(params, size, rng));
    case TextureKind::kFractalNoise: return MinMaxTo255(size, FractalNoise(params, size, rng));
    case TextureKind::kBlob: return MinMaxTo255(size, Blobs(params, size, rng));
  }
  Fail(ErrorCode::kInvalidParameter, "unknown texture kind");
}

GrayImage SynthSample(TextureKind kind, const SynthParams& params,
                      std::size_t size, std::uint64_t seed,
                      const SampleJitter& jitter) {
  Require(jitter.scale > 0.0, ErrorCode::kInvalidParameter,
          "jitter scale must be positive");
  const bool rotated = std::fmod(std::abs(jitter.rotation_deg), 360.0) != 0.0;
  const double need = static_cast<double>(size) / jitter.scale *
                      (rotated ? std::numbers::sqrt2 : 1.0);
  const auto base = std::max<std::size_t>(
      64, static_cast<std::size_t>(std::ceil(need)) + 4);
  GrayImage img = SynthTexture(kind, params, base, seed);
  if (rotated) img = Rotate(img, jitter.rotation_deg);
  if (jitter.scale != 1.0) img = Resample(img, jitter.scale);
  return CropCenter(img, size, size);
}

std::vector<NamedTexture> StandardTextureSet() {
  std::vector<NamedTexture> set;
  auto add = [&set](std::string name, TextureKind kind, SynthParams p) {
    set.push_back({std::move(name), kind, p});
  };
  SynthParams p;
  for (double beta : {2.0, 2.4, 2.8, 3.2}) {
    p = {};
    p.beta = beta;
    add("fractal_b" + std::to_string(beta).substr(0, 3), TextureKind::kFractalNoise, p);
  }
  for (double radius : {2.0, 4.0, 8.0}) {
    p = {};
    p.blob_radius = radius;
    add("blob_r" + std::to_string(static_cast<int>(radius)), TextureKind::kBlob, p);
  }
  p = {};
  p.frequency = 1.0 / 8.0;
  p.components = 2;
  add("plaid_f8", TextureKind::kSinusoid, p);
  p = {};
  p.frequency = 1.0 / 14.0;
  p.components = 3;
  p.orientation = 10.0;
  add("tri_f14", TextureKind::kSinusoid, p);
  p = {};
  p.frequency = 1.0 / 6.0;
  p.components = 1;
  p.orientation = 30.0;
  add("stripe_f6", TextureKind::kSinusoid, p);
  p = {};
  p.period = 8.0;
  add("checker_p8", TextureKind::kChecker, p);
  p = {};
  p.period = 16.0;
  p.orientation = 20.0;
  add("checker_p16", TextureKind::kChecker, p);
  return set;
}

std::vector<NamedTexture> StandardClassSet() {
  std::vector<NamedTexture> set;
  SynthParams p;
  p.beta = 2.4;
  set.push_back({"fractal", TextureKind::kFractalNoise, p});
  p = {};
  p.blob_radius = 5.0;
  set.push_back({"blob", TextureKind::kBlob, p});
  p = {};
  p.frequency = 1.0 / 10.0;
  p.components = 2;
  set.push_back({"plaid", TextureKind::kSinusoid, p});
  p = {};
  p.period = 12.0;
  set.push_back({"checker", TextureKind::kChecker, p});
  return set;
}

}  // namespace fwlbp
