#include "fwlbp/lbp.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fwlbp/error.hpp"

namespace fwlbp {
namespace {

constexpr double kLatticeEps = 1e-9;

std::size_t BorderFor(double radius) {
  return static_cast<std::size_t>(std::ceil(radius - kLatticeEps));
}

// Precomputed bilinear footprint of one circular sample.
struct SampleTap {
  std::ptrdiff_t dx0, dy0;  // top-left lattice offset
  double fx, fy;            // fractional parts, 0 when on the lattice
};

std::vector<SampleTap> MakeTaps(double radius, int samples) {
  std::vector<SampleTap> taps(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / samples;
    double ox = radius * std::cos(angle);
    double oy = -radius * std::sin(angle);
    if (std::abs(ox - std::round(ox)) < kLatticeEps) ox = std::round(ox);
    if (std::abs(oy - std::round(oy)) < kLatticeEps) oy = std::round(oy);
    const double fx0 = std::floor(ox);
    const double fy0 = std::floor(oy);
    taps[k] = {static_cast<std::ptrdiff_t>(fx0), static_cast<std::ptrdiff_t>(fy0),
               ox - fx0, oy - fy0};
  }
  return taps;
}

inline double Interpolate(const GrayImage& img, std::size_t x, std::size_t y,
                          const SampleTap& t) {
  const auto x0 = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(x) + t.dx0);
  const auto y0 = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(y) + t.dy0);
  const double v00 = img.at(x0, y0);
  if (t.fx == 0.0 && t.fy == 0.0) return v00;
  if (t.fy == 0.0) return v00 + t.fx * (img.at(x0 + 1, y0) - v00);
  if (t.fx == 0.0) return v00 + t.fy * (img.at(x0, y0 + 1) - v00);
  const double top = v00 + t.fx * (img.at(x0 + 1, y0) - v00);
  const double v01 = img.at(x0, y0 + 1);
  const double bot = v01 + t.fx * (img.at(x0 + 1, y0 + 1) - v01);
  return top + t.fy * (bot - top);
}

void CheckParams(double radius, int samples) {
  Require(radius > 0.0 && std::isfinite(radius), ErrorCode::kInvalidParameter,
          "LBP radius must be positive");
  Require(samples >= 1 && samples <= kMaxLbpSamples,
          ErrorCode::kInvalidParameter,
          "LBP sample count must be in [1, " + std::to_string(kMaxLbpSamples) + "]");
}

}  // namespace

LbpImage::LbpImage(std::size_t width, std::size_t height, double radius,
                   int samples)
    : width_(width),
      height_(height),
      radius_(radius),
      samples_(samples),
      border_(BorderFor(radius)),
      codes_(width * height, 0) {}

std::vector<double> SampleNeighbors(const GrayImage& img, std::size_t x,
                                    std::size_t y, double radius, int samples) {
  CheckParams(radius, samples);
  const std::size_t b = BorderFor(radius);
  Require(x >= b && y >= b && x + b < img.width() && y + b < img.height(),
          ErrorCode::kBorderViolation,
          "pixel (" + std::to_string(x) + "," + std::to_string(y) +
              ") is within the LBP border band");
  const auto taps = MakeTaps(radius, samples);
  std::vector<double> out;
  out.reserve(taps.size());
  for (const auto& t : taps) out.push_back(Interpolate(img, x, y, t));
  return out;
}

LbpImage ComputeLbpImage(const GrayImage& img, double radius, int samples) {
  CheckParams(radius, samples);
  const std::size_t b = BorderFor(radius);
  Require(img.width() > 2 * b && img.height() > 2 * b, ErrorCode::kImageTooSmall,
          "image too small for LBP radius " + std::to_string(radius));
  LbpImage out(img.width(), img.height(), radius, samples);
  const auto taps = MakeTaps(radius, samples);
  for (std::size_t y = b; y + b < img.height(); ++y) {
    for (std::size_t x = b; x + b < img.width(); ++x) {
      const double center = img.at(x, y);
      std::uint32_t code = 0;
      for (int k = 0; k < samples; ++k) {
        if (Interpolate(img, x, y, taps[k]) >= center) code |= 1u << k;
      }
      out.set_code(x, y, code);
    }
  }
  return out;
}

}  // namespace fwlbp
