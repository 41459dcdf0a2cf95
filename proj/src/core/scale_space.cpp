#include "fwlbp/scale_space.hpp"

#include <cmath>
#include <string>

#include "fwlbp/error.hpp"

namespace fwlbp {

GaussianKernel1D MakeGaussianKernel(int size, double sigma) {
  Require(size >= 1, ErrorCode::kInvalidParameter, "kernel size must be >= 1");
  Require(sigma > 0.0 && std::isfinite(sigma), ErrorCode::kInvalidParameter,
          "kernel sigma must be positive");
  GaussianKernel1D k;
  k.sigma = sigma;
  k.anchor = size / 2;  // ceil((size - 1) / 2)
  k.taps.resize(static_cast<std::size_t>(size));
  const double center = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - center;
    k.taps[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += k.taps[i];
  }
  for (double& t : k.taps) t /= sum;
  return k;
}

GrayImage ConvolveSeparable(const GrayImage& img, const GaussianKernel1D& k) {
  const auto w = static_cast<std::ptrdiff_t>(img.width());
  const auto h = static_cast<std::ptrdiff_t>(img.height());
  const auto n = static_cast<std::ptrdiff_t>(k.taps.size());
  const std::ptrdiff_t anchor = k.anchor;

  std::vector<double> tmp(img.size());
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t i = 0; i < n; ++i) {
        acc += k.taps[i] * img.clamped(x + i - anchor, y);
      }
      tmp[y * w + x] = acc;
    }
  }
  GrayImage horiz(img.width(), img.height(), std::move(tmp));

  std::vector<double> out(img.size());
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t i = 0; i < n; ++i) {
        acc += k.taps[i] * horiz.clamped(x, y + i - anchor);
      }
      out[y * w + x] = acc;
    }
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

ScaleSpace BuildScaleSpace(const GrayImage& img, int r_min, int r_max) {
  Require(r_min >= 1 && r_min <= r_max, ErrorCode::kInvalidParameter,
          "scale range must satisfy 1 <= r_min <= r_max");
  Require(img.width() >= static_cast<std::size_t>(r_max) &&
              img.height() >= static_cast<std::size_t>(r_max),
          ErrorCode::kImageTooSmall,
          "image is smaller than r_max=" + std::to_string(r_max));
  ScaleSpace ss;
  ss.r_min = r_min;
  ss.r_max = r_max;
  ss.layers.reserve(static_cast<std::size_t>(r_max - r_min + 1));
  for (int r = r_min; r <= r_max; ++r) {
    ss.layers.push_back(ConvolveSeparable(img, MakeGaussianKernel(r, r / 2.0)));
  }
  return ss;
}

}  // namespace fwlbp
