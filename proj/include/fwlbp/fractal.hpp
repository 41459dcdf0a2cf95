#pragma once

#include <vector>

#include "fwlbp/image.hpp"
#include "fwlbp/scale_space.hpp"

namespace fwlbp {

// Per-pixel fractal dimension estimates. Same layout as GrayImage; kept as a
// distinct type so it cannot be fed where intensities are expected.
struct FdImage {
  GrayImage values;

  std::size_t width() const { return values.width(); }
  std::size_t height() const { return values.height(); }
  double at(std::size_t x, std::size_t y) const { return values.at(x, y); }
};

// Scaled box counts, one layer per scale.
struct IntermediateStack {
  std::vector<GrayImage> layers;
  std::vector<int> scales;  // ascending
};

enum class FdRegression {
  kLogLog,  // log(omega) against log(1/r)
  kLinear,  // omega against r
};

// Differential box count for one scale-space layer. Each pixel looks at the
// r x r window spanning offsets [-ceil((r-1)/2), r-1-ceil((r-1)/2)] (clamped
// to the image), counts b = floor((g_max - g_min) / r) + 1 boxes and stores
// b * (L / r)^2.
GrayImage DbcLayer(const GrayImage& layer, int r, int layer_count);

IntermediateStack BuildIntermediateStack(const ScaleSpace& ss);

// Least-squares slope across the stack at every pixel.
FdImage FdRegressionSlope(const IntermediateStack& stack,
                          FdRegression mode = FdRegression::kLogLog);

FdImage ComputeFdImage(const GrayImage& img, int r_min = 2, int r_max = 7,
                       FdRegression mode = FdRegression::kLogLog);

}  // namespace fwlbp
