#pragma once

#include <vector>

#include "fwlbp/image.hpp"

namespace fwlbp {

struct GaussianKernel1D {
  std::vector<double> taps;  // sums to 1
  double sigma = 1.0;
  // Index of the tap aligned with the output pixel. For even sizes the true
  // center (size-1)/2 is fractional; the kernel then leans one half-pixel
  // toward negative offsets.
  int anchor = 0;
};

// Sampled Gaussian of the given size centered at (size-1)/2, normalized to
// unit sum.
GaussianKernel1D MakeGaussianKernel(int size, double sigma);

// Horizontal then vertical pass with edge replication.
GrayImage ConvolveSeparable(const GrayImage& img, const GaussianKernel1D& k);

struct ScaleSpace {
  std::vector<GrayImage> layers;  // ordered r_min..r_max
  int r_min = 0;
  int r_max = 0;

  int layer_count() const { return r_max - r_min + 1; }
  int scale_of(std::size_t layer) const { return r_min + static_cast<int>(layer); }
};

// Layer r is the image smoothed by a size-r, sigma r/2 Gaussian.
ScaleSpace BuildScaleSpace(const GrayImage& img, int r_min, int r_max);

}  // namespace fwlbp
