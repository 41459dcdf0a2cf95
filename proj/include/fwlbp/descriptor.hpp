#pragma once

#include <span>
#include <vector>

#include "fwlbp/fractal.hpp"
#include "fwlbp/lbp.hpp"

namespace fwlbp {

enum class HistogramKind { kFractalWeighted, kCount };

struct Histogram {
  std::vector<double> bins;  // 2^N entries
  int samples = 8;
  HistogramKind kind = HistogramKind::kCount;
};

struct LbpRadius {
  double radius = 1.0;
  int samples = 8;

  friend bool operator==(const LbpRadius&, const LbpRadius&) = default;
};

std::vector<LbpRadius> DefaultRadii();

struct FdRange {
  int r_min = 2;
  int r_max = 7;
  FdRegression mode = FdRegression::kLogLog;
};

struct FwlbpDescriptor {
  std::vector<double> values;
  std::vector<LbpRadius> radii;
  bool normalized = false;
};

// Sum of FD values (negatives clamped to 0) over the valid pixels carrying
// each code.
Histogram FractalWeightedHistogram(const LbpImage& lbp, const FdImage& fd);

Histogram LbpCountHistogram(const LbpImage& lbp);

std::size_t DescriptorLength(std::span<const LbpRadius> radii);

// One FD image, one weighted histogram per radius, concatenated in radius
// order, then L1-normalized as a whole.
FwlbpDescriptor ExtractFwlbp(const GrayImage& img,
                             std::span<const LbpRadius> radii,
                             const FdRange& fd = {});

// Same layout with plain counts instead of FD weights.
FwlbpDescriptor ExtractLbpHistogram(const GrayImage& img,
                                    std::span<const LbpRadius> radii);

// In-place L1 normalization; a zero vector is left unchanged.
void NormalizeL1(std::vector<double>& v);

// 0.5 * sum (a-b)^2 / (a+b); terms with a+b == 0 contribute nothing.
double ChiSquareDistance(std::span<const double> a, std::span<const double> b);

}  // namespace fwlbp
