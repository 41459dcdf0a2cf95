#include "fwlbp/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fwlbp/error.hpp"

namespace fwlbp {

std::vector<LbpRadius> DefaultRadii() { return {{1.0, 8}, {2.0, 8}, {3.0, 8}}; }

Histogram FractalWeightedHistogram(const LbpImage& lbp, const FdImage& fd) {
  Require(lbp.width() == fd.width() && lbp.height() == fd.height(),
          ErrorCode::kShapeMismatch, "LBP and FD images differ in size");
  Histogram h;
  h.samples = lbp.samples();
  h.kind = HistogramKind::kFractalWeighted;
  h.bins.assign(lbp.code_count(), 0.0);
  const std::size_t b = lbp.border();
  for (std::size_t y = b; y + b < lbp.height(); ++y) {
    for (std::size_t x = b; x + b < lbp.width(); ++x) {
      // Short scale ranges can give negative slopes; a negative weight
      // would make the bin sum meaningless, so it contributes nothing.
      h.bins[lbp.code(x, y)] += std::max(fd.at(x, y), 0.0);
    }
  }
  return h;
}

Histogram LbpCountHistogram(const LbpImage& lbp) {
  Histogram h;
  h.samples = lbp.samples();
  h.kind = HistogramKind::kCount;
  h.bins.assign(lbp.code_count(), 0.0);
  const std::size_t b = lbp.border();
  for (std::size_t y = b; y + b < lbp.height(); ++y) {
    for (std::size_t x = b; x + b < lbp.width(); ++x) {
      h.bins[lbp.code(x, y)] += 1.0;
    }
  }
  return h;
}

std::size_t DescriptorLength(std::span<const LbpRadius> radii) {
  std::size_t n = 0;
  for (const auto& r : radii) n += std::size_t{1} << r.samples;
  return n;
}

void NormalizeL1(std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += std::abs(x);
  if (sum == 0.0) return;
  for (double& x : v) x /= sum;
}

namespace {

template <typename HistFn>
FwlbpDescriptor Concatenate(const GrayImage& img,
                            std::span<const LbpRadius> radii, HistFn&& hist) {
  Require(!radii.empty(), ErrorCode::kInvalidParameter, "no LBP radii given");
  FwlbpDescriptor d;
  d.radii.assign(radii.begin(), radii.end());
  d.values.reserve(DescriptorLength(radii));
  for (const auto& r : radii) {
    const Histogram h = hist(ComputeLbpImage(img, r.radius, r.samples));
    d.values.insert(d.values.end(), h.bins.begin(), h.bins.end());
  }
  NormalizeL1(d.values);
  d.normalized = true;
  return d;
}

}  // namespace

FwlbpDescriptor ExtractFwlbp(const GrayImage& img,
                             std::span<const LbpRadius> radii,
                             const FdRange& fd) {
  const FdImage fd_img = ComputeFdImage(img, fd.r_min, fd.r_max, fd.mode);
  return Concatenate(img, radii, [&](const LbpImage& lbp) {
    return FractalWeightedHistogram(lbp, fd_img);
  });
}

FwlbpDescriptor ExtractLbpHistogram(const GrayImage& img,
                                    std::span<const LbpRadius> radii) {
  return Concatenate(img, radii,
                     [](const LbpImage& lbp) { return LbpCountHistogram(lbp); });
}

double ChiSquareDistance(std::span<const double> a, std::span<const double> b) {
  Require(a.size() == b.size(), ErrorCode::kShapeMismatch,
          "chi-square operands differ in length (" + std::to_string(a.size()) +
              " vs " + std::to_string(b.size()) + ")");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double s = a[i] + b[i];
    if (s == 0.0) continue;
    const double d = a[i] - b[i];
    acc += d * d / s;
  }
  return 0.5 * acc;
}

}  // namespace fwlbp
