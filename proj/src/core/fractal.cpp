#include "fwlbp/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fwlbp/error.hpp"

namespace fwlbp {
namespace {

// Sliding extrema along one axis over offsets [-lo, hi], clamped at borders.
void WindowExtrema(const std::vector<double>& src_max,
                   const std::vector<double>& src_min, std::size_t w,
                   std::size_t h, int lo, int hi, bool horizontal,
                   std::vector<double>* out_max, std::vector<double>* out_min) {
  const auto iw = static_cast<std::ptrdiff_t>(w);
  const auto ih = static_cast<std::ptrdiff_t>(h);
  for (std::ptrdiff_t y = 0; y < ih; ++y) {
    for (std::ptrdiff_t x = 0; x < iw; ++x) {
      double mx = -INFINITY;
      double mn = INFINITY;
      for (std::ptrdiff_t d = -lo; d <= hi; ++d) {
        std::ptrdiff_t sx = x, sy = y;
        if (horizontal) sx += d; else sy += d;
        if (sx < 0 || sy < 0 || sx >= iw || sy >= ih) continue;
        const std::size_t idx = static_cast<std::size_t>(sy * iw + sx);
        mx = std::max(mx, src_max[idx]);
        mn = std::min(mn, src_min[idx]);
      }
      const std::size_t o = static_cast<std::size_t>(y * iw + x);
      (*out_max)[o] = mx;
      (*out_min)[o] = mn;
    }
  }
}

}  // namespace

GrayImage DbcLayer(const GrayImage& layer, int r, int layer_count) {
  Require(r >= 2, ErrorCode::kInvalidParameter, "DBC scale r must be >= 2");
  Require(layer_count >= 1, ErrorCode::kInvalidParameter,
          "layer count must be >= 1");
  Require(layer.width() >= static_cast<std::size_t>(r) &&
              layer.height() >= static_cast<std::size_t>(r),
          ErrorCode::kImageTooSmall,
          "layer is smaller than the DBC window r=" + std::to_string(r));
  const int lo = r / 2;  // ceil((r - 1) / 2)
  const int hi = r - 1 - lo;
  const std::size_t w = layer.width();
  const std::size_t h = layer.height();

  std::vector<double> row_max(layer.size()), row_min(layer.size());
  WindowExtrema(layer.data(), layer.data(), w, h, lo, hi, true, &row_max,
                &row_min);
  std::vector<double> gmax(layer.size()), gmin(layer.size());
  WindowExtrema(row_max, row_min, w, h, lo, hi, false, &gmax, &gmin);

  const double rr = static_cast<double>(r);
  const double scale = (layer_count / rr) * (layer_count / rr);
  std::vector<double> out(layer.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double boxes = std::floor((gmax[i] - gmin[i]) / rr) + 1.0;
    out[i] = boxes * scale;
  }
  return GrayImage(w, h, std::move(out));
}

IntermediateStack BuildIntermediateStack(const ScaleSpace& ss) {
  Require(!ss.layers.empty() &&
              ss.layers.size() == static_cast<std::size_t>(ss.layer_count()),
          ErrorCode::kInvalidParameter, "scale space is empty or inconsistent");
  IntermediateStack stack;
  const int count = ss.layer_count();
  for (std::size_t i = 0; i < ss.layers.size(); ++i) {
    const int r = ss.scale_of(i);
    stack.layers.push_back(DbcLayer(ss.layers[i], r, count));
    stack.scales.push_back(r);
  }
  return stack;
}

FdImage FdRegressionSlope(const IntermediateStack& stack, FdRegression mode) {
  const std::size_t count = stack.layers.size();
  Require(count >= 2, ErrorCode::kInsufficientLayers,
          "FD regression needs at least 2 scales (got " +
              std::to_string(count) + ")");
  Require(stack.scales.size() == count, ErrorCode::kShapeMismatch,
          "stack scales and layers differ in length");
  const std::size_t w = stack.layers.front().width();
  const std::size_t h = stack.layers.front().height();
  for (const auto& l : stack.layers) {
    Require(l.width() == w && l.height() == h, ErrorCode::kShapeMismatch,
            "stack layers differ in size");
  }

  const bool loglog = mode == FdRegression::kLogLog;
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = static_cast<double>(stack.scales[i]);
    t[i] = loglog ? std::log(1.0 / r) : r;
  }
  const double n = static_cast<double>(count);
  double sum_t = 0.0, sum_tt = 0.0;
  for (double v : t) {
    sum_t += v;
    sum_tt += v * v;
  }
  const double psi1 = sum_tt - sum_t * sum_t / n;
  Require(psi1 > 0.0, ErrorCode::kInsufficientLayers,
          "scales are degenerate (zero variance)");

  std::vector<double> out(w * h);
  for (std::size_t p = 0; p < out.size(); ++p) {
    double sum_y = 0.0, sum_ty = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double omega = stack.layers[i].pixels()[p];
      const double y = loglog ? std::log(omega) : omega;
      sum_y += y;
      sum_ty += t[i] * y;
    }
    const double psi2 = sum_ty - sum_t * sum_y / n;
    out[p] = psi2 / psi1;
  }
  return FdImage{GrayImage(w, h, std::move(out))};
}

FdImage ComputeFdImage(const GrayImage& img, int r_min, int r_max,
                       FdRegression mode) {
  Require(r_min >= 2, ErrorCode::kInvalidParameter, "r_min must be >= 2");
  return FdRegressionSlope(BuildIntermediateStack(BuildScaleSpace(img, r_min, r_max)),
                           mode);
}

}  // namespace fwlbp
