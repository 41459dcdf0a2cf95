#pragma once

#include <cstdint>
#include <vector>

#include "fwlbp/image.hpp"

namespace fwlbp {

inline constexpr int kMaxLbpSamples = 24;

// LBP code image for one (radius, samples) pair. Pixels closer than
// ceil(radius) to any border have no code and are skipped by histograms.
class LbpImage {
 public:
  LbpImage(std::size_t width, std::size_t height, double radius, int samples);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  double radius() const noexcept { return radius_; }
  int samples() const noexcept { return samples_; }
  std::size_t border() const noexcept { return border_; }
  std::uint32_t code_count() const noexcept { return 1u << samples_; }

  bool valid(std::size_t x, std::size_t y) const noexcept {
    return x >= border_ && y >= border_ && x + border_ < width_ &&
           y + border_ < height_;
  }
  std::size_t valid_count() const noexcept {
    return (width_ - 2 * border_) * (height_ - 2 * border_);
  }

  std::uint32_t code(std::size_t x, std::size_t y) const {
    return codes_[y * width_ + x];
  }
  void set_code(std::size_t x, std::size_t y, std::uint32_t c) {
    codes_[y * width_ + x] = c;
  }

 private:
  std::size_t width_;
  std::size_t height_;
  double radius_;
  int samples_;
  std::size_t border_;
  std::vector<std::uint32_t> codes_;
};

// N samples on a circle of radius R around (x, y). Sample k sits at angle
// 2*pi*k/N measured counter-clockwise from east, i.e. offset
// (R cos, -R sin) in y-down image coordinates. Off-lattice positions are
// bilinearly interpolated.
std::vector<double> SampleNeighbors(const GrayImage& img, std::size_t x,
                                    std::size_t y, double radius, int samples);

// code = sum_k 2^k [P_k >= center]
LbpImage ComputeLbpImage(const GrayImage& img, double radius, int samples);

}  // namespace fwlbp
