#include "fwlbp/image.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fwlbp/error.hpp"

namespace fwlbp {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kTruncated: return "TruncatedError";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kConstantImage: return "ConstantImageError";
    case ErrorCode::kDegenerateSize: return "DegenerateSizeError";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kImageTooSmall: return "ImageTooSmall";
    case ErrorCode::kInsufficientLayers: return "InsufficientLayers";
    case ErrorCode::kBorderViolation: return "BorderViolation";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kEmptyModel: return "EmptyModel";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kExists: return "AlreadyExists";
  }
  return "Unknown";
}

GrayImage::GrayImage(std::size_t width, std::size_t height, double fill)
    : GrayImage(width, height, std::vector<double>(width * height, fill)) {}

GrayImage::GrayImage(std::size_t width, std::size_t height,
                     std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  Require(width_ >= 1 && height_ >= 1, ErrorCode::kDegenerateSize,
          "image dimensions must be at least 1x1");
  Require(data_.size() == width_ * height_, ErrorCode::kShapeMismatch,
          "pixel buffer length does not match width*height");
  for (double v : data_) {
    Require(std::isfinite(v), ErrorCode::kDomain, "non-finite pixel value");
  }
}

double GrayImage::clamped(std::ptrdiff_t x, std::ptrdiff_t y) const {
  const auto w = static_cast<std::ptrdiff_t>(width_);
  const auto h = static_cast<std::ptrdiff_t>(height_);
  x = std::clamp<std::ptrdiff_t>(x, 0, w - 1);
  y = std::clamp<std::ptrdiff_t>(y, 0, h - 1);
  return data_[static_cast<std::size_t>(y) * width_ + static_cast<std::size_t>(x)];
}

double GrayImage::mean() const {
  if (data_.empty()) return 0.0;
  double sum = 0.0;
  for (double v : data_) sum += v;
  return sum / static_cast<double>(data_.size());
}

double GrayImage::stddev() const {
  if (data_.empty()) return 0.0;
  const double mu = mean();
  double acc = 0.0;
  for (double v : data_) acc += (v - mu) * (v - mu);
  return std::sqrt(acc / static_cast<double>(data_.size()));
}

double SampleBilinear(const GrayImage& img, double x, double y) {
  const double maxx = static_cast<double>(img.width() - 1);
  const double maxy = static_cast<double>(img.height() - 1);
  x = std::clamp(x, 0.0, maxx);
  y = std::clamp(y, 0.0, maxy);
  const auto x0 = static_cast<std::size_t>(std::floor(x));
  const auto y0 = static_cast<std::size_t>(std::floor(y));
  const std::size_t x1 = std::min(x0 + 1, img.width() - 1);
  const std::size_t y1 = std::min(y0 + 1, img.height() - 1);
  const double fx = x - static_cast<double>(x0);
  const double fy = y - static_cast<double>(y0);
  // Lerp form keeps equal corner values exact.
  const double top = img.at(x0, y0) + fx * (img.at(x1, y0) - img.at(x0, y0));
  const double bot = img.at(x0, y1) + fx * (img.at(x1, y1) - img.at(x0, y1));
  return top + fy * (bot - top);
}

GrayImage NormalizeIntensity(const GrayImage& img, double target_mean,
                             double target_std) {
  Require(img.size() >= 2, ErrorCode::kDegenerateSize,
          "normalization needs at least 2 pixels");
  Require(target_std > 0.0 && std::isfinite(target_std) &&
              std::isfinite(target_mean),
          ErrorCode::kInvalidParameter, "target std must be positive");
  const double mu = img.mean();
  const double sd = img.stddev();
  Require(sd > 0.0, ErrorCode::kConstantImage,
          "cannot normalize a constant image");
  const double gain = target_std / sd;
  std::vector<double> out(img.size());
  auto src = img.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (src[i] - mu) * gain + target_mean;
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage Resample(const GrayImage& img, double factor) {
  Require(factor > 0.0 && std::isfinite(factor), ErrorCode::kInvalidParameter,
          "resample factor must be positive");
  const auto out_w = static_cast<std::size_t>(
      std::llround(static_cast<double>(img.width()) * factor));
  const auto out_h = static_cast<std::size_t>(
      std::llround(static_cast<double>(img.height()) * factor));
  Require(out_w >= 2 && out_h >= 2, ErrorCode::kDegenerateSize,
          "resampled image would be smaller than 2x2");
  const double sx = static_cast<double>(img.width()) / static_cast<double>(out_w);
  const double sy = static_cast<double>(img.height()) / static_cast<double>(out_h);
  std::vector<double> out(out_w * out_h);
  for (std::size_t y = 0; y < out_h; ++y) {
    const double src_y = (static_cast<double>(y) + 0.5) * sy - 0.5;
    for (std::size_t x = 0; x < out_w; ++x) {
      const double src_x = (static_cast<double>(x) + 0.5) * sx - 0.5;
      out[y * out_w + x] = SampleBilinear(img, src_x, src_y);
    }
  }
  return GrayImage(out_w, out_h, std::move(out));
}

GrayImage Rotate(const GrayImage& img, double degrees) {
  const double theta = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double cx = (static_cast<double>(img.width()) - 1.0) / 2.0;
  const double cy = (static_cast<double>(img.height()) - 1.0) / 2.0;
  const double maxx = static_cast<double>(img.width() - 1);
  const double maxy = static_cast<double>(img.height() - 1);
  const double fill = img.mean();
  constexpr double kSlack = 1e-9;
  std::vector<double> out(img.size());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      // Work in y-up coordinates so positive angles turn counter-clockwise
      // on screen.
      const double dx = static_cast<double>(x) - cx;
      const double dy = cy - static_cast<double>(y);
      const double src_x = cx + (dx * c + dy * s);
      const double src_y = cy - (-dx * s + dy * c);
      double v = fill;
      if (src_x >= -kSlack && src_x <= maxx + kSlack && src_y >= -kSlack &&
          src_y <= maxy + kSlack) {
        v = SampleBilinear(img, src_x, src_y);
      }
      out[y * img.width() + x] = v;
    }
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage AddGaussianNoise(const GrayImage& img, double snr_db,
                           std::uint64_t seed, SignalPower kind) {
  Require(!std::isnan(snr_db), ErrorCode::kInvalidParameter, "SNR is NaN");
  if (std::isinf(snr_db) && snr_db > 0) return img;
  double power = 0.0;
  if (kind == SignalPower::kVariance) {
    const double s = img.stddev();
    power = s * s;
  } else {
    for (double v : img.pixels()) power += v * v;
    power /= static_cast<double>(img.size());
  }
  Require(power > 0.0, ErrorCode::kConstantImage,
          "zero signal power: SNR is undefined");
  const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> out(img.data());
  for (double& v : out) v += noise(rng);
  return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage CropCenter(const GrayImage& img, std::size_t width,
                     std::size_t height) {
  Require(width >= 1 && height >= 1 && width <= img.width() &&
              height <= img.height(),
          ErrorCode::kDegenerateSize, "crop does not fit inside the image");
  const std::size_t x0 = (img.width() - width) / 2;
  const std::size_t y0 = (img.height() - height) / 2;
  std::vector<double> out(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      out[y * width + x] = img.at(x0 + x, y0 + y);
    }
  }
  return GrayImage(width, height, std::move(out));
}

std::size_t InscribedSquareSide(const GrayImage& img) {
  const double d = static_cast<double>(std::min(img.width(), img.height()) - 1);
  // Square inscribed in the disc of diameter d, minus one pixel for the
  // bilinear footprint.
  const auto side = static_cast<std::size_t>(std::floor(d / std::numbers::sqrt2));
  return std::max<std::size_t>(side > 1 ? side - 1 : 1, 1);
}

}  // namespace fwlbp
