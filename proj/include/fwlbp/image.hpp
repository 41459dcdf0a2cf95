#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fwlbp {

// Row-major grayscale image of 64-bit reals. Intensities are nominally in
// [0, 255] but are left unbounded; quantization only happens on write.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(std::size_t width, std::size_t height, double fill = 0.0);
  GrayImage(std::size_t width, std::size_t height, std::vector<double> data);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
  double& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }

  // Edge-replicating access for signed coordinates.
  double clamped(std::ptrdiff_t x, std::ptrdiff_t y) const;

  std::span<const double> pixels() const noexcept { return data_; }
  std::span<double> pixels() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  double mean() const;
  // Population standard deviation.
  double stddev() const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> data_;
};

// Bilinear sample at a real-valued position; coordinates are clamped to the
// image support.
double SampleBilinear(const GrayImage& img, double x, double y);

// PGM (P2 ASCII / P5 binary), maxval up to 65535.
GrayImage LoadPgm(std::span<const std::uint8_t> bytes);
GrayImage LoadPgmFile(const std::filesystem::path& path);

enum class PgmEncoding { kAscii, kBinary };

std::vector<std::uint8_t> EncodePgm(const GrayImage& img, PgmEncoding encoding,
                                    unsigned maxval = 255);
void SavePgmFile(const GrayImage& img, const std::filesystem::path& path,
                 PgmEncoding encoding = PgmEncoding::kBinary,
                 unsigned maxval = 255);

// Affine map onto the requested mean and population standard deviation.
GrayImage NormalizeIntensity(const GrayImage& img, double target_mean,
                             double target_std);

// Bilinear resampling to round(w*factor) x round(h*factor), pixel-center
// aligned.
GrayImage Resample(const GrayImage& img, double factor);

// Rotation about the image center, counter-clockwise as displayed.
// Samples falling outside the source support are filled with the image mean.
GrayImage Rotate(const GrayImage& img, double degrees);

// What "signal power" means when turning an SNR into a noise variance:
// mean of squared intensities, or intensity variance (AC power only).
enum class SignalPower { kMeanSquare, kVariance };

// Additive white Gaussian noise with variance power / 10^(snr_db/10).
// snr_db = +inf returns the input unchanged.
GrayImage AddGaussianNoise(const GrayImage& img, double snr_db,
                           std::uint64_t seed,
                           SignalPower power = SignalPower::kMeanSquare);

// Centered square crop of the given side length.
GrayImage CropCenter(const GrayImage& img, std::size_t width,
                     std::size_t height);

// Side of the largest axis-aligned square inscribed in the disc that fits
// the image; rotations never pull fill samples into this region.
std::size_t InscribedSquareSide(const GrayImage& img);

}  // namespace fwlbp
