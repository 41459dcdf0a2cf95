#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "fwlbp/error.hpp"
#include "fwlbp/image.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace fwlbp {
namespace {

using testing::CodeOf;

std::vector<std::uint8_t> Bytes(const std::string& s) { return {s.begin(), s.end()}; }

TEST(GrayImageTest, RejectsBadShapesAndValues) {
  EXPECT_EQ(CodeOf([] { GrayImage(0, 3); }), ErrorCode::kDegenerateSize);
  EXPECT_EQ(CodeOf([] { GrayImage(2, 2, std::vector<double>{1, 2, 3}); }),
            ErrorCode::kShapeMismatch);
  EXPECT_EQ(CodeOf([] {
              GrayImage(1, 2, std::vector<double>{1, std::numeric_limits<double>::quiet_NaN()});
            }),
            ErrorCode::kDomain);
}

TEST(PgmTest, AsciiTwoByTwo) {
  const GrayImage img = LoadPgm(Bytes("P2\n2 2\n255\n0 10\n20 30\n"));
  EXPECT_EQ(img, GrayImage(2, 2, std::vector<double>{0, 10, 20, 30}));
}

TEST(PgmTest, BinarySaturated) {
  std::string s = "P5\n3 2\n255\n";
  s += std::string(6, '\xFF');
  const GrayImage img = LoadPgm(Bytes(s));
  for (double v : img.pixels()) EXPECT_EQ(v, 255.0);
}

TEST(PgmTest, SixteenBitAsciiAgainstStreamReader) {
  const std::string text = "P2\n# hand written\n3 1\n65535\n300 0 65535\n";
  const GrayImage img = LoadPgm(Bytes(text));
  // Independent reader: whitespace-separated integers after the comment.
  std::istringstream in(text);
  std::string magic, comment_line;
  std::getline(in, magic);
  std::getline(in, comment_line);
  int w, h, maxval;
  in >> w >> h >> maxval;
  for (int i = 0; i < w * h; ++i) {
    int v;
    in >> v;
    EXPECT_EQ(img.pixels()[i], static_cast<double>(v));
  }
  EXPECT_EQ(img.at(0, 0), 300.0);
}

TEST(PgmTest, SixteenBitBinaryIsBigEndian) {
  std::string s = "P5 2 1 65535\n";
  s += std::string("\x01\x2C\xFF\xFE", 4);
  const GrayImage img = LoadPgm(Bytes(s));
  EXPECT_EQ(img.at(0, 0), 300.0);
  EXPECT_EQ(img.at(1, 0), 65534.0);
}

TEST(PgmTest, Errors) {
  EXPECT_EQ(CodeOf([] { LoadPgm(Bytes("P6\n1 1\n255\n\x01")); }), ErrorCode::kUnsupportedFormat);
  EXPECT_EQ(CodeOf([] { LoadPgm(Bytes("P5\nx 1\n255\n\x01")); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { LoadPgm(Bytes("P5\n2 2\n255\n\x01\x02")); }), ErrorCode::kTruncated);
  EXPECT_EQ(CodeOf([] { LoadPgm(Bytes("P2\n2 1\n255\n7")); }), ErrorCode::kTruncated);
  EXPECT_EQ(CodeOf([] { LoadPgm(Bytes("P2\n1 1\n70000\n7")); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { LoadPgm(Bytes("P2\n1 1\n255\n256")); }), ErrorCode::kParse);
}

TEST(PgmTest, RoundTripIsIdentityOnIntegers) {
  for (unsigned maxval : {255u, 65535u}) {
    const GrayImage img = testing::RandomIntImage(13, 7, maxval, 0, static_cast<int>(maxval));
    for (auto enc : {PgmEncoding::kAscii, PgmEncoding::kBinary}) {
      EXPECT_EQ(LoadPgm(EncodePgm(img, enc, maxval)), img);
    }
  }
}

TEST(PgmTest, WriteQuantizesAndClamps) {
  const GrayImage img(3, 1, std::vector<double>{-4.0, 12.6, 300.0});
  EXPECT_EQ(LoadPgm(EncodePgm(img, PgmEncoding::kBinary, 255)),
            GrayImage(3, 1, std::vector<double>{0, 13, 255}));
}

TEST(NormalizeTest, AffineFormula) {
  // mean 100, population std 10
  const GrayImage img(2, 2, std::vector<double>{90, 110, 90, 110});
  const GrayImage out = NormalizeIntensity(img, 128, 20);
  for (std::size_t i = 0; i < img.size(); ++i) {
    EXPECT_NEAR(out.pixels()[i], (img.pixels()[i] - 100) * 2 + 128, 1e-12);
  }
}

TEST(NormalizeTest, MomentsRecomputed) {
  const GrayImage out =
      NormalizeIntensity(GrayImage(2, 2, std::vector<double>{0, 0, 255, 255}), 128, 20);
  double s = 0, ss = 0;
  for (double v : out.pixels()) s += v;
  const double mean = s / 4;
  for (double v : out.pixels()) ss += (v - mean) * (v - mean);
  EXPECT_NEAR(mean, 128.0, 1e-12);
  EXPECT_NEAR(std::sqrt(ss / 4), 20.0, 1e-12);
}

TEST(NormalizeTest, IdentityIdempotenceAndConstant) {
  const GrayImage img = testing::RandomImage(17, 11, 3);
  const GrayImage once = NormalizeIntensity(img, 128, 20);
  const GrayImage twice = NormalizeIntensity(once, 128, 20);
  for (std::size_t i = 0; i < img.size(); ++i) {
    EXPECT_NEAR(once.pixels()[i], twice.pixels()[i], 1e-9);
  }
  EXPECT_NEAR(once.mean(), 128.0, 1e-9);
  EXPECT_NEAR(once.stddev(), 20.0, 1e-9);
  EXPECT_EQ(CodeOf([] { NormalizeIntensity(GrayImage(4, 4, 7.0), 128, 20); }),
            ErrorCode::kConstantImage);
}

TEST(ResampleTest, IdentityAndConstant) {
  const GrayImage img = testing::RandomImage(9, 6, 5);
  EXPECT_EQ(Resample(img, 1.0), img);
  for (double f : {0.37, 1.6, 3.0}) {
    const GrayImage c = Resample(GrayImage(20, 12, 42.5), f);
    for (double v : c.pixels()) EXPECT_NEAR(v, 42.5, 1e-12);
  }
}

TEST(ResampleTest, HandBilinearUpsample) {
  const GrayImage out = Resample(GrayImage(2, 2, std::vector<double>{0, 0, 100, 100}), 2.0);
  ASSERT_EQ(out.width(), 4u);
  ASSERT_EQ(out.height(), 4u);
  // Output row y samples source row (y + 0.5) / 2 - 0.5, clamped to [0, 1].
  const double expected[4] = {0.0, 25.0, 75.0, 100.0};
  for (std::size_t y = 0; y < 4; ++y) {
    for (std::size_t x = 0; x < 4; ++x) EXPECT_NEAR(out.at(x, y), expected[y], 1e-12);
  }
}

TEST(ResampleTest, DegenerateSize) {
  EXPECT_EQ(CodeOf([] { Resample(GrayImage(3, 3, 1.0), 0.4); }), ErrorCode::kDegenerateSize);
  EXPECT_EQ(CodeOf([] { Resample(GrayImage(3, 3, 1.0), -1.0); }), ErrorCode::kInvalidParameter);
}

TEST(ResampleTest, UpDownRoundTripOnSmoothImage) {
  const GrayImage img = testing::SmoothImage(40, 30);
  const GrayImage back = Resample(Resample(img, 2.0), 0.5);
  ASSERT_EQ(back.width(), img.width());
  for (std::size_t y = 2; y + 2 < img.height(); ++y) {
    for (std::size_t x = 2; x + 2 < img.width(); ++x) {
      EXPECT_NEAR(back.at(x, y), img.at(x, y), 2.0);
    }
  }
}

TEST(RotateTest, ZeroAndFullTurn) {
  const GrayImage img = testing::RandomImage(15, 10, 8);
  EXPECT_EQ(Rotate(img, 0.0), img);
  const GrayImage full = Rotate(img, 360.0);
  for (std::size_t i = 0; i < img.size(); ++i) {
    EXPECT_NEAR(full.pixels()[i], img.pixels()[i], 1e-6);
  }
}

TEST(RotateTest, QuarterTurnIsIndexPermutation) {
  const std::size_t n = 12;
  const GrayImage img = testing::RandomImage(n, n, 9);
  const GrayImage r = Rotate(img, 90.0);
  // Counter-clockwise as displayed: the top row comes from the right column.
  for (std::size_t y = 1; y + 1 < n; ++y) {
    for (std::size_t x = 1; x + 1 < n; ++x) {
      EXPECT_NEAR(r.at(x, y), img.at(n - 1 - y, x), 1e-6);
    }
  }
}

TEST(RotateTest, FillUsesMean) {
  const GrayImage img = testing::RandomImage(20, 20, 10);
  const GrayImage r = Rotate(img, 45.0);
  EXPECT_NEAR(r.at(0, 0), img.mean(), 1e-12);
}

TEST(RotateTest, ForwardBackOnSmoothImage) {
  // A plane stays a plane under rotation and bilinear interpolation
  // reproduces planes exactly, so only floating point limits the round trip.
  GrayImage img(24, 24);
  for (std::size_t y = 0; y < 24; ++y) {
    for (std::size_t x = 0; x < 24; ++x) img.at(x, y) = 100 + 0.8 * x - 0.5 * y;
  }
  const double c = 11.5;
  for (double theta : {90.0, 180.0}) {
    const GrayImage back = Rotate(Rotate(img, theta), -theta);
    for (std::size_t y = 2; y + 2 < 24; ++y) {
      for (std::size_t x = 2; x + 2 < 24; ++x) EXPECT_NEAR(back.at(x, y), img.at(x, y), 1e-3);
    }
  }
  // Off-axis angles lose the corners to fill; compare inside the disc.
  for (double theta : {5.0, 30.0, 45.0}) {
    const GrayImage back = Rotate(Rotate(img, theta), -theta);
    for (std::size_t y = 2; y + 2 < 24; ++y) {
      for (std::size_t x = 2; x + 2 < 24; ++x) {
        if (std::hypot(x - c, y - c) > c - 2) continue;
        EXPECT_NEAR(back.at(x, y), img.at(x, y), 1e-3) << theta << " " << x << "," << y;
      }
    }
  }
}

TEST(NoiseTest, InfiniteSnrIsIdentity) {
  const GrayImage img = testing::RandomImage(8, 8, 11);
  EXPECT_EQ(AddGaussianNoise(img, std::numeric_limits<double>::infinity(), 1), img);
}

TEST(NoiseTest, DeterministicPerSeed) {
  const GrayImage img = testing::RandomImage(16, 16, 12);
  EXPECT_EQ(AddGaussianNoise(img, 20, 5), AddGaussianNoise(img, 20, 5));
  EXPECT_FALSE(AddGaussianNoise(img, 20, 5) == AddGaussianNoise(img, 20, 6));
}

TEST(NoiseTest, EmpiricalSnrMatches) {
  const GrayImage img = testing::RandomImage(256, 256, 13, 50, 200);
  for (auto power : {SignalPower::kMeanSquare, SignalPower::kVariance}) {
    const GrayImage noisy = AddGaussianNoise(img, 10.0, 77, power);
    double signal = 0, noise = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
      const double d = noisy.pixels()[i] - img.pixels()[i];
      noise += d * d;
      signal += power == SignalPower::kMeanSquare
                    ? img.pixels()[i] * img.pixels()[i]
                    : (img.pixels()[i] - img.mean()) * (img.pixels()[i] - img.mean());
    }
    EXPECT_NEAR(10.0 * std::log10(signal / noise), 10.0, 0.5);
  }
}

TEST(NoiseTest, ZeroSignal) {
  EXPECT_EQ(CodeOf([] { AddGaussianNoise(GrayImage(4, 4, 0.0), 10, 1); }),
            ErrorCode::kConstantImage);
}

TEST(BilinearTest, MatchesFourWeightForm) {
  const GrayImage img = testing::RandomImage(9, 9, 14);
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0.0, 8.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng), y = u(rng);
    EXPECT_NEAR(SampleBilinear(img, x, y), testing::BilinearRef(img, x, y), 1e-10);
  }
}

TEST(CropTest, InscribedSquare) {
  const GrayImage img(128, 128, 1.0);
  const std::size_t s = InscribedSquareSide(img);
  EXPECT_LE(s * std::sqrt(2.0), 127.0);
  const GrayImage c = CropCenter(testing::RandomImage(10, 8, 1), 4, 4);
  EXPECT_EQ(c.width(), 4u);
  EXPECT_EQ(CodeOf([] { CropCenter(GrayImage(3, 3), 4, 2); }), ErrorCode::kDegenerateSize);
}

}  // namespace
}  // namespace fwlbp
