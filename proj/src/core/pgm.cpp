#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "fwlbp/error.hpp"
#include "fwlbp/image.hpp"

namespace fwlbp {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Returns false when the stream ends before any digit is seen.
  bool ReadUnsigned(unsigned long long* out) {
    SkipSpaceAndComments();
    if (pos_ >= bytes_.size()) return false;
    if (!std::isdigit(bytes_[pos_])) {
      Fail(ErrorCode::kParse, "expected an unsigned integer in PGM data");
    }
    unsigned long long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 0xFFFFFFFFull) Fail(ErrorCode::kParse, "PGM integer overflow");
      ++pos_;
    }
    *out = v;
    return true;
  }

  unsigned long long RequireUnsigned(const char* what) {
    unsigned long long v = 0;
    if (!ReadUnsigned(&v)) {
      Fail(ErrorCode::kParse, std::string("PGM header ended before ") + what);
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage LoadPgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    Fail(ErrorCode::kUnsupportedFormat, "not a PNM file (missing 'P' magic)");
  }
  const bool ascii = bytes[1] == '2';
  const bool binary = bytes[1] == '5';
  if (!ascii && !binary) {
    Fail(ErrorCode::kUnsupportedFormat,
         std::string("unsupported PNM magic P") + static_cast<char>(bytes[1]));
  }
  HeaderReader in(bytes);
  in.advance(2);
  if (in.pos() < bytes.size() && !std::isspace(bytes[in.pos()]) &&
      bytes[in.pos()] != '#') {
    Fail(ErrorCode::kParse, "malformed PGM magic");
  }
  const auto width = in.RequireUnsigned("width");
  const auto height = in.RequireUnsigned("height");
  const auto maxval = in.RequireUnsigned("maxval");
  if (width == 0 || height == 0) Fail(ErrorCode::kParse, "PGM has zero size");
  if (maxval == 0 || maxval > 65535) {
    Fail(ErrorCode::kParse, "PGM maxval must be in [1, 65535]");
  }
  const std::size_t count = static_cast<std::size_t>(width * height);
  std::vector<double> data(count);

  if (ascii) {
    for (std::size_t i = 0; i < count; ++i) {
      unsigned long long v = 0;
      if (!in.ReadUnsigned(&v)) {
        Fail(ErrorCode::kTruncated, "PGM payload ended after " +
                                        std::to_string(i) + " of " +
                                        std::to_string(count) + " samples");
      }
      if (v > maxval) Fail(ErrorCode::kParse, "PGM sample exceeds maxval");
      data[i] = static_cast<double>(v);
    }
  } else {
    // Exactly one whitespace byte separates maxval from the raster.
    if (in.pos() >= bytes.size() || !std::isspace(bytes[in.pos()])) {
      Fail(ErrorCode::kTruncated, "PGM header not followed by raster");
    }
    in.advance(1);
    const std::size_t bps = maxval > 255 ? 2 : 1;
    const std::size_t start = in.pos();
    if (bytes.size() < start || bytes.size() - start < count * bps) {
      Fail(ErrorCode::kTruncated, "PGM raster is shorter than width*height");
    }
    for (std::size_t i = 0; i < count; ++i) {
      unsigned v = bytes[start + i * bps];
      if (bps == 2) v = (v << 8) | bytes[start + i * bps + 1];
      if (v > maxval) Fail(ErrorCode::kParse, "PGM sample exceeds maxval");
      data[i] = static_cast<double>(v);
    }
  }
  return GrayImage(static_cast<std::size_t>(width),
                   static_cast<std::size_t>(height), std::move(data));
}

GrayImage LoadPgmFile(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  return LoadPgm(bytes);
}

std::vector<std::uint8_t> EncodePgm(const GrayImage& img, PgmEncoding encoding,
                                    unsigned maxval) {
  Require(maxval >= 1 && maxval <= 65535, ErrorCode::kInvalidParameter,
          "maxval must be in [1, 65535]");
  const std::string header = std::string(encoding == PgmEncoding::kAscii ? "P2" : "P5") +
                             "\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n" +
                             std::to_string(maxval) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  auto quantize = [maxval](double v) {
    return static_cast<unsigned>(
        std::clamp(std::round(v), 0.0, static_cast<double>(maxval)));
  };
  if (encoding == PgmEncoding::kAscii) {
    for (std::size_t y = 0; y < img.height(); ++y) {
      std::string line;
      for (std::size_t x = 0; x < img.width(); ++x) {
        if (x) line += ' ';
        line += std::to_string(quantize(img.at(x, y)));
      }
      line += '\n';
      out.insert(out.end(), line.begin(), line.end());
    }
  } else {
    const bool wide = maxval > 255;
    out.reserve(out.size() + img.size() * (wide ? 2 : 1));
    for (double v : img.pixels()) {
      const unsigned q = quantize(v);
      if (wide) out.push_back(static_cast<std::uint8_t>(q >> 8));
      out.push_back(static_cast<std::uint8_t>(q & 0xFF));
    }
  }
  return out;
}

void SavePgmFile(const GrayImage& img, const std::filesystem::path& path,
                 PgmEncoding encoding, unsigned maxval) {
  const auto bytes = EncodePgm(img, encoding, maxval);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) Fail(ErrorCode::kIo, "cannot write " + path.string());
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) Fail(ErrorCode::kIo, "short write to " + path.string());
}

}  // namespace fwlbp
