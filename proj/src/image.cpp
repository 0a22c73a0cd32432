#include "qil/image.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qil/errors.hpp"

namespace qil {
namespace {

constexpr int kMaxSideExponent = 12;
constexpr int kMaxBitDepth = 16;

void check_shape(int n, std::size_t count) {
  if (n < 0 || n > kMaxSideExponent) throw InvalidArgument("image side exponent out of range");
  const std::size_t side = std::size_t{1} << n;
  if (count != side * side) {
    throw InvariantViolation("image needs " + std::to_string(side * side) + " pixels, got " + std::to_string(count));
  }
}

class PgmTokenizer {
 public:
  explicit PgmTokenizer(std::string_view s) : s_(s) {}

  std::string_view next() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw IoError("PGM: unexpected end of input");
    return s_.substr(start, pos_ - start);
  }

  std::uint32_t next_uint() {
    const auto tok = next();
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw IoError("PGM: expected an unsigned integer, got '" + std::string(tok) + "'");
    }
    return v;
  }

  // After the maxval a single whitespace byte precedes the raster.
  std::string_view raster() {
    if (pos_ >= s_.size() || !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      throw IoError("PGM: missing raster separator");
    }
    return s_.substr(pos_ + 1);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage::GrayImage(int n, int q, std::vector<std::uint32_t> pixels) : n_(n), q_(q), pixels_(std::move(pixels)) {
  check_shape(n, pixels_.size());
  if (q < 1 || q > kMaxBitDepth) throw InvalidArgument("bit depth must lie in [1, 16]");
  for (auto p : pixels_) {
    if (p > max_value()) {
      throw InvariantViolation("pixel value " + std::to_string(p) + " exceeds 2^q - 1 = " + std::to_string(max_value()));
    }
  }
}

GrayImage GrayImage::filled(int n, int q, std::uint32_t value) {
  check_shape(n, (std::size_t{1} << n) << n);
  return GrayImage(n, q, std::vector<std::uint32_t>((std::size_t{1} << n) << n, value));
}

BinaryImage GrayImage::bit_plane(int plane) const {
  if (plane < 0 || plane >= q_) throw InvalidArgument("bit plane outside [0, q-1]");
  std::vector<std::uint8_t> bits(pixels_.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = static_cast<std::uint8_t>((pixels_[i] >> plane) & 1u);
  return BinaryImage(n_, std::move(bits));
}

BinaryImage::BinaryImage(int n, std::vector<std::uint8_t> bits) : n_(n), bits_(std::move(bits)) {
  check_shape(n, bits_.size());
  for (auto b : bits_) {
    if (b > 1) throw InvariantViolation("binary image values must be 0 or 1");
  }
}

GrayImage BinaryImage::as_gray() const {
  return GrayImage(n_, 1, std::vector<std::uint32_t>(bits_.begin(), bits_.end()));
}

GrayImage parse_pgm(std::string_view bytes) {
  PgmTokenizer tok(bytes);
  const auto magic = tok.next();
  if (magic != "P2" && magic != "P5") throw IoError("PGM: unsupported magic '" + std::string(magic) + "'");
  const std::uint32_t width = tok.next_uint();
  const std::uint32_t height = tok.next_uint();
  const std::uint32_t maxval = tok.next_uint();
  if (width != height || !std::has_single_bit(width)) {
    throw IoError("PGM: image must be square with a power-of-two side, got " + std::to_string(width) + "x" +
                  std::to_string(height));
  }
  if (maxval == 0 || maxval > 65535) throw IoError("PGM: maxval must lie in [1, 65535]");
  const int n = std::countr_zero(width);
  const int q = std::bit_width(maxval);
  const std::size_t count = std::size_t{width} * height;

  std::vector<std::uint32_t> pixels(count);
  if (magic == "P2") {
    for (auto& p : pixels) p = tok.next_uint();
  } else {
    const auto raster = tok.raster();
    const std::size_t bpp = maxval < 256 ? 1 : 2;
    if (raster.size() < count * bpp) throw IoError("PGM: raster is truncated");
    for (std::size_t i = 0; i < count; ++i) {
      const auto* b = reinterpret_cast<const unsigned char*>(raster.data()) + i * bpp;
      pixels[i] = bpp == 1 ? b[0] : (std::uint32_t{b[0]} << 8) | b[1];
    }
  }
  for (auto p : pixels) {
    if (p > maxval) throw IoError("PGM: pixel value exceeds maxval");
  }
  return GrayImage(n, q, std::move(pixels));
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pgm(buf.str());
}

std::string format_pgm(const GrayImage& img, PgmEncoding encoding) {
  std::ostringstream out;
  const std::uint32_t maxval = img.max_value();
  out << (encoding == PgmEncoding::plain ? "P2" : "P5") << '\n'
      << img.side() << ' ' << img.side() << '\n'
      << maxval << '\n';
  if (encoding == PgmEncoding::plain) {
    for (std::size_t y = 0; y < img.side(); ++y) {
      for (std::size_t x = 0; x < img.side(); ++x) out << (x ? " " : "") << img(y, x);
      out << '\n';
    }
  } else {
    for (auto p : img.pixels()) {
      if (maxval >= 256) out.put(static_cast<char>((p >> 8) & 0xFF));
      out.put(static_cast<char>(p & 0xFF));
    }
  }
  return out.str();
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img, PgmEncoding encoding) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << format_pgm(img, encoding);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_pgm(const std::filesystem::path& path, const BinaryImage& img, PgmEncoding encoding) {
  std::vector<std::uint32_t> px(img.bits().begin(), img.bits().end());
  for (auto& p : px) p *= 255;
  write_pgm(path, GrayImage(img.n(), 8, std::move(px)), encoding);
}

}  // namespace qil
