#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qil {

class BinaryImage;

/// 2^n x 2^n image with q-bit gray levels, stored row-major.
class GrayImage {
 public:
  GrayImage(int n, int q, std::vector<std::uint32_t> pixels);

  static GrayImage filled(int n, int q, std::uint32_t value);

  int n() const { return n_; }
  int q() const { return q_; }
  std::size_t side() const { return std::size_t{1} << n_; }
  std::size_t size() const { return pixels_.size(); }
  std::uint32_t max_value() const { return (std::uint32_t{1} << q_) - 1; }

  std::uint32_t operator()(std::size_t y, std::size_t x) const { return pixels_[y * side() + x]; }
  std::uint32_t operator[](std::size_t i) const { return pixels_[i]; }
  const std::vector<std::uint32_t>& pixels() const { return pixels_; }

  /// Bit `plane` of every pixel (plane q-1 is the MSB).
  BinaryImage bit_plane(int plane) const;

  bool operator==(const GrayImage&) const = default;

 private:
  int n_;
  int q_;
  std::vector<std::uint32_t> pixels_;
};

class BinaryImage {
 public:
  BinaryImage(int n, std::vector<std::uint8_t> bits);

  int n() const { return n_; }
  std::size_t side() const { return std::size_t{1} << n_; }
  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator()(std::size_t y, std::size_t x) const { return bits_[y * side() + x]; }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  /// The same grid as a 1-bit gray image.
  GrayImage as_gray() const;

  bool operator==(const BinaryImage&) const = default;

 private:
  int n_;
  std::vector<std::uint8_t> bits_;
};

enum class PgmEncoding { plain, binary };  // P2, P5

GrayImage parse_pgm(std::string_view bytes);
GrayImage read_pgm(const std::filesystem::path& path);

std::string format_pgm(const GrayImage& img, PgmEncoding encoding = PgmEncoding::binary);
void write_pgm(const std::filesystem::path& path, const GrayImage& img, PgmEncoding encoding = PgmEncoding::binary);
/// Bits are written as 0 / 255.
void write_pgm(const std::filesystem::path& path, const BinaryImage& img, PgmEncoding encoding = PgmEncoding::binary);

}  // namespace qil
