#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "qil/errors.hpp"
#include "qil/image.hpp"
#include "qil/rng.hpp"
#include "test_support.hpp"

using namespace qil;

TEST(GrayImage, ValidatesShapeAndRange) {
  EXPECT_THROW(GrayImage(1, 8, {1, 2, 3}), InvariantViolation);
  EXPECT_THROW(GrayImage(1, 2, {0, 1, 2, 4}), InvariantViolation);
  EXPECT_THROW(GrayImage(0, 0, {0}), InvalidArgument);
  const GrayImage img(1, 8, {1, 2, 3, 4});
  EXPECT_EQ(img(1, 0), 3u);
  EXPECT_EQ(img.max_value(), 255u);
}

TEST(GrayImage, BitPlanes) {
  const GrayImage img(1, 8, {200, 100, 128, 127});
  const auto msb = img.bit_plane(7);
  EXPECT_EQ(msb.bits(), (std::vector<std::uint8_t>{1, 0, 1, 0}));
  const auto lsb = img.bit_plane(0);
  EXPECT_EQ(lsb.bits(), (std::vector<std::uint8_t>{0, 0, 0, 1}));
  EXPECT_THROW(img.bit_plane(8), InvalidArgument);
  EXPECT_EQ(msb.as_gray(), GrayImage(1, 1, {1, 0, 1, 0}));
}

TEST(BinaryImage, RejectsNonBits) { EXPECT_THROW(BinaryImage(1, {0, 1, 2, 0}), InvariantViolation); }

TEST(Pgm, PlainWithComments) {
  const auto img = parse_pgm("P2\n# a comment\n2 2\n# another\n255\n0 10\n20 255\n");
  EXPECT_EQ(img, GrayImage(1, 8, {0, 10, 20, 255}));
}

TEST(Pgm, BitDepthFollowsMaxval) {
  EXPECT_EQ(parse_pgm("P2 1 1 1 1").q(), 1);
  EXPECT_EQ(parse_pgm("P2 1 1 15 3").q(), 4);
  EXPECT_EQ(parse_pgm("P2 1 1 65535 40000").q(), 16);
}

TEST(Pgm, RejectsMalformedInput) {
  EXPECT_THROW(parse_pgm("P2 2 1 255 0 0"), IoError);
  EXPECT_THROW(parse_pgm("P2 3 3 255 0 0 0 0 0 0 0 0 0"), IoError);
  EXPECT_THROW(parse_pgm("P3 1 1 255 0"), IoError);
  EXPECT_THROW(parse_pgm("P2 2 2 255 0 0 0"), IoError);
  EXPECT_THROW(parse_pgm("P2 1 1 15 16"), IoError);
  EXPECT_THROW(parse_pgm(std::string("P5 2 2 255\n\x01\x02", 14)), IoError);
}

TEST(Pgm, RoundTripBothEncodings) {
  Rng rng(17);
  for (int q : {1, 4, 8, 12, 16}) {
    const auto img = qil::testing::random_image(2, q, rng);
    for (auto enc : {PgmEncoding::plain, PgmEncoding::binary}) {
      EXPECT_EQ(parse_pgm(format_pgm(img, enc)), img) << "q=" << q;
    }
  }
}

TEST(Pgm, FileIo) {
  const auto dir = std::filesystem::temp_directory_path() / "qil_image_test";
  std::filesystem::create_directories(dir);
  const GrayImage img(1, 8, {9, 8, 7, 6});
  write_pgm(dir / "a.pgm", img);
  EXPECT_EQ(read_pgm(dir / "a.pgm"), img);

  write_pgm(dir / "b.pgm", BinaryImage(1, {1, 0, 0, 1}));
  EXPECT_EQ(read_pgm(dir / "b.pgm"), GrayImage(1, 8, {255, 0, 0, 255}));

  EXPECT_THROW(read_pgm(dir / "missing.pgm"), IoError);
  std::filesystem::remove_all(dir);
}
