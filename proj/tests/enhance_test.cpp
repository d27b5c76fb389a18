#include <gtest/gtest.h>

#include <cmath>

#include "oracles/oracles.hpp"
#include "test_util.hpp"
#include "uwenhance/color.hpp"
#include "uwenhance/enhance.hpp"

namespace uwe {
namespace {

using test::error_code;

FloatPlane random_plane(int w, int h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  FloatPlane p(w, h);
  for (auto& v : p.data()) v = dist(rng);
  return p;
}

double max_abs_diff(const FloatPlane& a, const FloatPlane& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a.data()[i] - b.data()[i]));
  return d;
}

int max_sample_diff(const ImageBuf& a, const ImageBuf& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    d = std::max(d, std::abs(int(a.data()[i]) - int(b.data()[i])));
  return d;
}

// --- brightening ----------------------------------------------------------

TEST(Brighten, ZeroGainIsIdentity) {
  const ImageBuf img = test::random_image(31, 17, 3, 1);
  BrighteningParams p;
  p.k = 0;
  EXPECT_LE(max_sample_diff(radial_brighten(img, p), img), 1);
}

TEST(Brighten, AnchorPixelUnchanged) {
  const ImageBuf img = test::random_image(20, 10, 3, 2);
  const ImageBuf out = radial_brighten(img, BrighteningParams{});
  for (int c = 0; c < 3; ++c) EXPECT_EQ(out.at(10, 9, c), img.at(10, 9, c));
  EXPECT_EQ(BrighteningParams{}.anchor_for(20, 10), (PixelCoord{10, 9}));
}

TEST(Brighten, MidGrayCornerRise) {
  const ImageBuf gray = test::filled(100, 100, 3, 128);
  const ImageBuf out = radial_brighten(gray, BrighteningParams{});
  const double rise = 0.00025 * std::sqrt(50.0 * 50.0 + 99.0 * 99.0);
  EXPECT_NEAR(rise, 0.0277, 1e-4);
  EXPECT_NEAR(rgb_to_hsv(out.at(0, 0, 0), out.at(0, 0, 1), out.at(0, 0, 2)).v,
              128 / 255.0 + rise, 0.5 / 255.0 + 1e-12);
  EXPECT_LE(max_sample_diff(out, oracle::brighten(gray, 0.00025, 50, 99)), 1);
}

TEST(Brighten, MatchesScalarOracle) {
  for (std::uint32_t seed = 0; seed < 4; ++seed) {
    const ImageBuf img = test::random_image(40, 30, 3, 10 + seed);
    for (double k : {0.00025, 0.004}) {
      BrighteningParams p;
      p.k = k;
      EXPECT_LE(max_sample_diff(radial_brighten(img, p), oracle::brighten(img, k, 20, 29)), 1);
    }
  }
}

TEST(Brighten, MonotoneInGain) {
  const ImageBuf img = test::random_image(24, 24, 3, 3);
  BrighteningParams lo, hi;
  lo.k = 0.001;
  hi.k = 0.01;
  const HsvPlane a = rgb_to_hsv(radial_brighten(img, lo));
  const HsvPlane b = rgb_to_hsv(radial_brighten(img, hi));
  for (std::size_t i = 0; i < a.data.size(); ++i) EXPECT_LE(a.data[i].v, b.data[i].v + 1e-12);
}

TEST(Brighten, Validation) {
  BrighteningParams p;
  EXPECT_EQ(error_code([&] { radial_brighten(ImageBuf(4, 4, 1), p); }), Errc::ChannelMismatch);
  p.anchor = PixelCoord{4, 0};
  EXPECT_EQ(error_code([&] { radial_brighten(ImageBuf(4, 4, 3), p); }), Errc::InvalidParameter);
  p.anchor.reset();
  p.k = -1;
  EXPECT_EQ(error_code([&] { radial_brighten(ImageBuf(4, 4, 3), p); }), Errc::InvalidParameter);
}

// --- retinex --------------------------------------------------------------

TEST(SurroundKernel, NormalizedWithCentralPeak) {
  const FloatPlane k = build_surround_kernel(15, 45);
  ASSERT_EQ(k.width(), 91);
  double sum = 0, peak = 0;
  for (double v : k.data()) {
    sum += v;
    peak = std::max(peak, v);
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
  EXPECT_EQ(peak, k.at(45, 45));
  EXPECT_LE(max_abs_diff(k, oracle::surround_kernel(15, 45)), 1e-12);
  EXPECT_EQ(error_code([] { build_surround_kernel(0, 3); }), Errc::InvalidParameter);
  EXPECT_EQ(error_code([] { build_surround_kernel(2, 0); }), Errc::InvalidParameter);
}

TEST(Ssr, ConstantPlaneIsZero) {
  for (double c : {2.0, 15.0, 250.0}) {
    const FloatPlane r = ssr(FloatPlane(12, 9, 93.0), c);
    for (double v : r.data()) EXPECT_NEAR(v, 0.0, 1e-9);
  }
}

TEST(Ssr, ImpulseMatchesBruteForce) {
  FloatPlane impulse(11, 11);
  impulse.at(5, 5) = 255;
  const FloatPlane r = ssr(impulse, 2.0);
  EXPECT_GT(r.at(5, 5), 0.0);
  for (int y = 0; y < 11; ++y)
    for (int x = 0; x < 11; ++x)
      if (x != 5 || y != 5) EXPECT_LE(r.at(x, y), 0.0);
  EXPECT_LE(max_abs_diff(r, oracle::ssr(impulse, 2.0)), 1e-9);
}

TEST(Ssr, RandomPlaneMatchesBruteForce) {
  for (std::uint32_t seed = 0; seed < 5; ++seed) {
    const FloatPlane p = random_plane(8, 8, seed);
    EXPECT_LE(max_abs_diff(ssr(p, 2.0), oracle::ssr(p, 2.0)), 1e-9);
    EXPECT_LE(max_abs_diff(ssr(p, 9.0), oracle::ssr(p, 9.0)), 1e-9);
  }
  const FloatPlane odd = random_plane(13, 5, 77);
  EXPECT_LE(max_abs_diff(ssr(odd, 4.0), oracle::ssr(odd, 4.0)), 1e-9);
}

TEST(Ssr, RejectsBadInput) {
  EXPECT_EQ(error_code([] { ssr(FloatPlane(4, 4, 1.0), 0.0); }), Errc::InvalidParameter);
  EXPECT_EQ(error_code([] { ssr(FloatPlane(4, 4, -1.0), 3.0); }), Errc::InvalidParameter);
  EXPECT_EQ(surround_radius(15), 45);
  EXPECT_EQ(surround_radius(0.1), 1);
}

TEST(Msr, SingleScaleEqualsSsr) {
  const FloatPlane p = random_plane(10, 7, 4);
  RetinexParams rp;
  rp.scales = {3.0};
  rp.weights = {1.0};
  EXPECT_EQ(msr(p, rp), ssr(p, 3.0));
}

TEST(Msr, ConstantPlaneIsZero) {
  const FloatPlane r = msr(FloatPlane(9, 9, 40.0), RetinexParams{});
  for (double v : r.data()) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(Msr, UniformThreeScalesMatchOracleMean) {
  const FloatPlane p = random_plane(8, 8, 5);
  RetinexParams rp;
  rp.set_scales({1.5, 3.0, 6.0});
  EXPECT_LE(max_abs_diff(msr(p, rp), oracle::msr(p, rp.scales, rp.weights)), 1e-9);
}

TEST(ColorRestoration, Examples) {
  const ImageBuf img(2, 1, 3, {70, 70, 70, 0, 0, 0});
  const auto c = color_restoration(img, 125, 46);
  EXPECT_EQ(c[0].at(0, 0), c[1].at(0, 0));
  EXPECT_EQ(c[1].at(0, 0), c[2].at(0, 0));
  for (int b = 0; b < 3; ++b) EXPECT_EQ(c[b].at(1, 0), 0.0);
  EXPECT_EQ(error_code([] { color_restoration(ImageBuf(2, 2, 1), 125, 46); }),
            Errc::ChannelMismatch);
}

TEST(ColorRestoration, MatchesScalarOracle) {
  const ImageBuf img = test::random_image(4, 4, 3, 6);
  const auto got = color_restoration(img, 125, 46);
  const auto want = oracle::color_restoration(img, 125, 46);
  for (int b = 0; b < 3; ++b) EXPECT_LE(max_abs_diff(got[b], want[b]), 1e-9);
}

TEST(Msrcr, ConstantImageMapsToZero) {
  const ImageBuf out = msrcr(test::filled(12, 12, 3, 90), RetinexParams{});
  for (auto v : out.data()) EXPECT_EQ(v, 0);
}

TEST(Msrcr, FullRangeAndShape) {
  const ImageBuf img = test::random_image(20, 14, 3, 7);
  const ImageBuf out = msrcr(img, RetinexParams{});
  ASSERT_TRUE(out.same_shape(img));
  for (int b = 0; b < 3; ++b) {
    int lo = 255, hi = 0;
    for (int y = 0; y < out.height(); ++y)
      for (int x = 0; x < out.width(); ++x) {
        lo = std::min<int>(lo, out.at(x, y, b));
        hi = std::max<int>(hi, out.at(x, y, b));
      }
    EXPECT_EQ(lo, 0);
    EXPECT_EQ(hi, 255);
  }
}

TEST(Msrcr, SmallScalesMatchComposedOracle) {
  RetinexParams rp;
  rp.set_scales({2.0, 5.0, 12.0});
  for (std::uint32_t seed = 0; seed < 3; ++seed) {
    const ImageBuf img = test::random_image(16, 16, 3, 20 + seed);
    const ImageBuf want =
        oracle::msrcr(img, rp.scales, rp.weights, rp.alpha, rp.beta, rp.gain_g, rp.offset_b);
    EXPECT_LE(max_sample_diff(msrcr(img, rp), want), 1);
  }
}

TEST(Msrcr, DeterministicAndValidated) {
  const ImageBuf img = test::random_image(16, 12, 3, 8);
  EXPECT_EQ(msrcr(img, RetinexParams{}), msrcr(img, RetinexParams{}));
  RetinexParams bad;
  bad.weights = {0.5, 0.5};
  EXPECT_EQ(error_code([&] { msrcr(img, bad); }), Errc::InvalidParameter);
  EXPECT_EQ(error_code([&] { msrcr(ImageBuf(4, 4, 1), RetinexParams{}); }),
            Errc::ChannelMismatch);
}

// --- CLAHE ----------------------------------------------------------------

TEST(Clahe, TileEdges) {
  EXPECT_EQ(clahe_tile_edges(10, 3), (std::vector<int>{0, 4, 8, 12}));
  EXPECT_EQ(clahe_tile_edges(128, 50).back(), 150);
  EXPECT_EQ(clahe_tile_edges(4, 50), (std::vector<int>{0, 1, 2, 3, 4}));
}

TEST(Clahe, LutRedistributesExcess) {
  std::array<int, 256> hist{};
  hist[10] = 64;
  // clip = 2 * 64 / 256 -> 1 after the minimum; 63 excess spread over bins 0..62.
  const auto lut = clahe_tile_lut(hist, 64, 2.0);
  EXPECT_EQ(lut[0], to_u8(255.0 * 1 / 64));
  EXPECT_EQ(lut[10], to_u8(255.0 * 12 / 64));
  EXPECT_EQ(lut[62], 255);
  EXPECT_EQ(lut[255], 255);
}

TEST(Clahe, ConstantImageStaysConstant) {
  for (int side : {30, 37, 128, 256}) {
    for (int level : {0, 77, 255}) {
      const ImageBuf out = clahe(test::filled(side, side - 7, 1, level), ClaheParams{});
      for (auto v : out.data()) ASSERT_EQ(v, out.data()[0]) << side << " " << level;
    }
  }
  const ImageBuf rgb = clahe(test::filled(61, 45, 3, 90), ClaheParams{});
  for (auto v : rgb.data()) ASSERT_EQ(v, rgb.data()[0]);
}

TEST(Clahe, SingleTileHugeClipIsGlobalEqualization) {
  ImageBuf img(8, 8, 1);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) img.at(x, y) = (x + y) % 3 == 0 ? 40 : 200;
  ClaheParams p;
  p.tiles_x = p.tiles_y = 1;
  p.clip_limit = 1000;
  EXPECT_EQ(clahe(img, p), oracle::global_he(img));
}

TEST(Clahe, TwoByTwoTilesMatchBruteForce) {
  ClaheParams p;
  p.tiles_x = p.tiles_y = 2;
  for (std::uint32_t seed = 0; seed < 3; ++seed) {
    const ImageBuf img = test::random_image(64, 64, 1, 30 + seed);
    EXPECT_EQ(clahe(img, p), oracle::clahe_bruteforce(img, 2, 2, 2.0));
  }
  const ImageBuf uneven = test::random_image(37, 23, 1, 99, 60, 140);
  p.tiles_x = 3;
  p.tiles_y = 4;
  EXPECT_EQ(clahe(uneven, p), oracle::clahe_bruteforce(uneven, 3, 4, 2.0));
}

TEST(Clahe, ColourEqualizesValueOnly) {
  const ImageBuf img = test::random_image(30, 30, 3, 12, 20, 120);
  ClaheParams p;
  p.tiles_x = p.tiles_y = 3;
  const ImageBuf out = clahe(img, p);
  ASSERT_TRUE(out.same_shape(img));
  const HsvPlane a = rgb_to_hsv(img), b = rgb_to_hsv(out);
  ImageBuf v(30, 30, 1);
  for (std::size_t i = 0; i < a.data.size(); ++i) v.data()[i] = to_u8(a.data[i].v * 255);
  const ImageBuf veq = clahe(v, p);
  for (std::size_t i = 0; i < a.data.size(); ++i) EXPECT_NEAR(b.data[i].v * 255, veq.data()[i], 1e-9);
}

TEST(Clahe, GridClampedOnSmallImages) {
  const ImageBuf img = test::random_image(5, 3, 1, 13);
  const ImageBuf out = clahe(img, ClaheParams{});
  EXPECT_TRUE(out.same_shape(img));
  EXPECT_EQ(out, clahe(img, ClaheParams{}));
}

TEST(Clahe, Validation) {
  ClaheParams p;
  p.clip_limit = 0.5;
  EXPECT_EQ(error_code([&] { clahe(ImageBuf(4, 4, 1), p); }), Errc::InvalidParameter);
  p = {};
  p.tiles_x = 0;
  EXPECT_EQ(error_code([&] { clahe(ImageBuf(4, 4, 1), p); }), Errc::InvalidParameter);
  p = {};
  p.bins = 128;
  EXPECT_EQ(error_code([&] { clahe(ImageBuf(4, 4, 1), p); }), Errc::InvalidParameter);
}

}  // namespace
}  // namespace uwe
