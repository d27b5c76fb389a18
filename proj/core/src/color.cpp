#include "uwenhance/color.hpp"

#include <algorithm>
#include <cmath>

#include "uwenhance/error.hpp"

namespace uwe {

HsvPixel rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  const double delta = mx - mn;

  HsvPixel p;
  p.v = mx / 255.0;
  p.s = mx == 0 ? 0.0 : delta / mx;
  if (delta == 0.0) return p;  // achromatic: h = 0

  double h;
  if (mx == r) {
    h = 60.0 * ((g - b) / delta);
  } else if (mx == g) {
    h = 60.0 * ((b - r) / delta + 2.0);
  } else {
    h = 60.0 * ((r - g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  p.h = h;
  return p;
}

void hsv_to_rgb(const HsvPixel& p, std::uint8_t& r, std::uint8_t& g, std::uint8_t& b) noexcept {
  const double chroma = p.v * p.s;
  const double hp = p.h / 60.0;
  const double x = chroma * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  const double m = p.v - chroma;

  double r1 = 0.0, g1 = 0.0, b1 = 0.0;
  switch (static_cast<int>(hp)) {
    case 0: r1 = chroma; g1 = x; break;
    case 1: r1 = x; g1 = chroma; break;
    case 2: g1 = chroma; b1 = x; break;
    case 3: g1 = x; b1 = chroma; break;
    case 4: r1 = x; b1 = chroma; break;
    default: r1 = chroma; b1 = x; break;
  }
  r = to_u8((r1 + m) * 255.0);
  g = to_u8((g1 + m) * 255.0);
  b = to_u8((b1 + m) * 255.0);
}

HsvPlane rgb_to_hsv(const ImageBuf& img) {
  if (img.channels() != 3) {
    throw Error(Errc::ChannelMismatch, "rgb_to_hsv needs a 3-channel image");
  }
  HsvPlane plane{img.width(), img.height(), {}};
  plane.data.resize(img.pixel_count());
  const auto px = img.data();
  for (std::size_t i = 0; i < plane.data.size(); ++i) {
    plane.data[i] = rgb_to_hsv(px[3 * i], px[3 * i + 1], px[3 * i + 2]);
  }
  return plane;
}

ImageBuf hsv_to_rgb(const HsvPlane& plane) {
  if (plane.width < 1 || plane.height < 1 ||
      plane.data.size() != static_cast<std::size_t>(plane.width) * plane.height) {
    throw Error(Errc::InvalidParameter, "HSV plane extent does not match its data");
  }
  ImageBuf out(plane.width, plane.height, 3);
  auto px = out.data();
  for (std::size_t i = 0; i < plane.data.size(); ++i) {
    const HsvPixel& p = plane.data[i];
    if (!(p.h >= 0.0 && p.h < 360.0) || !(p.s >= 0.0 && p.s <= 1.0) ||
        !(p.v >= 0.0 && p.v <= 1.0)) {
      throw Error(Errc::RangeError, "HSV sample out of range at index " + std::to_string(i));
    }
    hsv_to_rgb(p, px[3 * i], px[3 * i + 1], px[3 * i + 2]);
  }
  return out;
}

}  // namespace uwe
