#pragma once

#include <vector>

#include "uwenhance/image.hpp"

namespace uwe {

struct HsvPixel {
  double h = 0.0;  // degrees, [0, 360)
  double s = 0.0;  // [0, 1]
  double v = 0.0;  // [0, 1]
};

struct HsvPlane {
  int width = 0;
  int height = 0;
  std::vector<HsvPixel> data;

  HsvPixel& at(int x, int y) noexcept {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  const HsvPixel& at(int x, int y) const noexcept {
    return data[static_cast<std::size_t>(y) * width + x];
  }
};

HsvPixel rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;
void hsv_to_rgb(const HsvPixel& p, std::uint8_t& r, std::uint8_t& g, std::uint8_t& b) noexcept;

/// Hexcone RGB -> HSV. Achromatic pixels get h = 0.
HsvPlane rgb_to_hsv(const ImageBuf& img);
/// Inverse hexcone mapping, rounding to the nearest 8-bit value.
/// Throws RangeError if any field leaves its range.
ImageBuf hsv_to_rgb(const HsvPlane& plane);

}  // namespace uwe
