#include <algorithm>
#include <cmath>
#include <string>

#include "uwenhance/color.hpp"
#include "uwenhance/enhance.hpp"
#include "uwenhance/error.hpp"

namespace uwe {

PixelCoord BrighteningParams::anchor_for(int width, int height) const noexcept {
  return anchor.value_or(PixelCoord{width / 2, height - 1});
}

void BrighteningParams::validate(int width, int height) const {
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw Error(Errc::InvalidParameter, "brightening gain k must be finite and >= 0");
  }
  const PixelCoord a = anchor_for(width, height);
  if (a.x < 0 || a.y < 0 || a.x >= width || a.y >= height) {
    throw Error(Errc::InvalidParameter, "brightening anchor (" + std::to_string(a.x) + "," +
                                            std::to_string(a.y) + ") is outside the image");
  }
}

ImageBuf radial_brighten(const ImageBuf& img, const BrighteningParams& p) {
  if (img.channels() != 3) {
    throw Error(Errc::ChannelMismatch, "radial_brighten needs a 3-channel image");
  }
  p.validate(img.width(), img.height());
  const PixelCoord a = p.anchor_for(img.width(), img.height());

  HsvPlane hsv = rgb_to_hsv(img);
  for (int y = 0; y < hsv.height; ++y) {
    const double dy = y - a.y;
    for (int x = 0; x < hsv.width; ++x) {
      const double dx = x - a.x;
      HsvPixel& px = hsv.at(x, y);
      px.v = std::min(1.0, px.v + p.k * std::sqrt(dx * dx + dy * dy));
    }
  }
  return hsv_to_rgb(hsv);
}

}  // namespace uwe
