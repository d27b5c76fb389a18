#include "uwenhance/edges.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "uwenhance/convolve.hpp"
#include "uwenhance/error.hpp"

namespace uwe {

void CannyParams::validate() const {
  if (!(low_threshold >= 0.0) || !(high_threshold >= low_threshold)) {
    throw Error(Errc::InvalidParameter, "canny thresholds need 0 <= low <= high");
  }
  if (!(blur_sigma >= 0.0) || !std::isfinite(blur_sigma)) {
    throw Error(Errc::InvalidParameter, "canny blur_sigma must be finite and >= 0");
  }
  if (blur_sigma > 0.0 && blur_radius < 1) {
    throw Error(Errc::InvalidParameter, "canny blur_radius must be >= 1");
  }
}

EdgeMap::EdgeMap(int width, int height)
    : width_(width),
      height_(height),
      data_(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), 0) {}

std::size_t EdgeMap::count() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

ImageBuf EdgeMap::to_image() const {
  std::vector<std::uint8_t> px(data_.size());
  std::transform(data_.begin(), data_.end(), px.begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v ? 255 : 0); });
  return ImageBuf(width_, height_, 1, std::move(px));
}

FloatPlane to_grayscale(const ImageBuf& img) {
  FloatPlane out(img.width(), img.height());
  auto o = out.data();
  const auto px = img.data();
  if (img.channels() == 1) {
    std::copy(px.begin(), px.end(), o.begin());
    return out;
  }
  for (std::size_t i = 0; i < o.size(); ++i) {
    o[i] = 0.299 * px[3 * i] + 0.587 * px[3 * i + 1] + 0.114 * px[3 * i + 2];
  }
  return out;
}

FloatPlane gaussian_blur(const FloatPlane& plane, double sigma, int radius) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || radius < 0) {
    throw Error(Errc::InvalidParameter, "gaussian_blur needs sigma > 0 and radius >= 0");
  }
  const auto taps = gaussian_taps(2.0 * sigma * sigma, radius);
  return convolve_separable(plane, taps);
}

Gradients sobel_gradients(const FloatPlane& plane) {
  const int w = plane.width();
  const int h = plane.height();
  if (w < 3 || h < 3) throw Error(Errc::TooSmall, "sobel needs at least 3x3 pixels");

  Gradients g{FloatPlane(w, h), FloatPlane(w, h)};
  for (int y = 0; y < h; ++y) {
    const auto up = plane.row(std::max(y - 1, 0));
    const auto mid = plane.row(y);
    const auto down = plane.row(std::min(y + 1, h - 1));
    for (int x = 0; x < w; ++x) {
      const int l = std::max(x - 1, 0);
      const int r = std::min(x + 1, w - 1);
      const double gx = (up[r] - up[l]) + 2.0 * (mid[r] - mid[l]) + (down[r] - down[l]);
      const double gy = (down[l] - up[l]) + 2.0 * (down[x] - up[x]) + (down[r] - up[r]);
      g.magnitude.at(x, y) = std::sqrt(gx * gx + gy * gy);
      g.direction.at(x, y) = std::atan2(gy, gx);
    }
  }
  return g;
}

namespace {

// Neighbour offset on the positive side of the gradient for each quantized
// sector; y grows downwards, so 45 degrees points to (+1, +1).
struct Offset {
  int dx;
  int dy;
};

Offset sector_offset(double direction) noexcept {
  double deg = direction * 180.0 / std::numbers::pi;
  if (deg < 0.0) deg += 180.0;
  if (deg >= 180.0) deg -= 180.0;
  if (deg < 22.5 || deg >= 157.5) return {1, 0};
  if (deg < 67.5) return {1, 1};
  if (deg < 112.5) return {0, 1};
  return {-1, 1};
}

}  // namespace

FloatPlane non_max_suppression(const FloatPlane& magnitude, const FloatPlane& direction) {
  if (!magnitude.same_shape(direction)) {
    throw Error(Errc::DimensionMismatch, "magnitude and direction planes differ in size");
  }
  const int w = magnitude.width();
  const int h = magnitude.height();
  FloatPlane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double m = magnitude.at(x, y);
      if (m <= 0.0) continue;
      const Offset o = sector_offset(direction.at(x, y));
      const int px = x + o.dx, py = y + o.dy;
      const int nx = x - o.dx, ny = y - o.dy;
      const bool pos_ok = px < 0 || py < 0 || px >= w || py >= h || m >= magnitude.at(px, py);
      const bool neg_ok = nx < 0 || ny < 0 || nx >= w || ny >= h || m > magnitude.at(nx, ny);
      if (pos_ok && neg_ok) out.at(x, y) = m;
    }
  }
  return out;
}

EdgeMap hysteresis(const FloatPlane& suppressed, double low, double high) {
  if (!(low >= 0.0) || !(high >= low)) {
    throw Error(Errc::InvalidParameter, "hysteresis needs 0 <= low <= high");
  }
  const int w = suppressed.width();
  const int h = suppressed.height();
  EdgeMap map(w, h);
  const auto candidate = [&](int x, int y) {
    const double v = suppressed.at(x, y);
    return v > 0.0 && v >= low;
  };

  std::deque<std::pair<int, int>> queue;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = suppressed.at(x, y);
      if (v > 0.0 && v >= high && !map.edge(x, y)) {
        map.set(x, y);
        queue.emplace_back(x, y);
      }
    }
  }
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        if (!map.edge(nx, ny) && candidate(nx, ny)) {
          map.set(nx, ny);
          queue.emplace_back(nx, ny);
        }
      }
    }
  }
  return map;
}

EdgeMap canny(const ImageBuf& img, const CannyParams& p) {
  p.validate();
  if (img.width() < 3 || img.height() < 3) {
    throw Error(Errc::TooSmall, "canny needs at least 3x3 pixels");
  }
  FloatPlane gray = to_grayscale(img);
  if (p.blur_sigma > 0.0) gray = gaussian_blur(gray, p.blur_sigma, p.blur_radius);
  const Gradients g = sobel_gradients(gray);
  return hysteresis(non_max_suppression(g.magnitude, g.direction), p.low_threshold,
                    p.high_threshold);
}

}  // namespace uwe
