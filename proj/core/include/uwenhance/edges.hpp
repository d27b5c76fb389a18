#pragma once

#include <cstdint>
#include <vector>

#include "uwenhance/image.hpp"

namespace uwe {

struct CannyParams {
  double low_threshold = 100.0;
  double high_threshold = 200.0;
  double blur_sigma = 1.4;  // 0 disables the pre-blur
  int blur_radius = 4;

  void validate() const;
};

/// Binary edge raster (1 = edge).
class EdgeMap {
 public:
  EdgeMap() = default;
  EdgeMap(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool edge(int x, int y) const noexcept { return data_[index(x, y)] != 0; }
  void set(int x, int y) noexcept { data_[index(x, y)] = 1; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::size_t count() const noexcept;

  /// 0/255 grayscale rendering.
  ImageBuf to_image() const;

  friend bool operator==(const EdgeMap&, const EdgeMap&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

struct Gradients {
  FloatPlane magnitude;
  FloatPlane direction;  // atan2(gy, gx), radians
};

/// Luma 0.299 r + 0.587 g + 0.114 b; gray passes through.
FloatPlane to_grayscale(const ImageBuf& img);

FloatPlane gaussian_blur(const FloatPlane& plane, double sigma, int radius);

/// 3x3 Sobel, edge-replicate padding. Requires width, height >= 3.
Gradients sobel_gradients(const FloatPlane& plane);

/// Thin ridges along the gradient direction quantized to 0/45/90/135 degrees.
/// A sample survives when it is strictly greater than its neighbour on the
/// negative side and at least equal to the one on the positive side;
/// out-of-bounds neighbours are ignored.
FloatPlane non_max_suppression(const FloatPlane& magnitude, const FloatPlane& direction);

/// Double threshold with 8-connected breadth-first growth from samples
/// >= high through non-zero samples >= low.
EdgeMap hysteresis(const FloatPlane& suppressed, double low, double high);

EdgeMap canny(const ImageBuf& img, const CannyParams& p);

}  // namespace uwe
