#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uwe {

/// 8-bit raster with 1 (gray) or 3 (RGB) interleaved channels, row-major.
class ImageBuf {
 public:
  ImageBuf() = default;
  /// Zero-filled image. Throws InvalidParameter on empty extents or
  /// ChannelMismatch when channels is not 1 or 3.
  ImageBuf(int width, int height, int channels);
  ImageBuf(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t& at(int x, int y, int c = 0) noexcept {
    return data_[index(x, y, c)];
  }
  std::uint8_t at(int x, int y, int c = 0) const noexcept {
    return data_[index(x, y, c)];
  }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> row(int y) noexcept {
    return std::span(data_).subspan(row_offset(y), row_stride());
  }
  std::span<const std::uint8_t> row(int y) const noexcept {
    return std::span(data_).subspan(row_offset(y), row_stride());
  }

  bool same_shape(const ImageBuf& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const ImageBuf&, const ImageBuf&) = default;

 private:
  std::size_t row_stride() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(channels_);
  }
  std::size_t row_offset(int y) const noexcept {
    return static_cast<std::size_t>(y) * row_stride();
  }
  std::size_t index(int x, int y, int c) const noexcept {
    return row_offset(y) + static_cast<std::size_t>(x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Single-channel double raster used for log-domain and gradient intermediates.
class FloatPlane {
 public:
  FloatPlane() = default;
  FloatPlane(int width, int height, double fill = 0.0);
  FloatPlane(int width, int height, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& at(int x, int y) noexcept { return data_[index(x, y)]; }
  double at(int x, int y) const noexcept { return data_[index(x, y)]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> row(int y) noexcept {
    return std::span(data_).subspan(index(0, y), static_cast<std::size_t>(width_));
  }
  std::span<const double> row(int y) const noexcept {
    return std::span(data_).subspan(index(0, y), static_cast<std::size_t>(width_));
  }

  bool same_shape(const FloatPlane& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }
  bool all_finite() const noexcept;

  friend bool operator==(const FloatPlane&, const FloatPlane&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool fits(int width, int height) const noexcept {
    return x >= 0 && y >= 0 && w >= 1 && h >= 1 && x + w <= width && y + h <= height;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Binary object mask: 1 = pixel belongs to the evaluated object.
class MaskImage {
 public:
  MaskImage() = default;
  /// Samples must be 0 or 1 and at least one must be 1.
  MaskImage(int width, int height, std::vector<std::uint8_t> data);

  /// Threshold a mask raster: a pixel is included when its (luma) sample > 127.
  static MaskImage from_image(const ImageBuf& img);
  static MaskImage all_ones(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool included(int x, int y) const noexcept {
    return data_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::size_t included_count() const noexcept;

  /// 0/255 grayscale rendering, suitable for save_image.
  ImageBuf to_image() const;

  friend bool operator==(const MaskImage&, const MaskImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

ImageBuf crop(const ImageBuf& img, const Rect& r);

/// Zero every channel of pixels outside the mask.
ImageBuf apply_mask(const ImageBuf& img, const MaskImage& mask);

// Round and clamp a real sample into [0, 255].
std::uint8_t to_u8(double value) noexcept;

}  // namespace uwe
