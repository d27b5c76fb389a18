#include "uwenhance/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uwenhance/error.hpp"

namespace uwe {

namespace {

void check_extent(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(Errc::InvalidParameter, "image extent must be at least 1x1, got " +
                                            std::to_string(width) + "x" +
                                            std::to_string(height));
  }
}

}  // namespace

ImageBuf::ImageBuf(int width, int height, int channels)
    : ImageBuf(width, height, channels,
               std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                         static_cast<std::size_t>(std::max(height, 0)) *
                                         static_cast<std::size_t>(std::max(channels, 0)))) {}

ImageBuf::ImageBuf(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_extent(width, height);
  if (channels != 1 && channels != 3) {
    throw Error(Errc::ChannelMismatch, "channels must be 1 or 3, got " + std::to_string(channels));
  }
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channels)) {
    throw Error(Errc::InvalidParameter, "sample buffer length does not match extent");
  }
}

FloatPlane::FloatPlane(int width, int height, double fill)
    : width_(width), height_(height) {
  check_extent(width, height);
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

FloatPlane::FloatPlane(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_extent(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(Errc::InvalidParameter, "sample buffer length does not match extent");
  }
}

bool FloatPlane::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

MaskImage::MaskImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_extent(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(Errc::InvalidParameter, "mask length does not match extent");
  }
  if (std::any_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw Error(Errc::RangeError, "mask samples must be 0 or 1");
  }
  if (included_count() == 0) {
    throw Error(Errc::InvalidParameter, "mask has no included pixels");
  }
}

MaskImage MaskImage::from_image(const ImageBuf& img) {
  std::vector<std::uint8_t> bits(img.pixel_count());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double v = img.at(x, y, 0);
      if (img.channels() == 3) {
        v = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2);
      }
      bits[static_cast<std::size_t>(y) * img.width() + x] = v > 127.0 ? 1 : 0;
    }
  }
  return MaskImage(img.width(), img.height(), std::move(bits));
}

MaskImage MaskImage::all_ones(int width, int height) {
  check_extent(width, height);
  return MaskImage(width, height,
                   std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 1));
}

std::size_t MaskImage::included_count() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

ImageBuf MaskImage::to_image() const {
  std::vector<std::uint8_t> px(data_.size());
  std::transform(data_.begin(), data_.end(), px.begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v ? 255 : 0); });
  return ImageBuf(width_, height_, 1, std::move(px));
}

ImageBuf crop(const ImageBuf& img, const Rect& r) {
  if (!r.fits(img.width(), img.height())) {
    throw Error(Errc::OutOfBounds,
                "crop {" + std::to_string(r.x) + "," + std::to_string(r.y) + "," +
                    std::to_string(r.w) + "," + std::to_string(r.h) + "} exceeds " +
                    std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
  ImageBuf out(r.w, r.h, img.channels());
  const std::size_t span_len = static_cast<std::size_t>(r.w) * img.channels();
  for (int y = 0; y < r.h; ++y) {
    auto src = img.row(r.y + y).subspan(static_cast<std::size_t>(r.x) * img.channels(), span_len);
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

ImageBuf apply_mask(const ImageBuf& img, const MaskImage& mask) {
  if (img.width() != mask.width() || img.height() != mask.height()) {
    throw Error(Errc::DimensionMismatch, "mask and image dimensions differ");
  }
  ImageBuf out = img;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (!mask.included(x, y)) {
        for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = 0;
      }
    }
  }
  return out;
}

std::uint8_t to_u8(double value) noexcept {
  const double r = std::round(value);
  if (!(r > 0.0)) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

}  // namespace uwe
