#include "uwenhance/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "uwenhance/error.hpp"

namespace uwe {

namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// --- PNM ------------------------------------------------------------------

class PnmHeaderReader {
 public:
  PnmHeaderReader(std::span<const std::uint8_t> bytes, const fs::path& path)
      : bytes_(bytes), path_(path) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(Errc::CorruptData, "malformed PNM header in " + path_.string());
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1L << 24)) {
        throw Error(Errc::CorruptData, "PNM header value too large in " + path_.string());
      }
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(Errc::CorruptData, "missing raster separator in " + path_.string());
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  const fs::path& path_;
  std::size_t pos_ = 2;
};

ImageBuf decode_pnm(std::span<const std::uint8_t> bytes, const fs::path& path) {
  const int channels = bytes[1] == '6' ? 3 : 1;
  PnmHeaderReader header(bytes, path);
  const int width = header.next_int();
  const int height = header.next_int();
  const int maxval = header.next_int();
  if (maxval != 255) {
    throw Error(Errc::UnsupportedFormat,
                "only maxval 255 is supported, got " + std::to_string(maxval) + " in " +
                    path.string());
  }
  if (width < 1 || height < 1) {
    throw Error(Errc::CorruptData, "empty PNM raster in " + path.string());
  }
  const std::size_t offset = header.raster_offset();
  const std::size_t need = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() < offset + need) {
    throw Error(Errc::CorruptData, "truncated PNM payload in " + path.string());
  }
  auto raster = bytes.subspan(offset, need);
  return ImageBuf(width, height, channels, std::vector<std::uint8_t>(raster.begin(), raster.end()));
}

void encode_pnm(const ImageBuf& img, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << (img.channels() == 3 ? "P6" : "P5") << '\n'
      << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data().data()),
            static_cast<std::streamsize>(img.data().size()));
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

// --- PNG ------------------------------------------------------------------

struct PngImage {
  png_image image{};
  PngImage() {
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

ImageBuf decode_png(std::span<const std::uint8_t> bytes, const fs::path& path) {
  PngImage png;
  if (!png_image_begin_read_from_memory(&png.image, bytes.data(), bytes.size())) {
    throw Error(Errc::CorruptData, path.string() + ": " + png.image.message);
  }
  const auto native = png.image.format;
  if (native & PNG_FORMAT_FLAG_LINEAR) {
    throw Error(Errc::UnsupportedFormat, "16-bit PNG rejected: " + path.string());
  }
  if (native & PNG_FORMAT_FLAG_ALPHA) {
    throw Error(Errc::UnsupportedFormat, "PNG with alpha rejected: " + path.string());
  }
  const int channels = (native & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
  png.image.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  const int width = static_cast<int>(png.image.width);
  const int height = static_cast<int>(png.image.height);
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, pixels.data(), 0, nullptr)) {
    throw Error(Errc::CorruptData, path.string() + ": " + png.image.message);
  }
  return ImageBuf(width, height, channels, std::move(pixels));
}

void encode_png(const ImageBuf& img, const fs::path& path) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(img.width());
  png.image.height = static_cast<png_uint_32>(img.height());
  png.image.format = img.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png.image, path.c_str(), 0, img.data().data(), 0, nullptr)) {
    throw Error(Errc::IoError, "cannot write " + path.string() + ": " + png.image.message);
  }
}

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

constexpr std::array<std::uint8_t, 8> kPngMagic{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

}  // namespace

ImageBuf load_image(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(Errc::FileNotFound, path.string());
  }
  const auto bytes = read_all(path);
  if (bytes.size() >= kPngMagic.size() &&
      std::equal(kPngMagic.begin(), kPngMagic.end(), bytes.begin())) {
    return decode_png(bytes, path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
    return decode_pnm(bytes, path);
  }
  throw Error(Errc::UnsupportedFormat, "unrecognized image magic in " + path.string());
}

void save_image(const ImageBuf& img, const fs::path& path) {
  if (img.empty()) throw Error(Errc::InvalidParameter, "cannot save an empty image");
  const std::string ext = lower_extension(path);
  if (ext == ".png") {
    encode_png(img, path);
  } else if (ext == ".pnm" || (ext == ".pgm" && img.channels() == 1) ||
             (ext == ".ppm" && img.channels() == 3)) {
    encode_pnm(img, path);
  } else if (ext == ".pgm" || ext == ".ppm") {
    throw Error(Errc::ChannelMismatch, "extension " + ext + " does not fit a " +
                                           std::to_string(img.channels()) + "-channel image");
  } else {
    throw Error(Errc::UnsupportedFormat, "unknown image extension '" + ext + "'");
  }
}

}  // namespace uwe
