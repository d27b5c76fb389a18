#pragma once

#include <filesystem>

#include "uwenhance/image.hpp"

namespace uwe {

// PNG (8-bit gray/RGB) and binary PGM (P5) / PPM (P6) with maxval 255.
// The reader dispatches on the file magic; the writer on the extension
// (.png, .pgm, .ppm, .pnm). Palette PNGs are expanded to RGB; alpha and
// 16-bit sources are rejected.
ImageBuf load_image(const std::filesystem::path& path);
void save_image(const ImageBuf& img, const std::filesystem::path& path);

}  // namespace uwe
