#include <algorithm>
#include <cmath>

#include "uwenhance/color.hpp"
#include "uwenhance/enhance.hpp"
#include "uwenhance/error.hpp"

namespace uwe {

namespace {

constexpr int kBins = 256;

// Interpolation neighbours along one axis: tiles lo/hi and the weight of hi.
struct AxisWeights {
  std::vector<int> lo;
  std::vector<int> hi;
  std::vector<double> w;
};

AxisWeights axis_weights(const std::vector<int>& edges) {
  const int tiles = static_cast<int>(edges.size()) - 1;
  const int n = edges.back();
  std::vector<double> centre(tiles);
  for (int t = 0; t < tiles; ++t) centre[t] = (edges[t] + edges[t + 1] - 1) / 2.0;

  AxisWeights a;
  a.lo.resize(n);
  a.hi.resize(n);
  a.w.resize(n);
  // n covers the padded extent; only the leading image part is read.
  int t = 0;
  for (int x = 0; x < n; ++x) {
    if (x <= centre.front()) {
      a.lo[x] = a.hi[x] = 0;
      a.w[x] = 0.0;
    } else if (x >= centre.back()) {
      a.lo[x] = a.hi[x] = tiles - 1;
      a.w[x] = 0.0;
    } else {
      while (centre[t + 1] <= x) ++t;
      a.lo[x] = t;
      a.hi[x] = t + 1;
      a.w[x] = (x - centre[t]) / (centre[t + 1] - centre[t]);
    }
  }
  return a;
}

// Sample index after mirroring about the last sample (no repeat), for the
// padding that makes every tile the same size.
int mirror(int i, int n) noexcept { return i < n ? i : std::max(0, 2 * (n - 1) - i); }

std::vector<std::uint8_t> equalize_plane(std::span<const std::uint8_t> src, int width, int height,
                                         const ClaheParams& p) {
  const auto ex = clahe_tile_edges(width, p.tiles_x);
  const auto ey = clahe_tile_edges(height, p.tiles_y);
  const int tx = static_cast<int>(ex.size()) - 1;
  const int ty = static_cast<int>(ey.size()) - 1;

  std::vector<std::array<std::uint8_t, kBins>> luts(static_cast<std::size_t>(tx) * ty);
  for (int j = 0; j < ty; ++j) {
    for (int i = 0; i < tx; ++i) {
      std::array<int, kBins> hist{};
      for (int y = ey[j]; y < ey[j + 1]; ++y) {
        const std::size_t row = static_cast<std::size_t>(mirror(y, height)) * width;
        for (int x = ex[i]; x < ex[i + 1]; ++x) ++hist[src[row + mirror(x, width)]];
      }
      const int count = (ex[i + 1] - ex[i]) * (ey[j + 1] - ey[j]);
      luts[static_cast<std::size_t>(j) * tx + i] = clahe_tile_lut(hist, count, p.clip_limit);
    }
  }

  const AxisWeights ax = axis_weights(ex);
  const AxisWeights ay = axis_weights(ey);
  std::vector<std::uint8_t> out(src.size());
  for (int y = 0; y < height; ++y) {
    const double wy = ay.w[y];
    const auto* top = &luts[static_cast<std::size_t>(ay.lo[y]) * tx];
    const auto* bot = &luts[static_cast<std::size_t>(ay.hi[y]) * tx];
    for (int x = 0; x < width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * width + x;
      const int v = src[idx];
      const double wx = ax.w[x];
      const double upper = (1.0 - wx) * top[ax.lo[x]][v] + wx * top[ax.hi[x]][v];
      const double lower = (1.0 - wx) * bot[ax.lo[x]][v] + wx * bot[ax.hi[x]][v];
      out[idx] = to_u8((1.0 - wy) * upper + wy * lower);
    }
  }
  return out;
}

}  // namespace

void ClaheParams::validate() const {
  if (!(clip_limit >= 1.0) || !std::isfinite(clip_limit)) {
    throw Error(Errc::InvalidParameter, "clahe clip_limit must be finite and >= 1");
  }
  if (tiles_x < 1 || tiles_y < 1) {
    throw Error(Errc::InvalidParameter, "clahe tile grid must be at least 1x1");
  }
  if (bins != kBins) throw Error(Errc::InvalidParameter, "clahe supports 256 bins only");
}

std::vector<int> clahe_tile_edges(int extent, int tiles) {
  if (extent < 1 || tiles < 1) {
    throw Error(Errc::InvalidParameter, "tile grid needs a positive extent and tile count");
  }
  const int t = std::min(tiles, extent);
  const int size = (extent + t - 1) / t;
  std::vector<int> edges(t + 1);
  for (int i = 0; i <= t; ++i) edges[i] = i * size;
  return edges;
}

std::array<std::uint8_t, 256> clahe_tile_lut(std::array<int, 256> hist, int pixel_count,
                                             double clip_limit) {
  const int clip = std::max(1, static_cast<int>(clip_limit * pixel_count / kBins));
  long excess = 0;
  for (int& h : hist) {
    if (h > clip) {
      excess += h - clip;
      h = clip;
    }
  }
  const int batch = static_cast<int>(excess / kBins);
  const int residual = static_cast<int>(excess % kBins);
  for (int b = 0; b < kBins; ++b) hist[b] += batch + (b < residual ? 1 : 0);

  std::array<std::uint8_t, 256> lut{};
  long cdf = 0;
  for (int b = 0; b < kBins; ++b) {
    cdf += hist[b];
    lut[b] = to_u8(255.0 * static_cast<double>(cdf) / pixel_count);
  }
  return lut;
}

ImageBuf clahe(const ImageBuf& img, const ClaheParams& p) {
  p.validate();
  if (img.channels() == 1) {
    return ImageBuf(img.width(), img.height(), 1,
                    equalize_plane(img.data(), img.width(), img.height(), p));
  }

  HsvPlane hsv = rgb_to_hsv(img);
  std::vector<std::uint8_t> value(hsv.data.size());
  for (std::size_t i = 0; i < value.size(); ++i) value[i] = to_u8(hsv.data[i].v * 255.0);
  const auto eq = equalize_plane(value, img.width(), img.height(), p);
  for (std::size_t i = 0; i < value.size(); ++i) hsv.data[i].v = eq[i] / 255.0;
  return hsv_to_rgb(hsv);
}

}  // namespace uwe
