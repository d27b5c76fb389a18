#pragma once

#include <array>
#include <optional>
#include <vector>

#include "uwenhance/image.hpp"

namespace uwe {

// ---------------------------------------------------------------------------
// Radial brightening: V' = clamp(V + k * D, 0, 1) in HSV, with D the
// Euclidean pixel distance to an anchor (bottom-centre by default).

struct PixelCoord {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

struct BrighteningParams {
  double k = 0.00025;
  std::optional<PixelCoord> anchor;  // unset: (width / 2, height - 1)

  PixelCoord anchor_for(int width, int height) const noexcept;
  void validate(int width, int height) const;
};

ImageBuf radial_brighten(const ImageBuf& img, const BrighteningParams& p);

// ---------------------------------------------------------------------------
// Retinex.

struct RetinexParams {
  std::vector<double> scales{15.0, 80.0, 250.0};
  std::vector<double> weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  double alpha = 125.0;
  double beta = 46.0;
  double gain_g = 192.0;
  double offset_b = -30.0;

  void validate() const;
  /// Replace the scale list and reset weights to uniform.
  void set_scales(std::vector<double> s);
};

/// Surround truncation radius used by ssr for scale c.
int surround_radius(double c) noexcept;

/// Square (2r+1)^2 kernel proportional to exp(-(dx^2 + dy^2) / c^2), unit sum.
FloatPlane build_surround_kernel(double c, int radius);

/// log(I + 1) - log(F*I + 1) with F the truncated Gaussian surround of scale c.
FloatPlane ssr(const FloatPlane& channel, double c);

/// Weighted sum of ssr over p.scales.
FloatPlane msr(const FloatPlane& channel, const RetinexParams& p);

/// beta * (log(alpha * I_i + 1) - log(I_r + I_g + I_b + 1)) per band.
std::array<FloatPlane, 3> color_restoration(const ImageBuf& img, double alpha, double beta);

/// gain * (C_i * MSR_i) + offset per band, then per-band min-max stretch to
/// [0, 255]. A constant band maps to 0.
ImageBuf msrcr(const ImageBuf& img, const RetinexParams& p);

/// Split a 3-channel image into one plane per band.
std::array<FloatPlane, 3> split_channels(const ImageBuf& img);

/// Min-max stretch each plane onto [0, 255] and interleave.
ImageBuf stretch_to_u8(const std::array<FloatPlane, 3>& bands);

// ---------------------------------------------------------------------------
// CLAHE.

struct ClaheParams {
  double clip_limit = 2.0;
  int tiles_x = 50;
  int tiles_y = 50;
  int bins = 256;

  void validate() const;
};

/// Tile boundary table: tile i spans [edges[i], edges[i+1]), all tiles
/// ceil(extent / tiles) wide. The last edge may pass `extent`; that margin is
/// filled by mirroring the image about its last row/column. The grid is
/// clamped to `extent` tiles.
std::vector<int> clahe_tile_edges(int extent, int tiles);

/// Clipped, redistributed, cumulative 256-entry lookup for one histogram of
/// `pixel_count` samples.
std::array<std::uint8_t, 256> clahe_tile_lut(std::array<int, 256> hist, int pixel_count,
                                             double clip_limit);

/// Single-channel equalization. Three-channel input is equalized on HSV V.
ImageBuf clahe(const ImageBuf& img, const ClaheParams& p);

}  // namespace uwe
