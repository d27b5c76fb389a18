#include "oracles/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace uwe::oracle {

namespace {

int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

std::uint8_t round_u8(double v) {
  double r = std::floor(v + 0.5);
  if (r < 0) r = 0;
  if (r > 255) r = 255;
  return static_cast<std::uint8_t>(r);
}

FloatPlane band(const ImageBuf& img, int c) {
  FloatPlane p(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) p.at(x, y) = img.at(x, y, c);
  return p;
}

}  // namespace

FloatPlane surround_kernel(double c, int radius) {
  const int side = 2 * radius + 1;
  FloatPlane k(side, side);
  double total = 0;
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i) {
      const double dx = i - radius, dy = j - radius;
      k.at(i, j) = std::exp(-(dx * dx + dy * dy) / (c * c));
      total += k.at(i, j);
    }
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i) k.at(i, j) /= total;
  return k;
}

FloatPlane convolve_2d(const FloatPlane& in, const FloatPlane& kernel) {
  const int r = kernel.width() / 2;
  const int w = in.width(), h = in.height();
  FloatPlane out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      // Taps left of column 0 and right of column w-1 read the border sample.
      const int i_lo = std::min(std::max(-r, -x), r + 1);
      const int i_hi = std::max(std::min(r, w - 1 - x), i_lo - 1);
      double acc = 0;
      for (int j = -r; j <= r; ++j) {
        const double* krow = &kernel.data()[static_cast<std::size_t>(j + r) * kernel.width()];
        const int yy = clampi(y + j, 0, h - 1);
        double left = 0, mid = 0, right = 0;
        for (int i = -r; i < i_lo; ++i) left += krow[i + r];
        for (int i = i_lo; i <= i_hi; ++i) mid += krow[i + r] * in.at(x + i, yy);
        for (int i = i_hi + 1; i <= r; ++i) right += krow[i + r];
        acc += left * in.at(0, yy) + mid + right * in.at(w - 1, yy);
      }
      out.at(x, y) = acc;
    }
  return out;
}

FloatPlane ssr(const FloatPlane& channel, double c) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3 * c)));
  const FloatPlane blurred = convolve_2d(channel, surround_kernel(c, radius));
  FloatPlane out(channel.width(), channel.height());
  for (int y = 0; y < channel.height(); ++y)
    for (int x = 0; x < channel.width(); ++x)
      out.at(x, y) = std::log(channel.at(x, y) + 1) - std::log(blurred.at(x, y) + 1);
  return out;
}

FloatPlane weighted_sum(const std::vector<FloatPlane>& planes, const std::vector<double>& weights) {
  FloatPlane out(planes[0].width(), planes[0].height());
  for (std::size_t n = 0; n < planes.size(); ++n)
    for (int y = 0; y < out.height(); ++y)
      for (int x = 0; x < out.width(); ++x) out.at(x, y) += weights[n] * planes[n].at(x, y);
  return out;
}

FloatPlane msr(const FloatPlane& channel, const std::vector<double>& scales,
               const std::vector<double>& weights) {
  std::vector<FloatPlane> per_scale;
  for (double c : scales) per_scale.push_back(ssr(channel, c));
  return weighted_sum(per_scale, weights);
}

std::array<FloatPlane, 3> color_restoration(const ImageBuf& img, double alpha, double beta) {
  std::array<FloatPlane, 3> out{band(img, 0), band(img, 1), band(img, 2)};
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const double sum = double(img.at(x, y, 0)) + img.at(x, y, 1) + img.at(x, y, 2);
      for (int c = 0; c < 3; ++c) {
        out[c].at(x, y) = beta * std::log(alpha * img.at(x, y, c) + 1) - beta * std::log(sum + 1);
      }
    }
  return out;
}

ImageBuf msrcr(const ImageBuf& img, const std::vector<double>& scales,
               const std::vector<double>& weights, double alpha, double beta, double gain,
               double offset) {
  std::array<FloatPlane, 3> m;
  for (int c = 0; c < 3; ++c) m[c] = msr(band(img, c), scales, weights);
  return msrcr_from(img, m, alpha, beta, gain, offset);
}

ImageBuf msrcr_from(const ImageBuf& img, const std::array<FloatPlane, 3>& msr_bands, double alpha,
                    double beta, double gain, double offset) {
  const auto cr = color_restoration(img, alpha, beta);
  ImageBuf out(img.width(), img.height(), 3);
  for (int c = 0; c < 3; ++c) {
    const FloatPlane& m = msr_bands[c];
    FloatPlane raw(img.width(), img.height());
    double lo = 1e300, hi = -1e300;
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x) {
        raw.at(x, y) = gain * cr[c].at(x, y) * m.at(x, y) + offset;
        lo = std::min(lo, raw.at(x, y));
        hi = std::max(hi, raw.at(x, y));
      }
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x)
        out.at(x, y, c) = hi - lo > 1e-6 ? round_u8(255 * (raw.at(x, y) - lo) / (hi - lo)) : 0;
  }
  return out;
}

void hsv_from_rgb(int r, int g, int b, double& h, double& s, double& v) {
  const double rf = r / 255.0, gf = g / 255.0, bf = b / 255.0;
  const double mx = std::max({rf, gf, bf}), mn = std::min({rf, gf, bf});
  v = mx;
  s = mx > 0 ? (mx - mn) / mx : 0;
  if (mx == mn) {
    h = 0;
  } else if (mx == rf) {
    h = std::fmod(60 * (gf - bf) / (mx - mn) + 360, 360);
  } else if (mx == gf) {
    h = 60 * (bf - rf) / (mx - mn) + 120;
  } else {
    h = 60 * (rf - gf) / (mx - mn) + 240;
  }
}

// f(n) = v - v s max(0, min(k, 4 - k, 1)), k = (n + h/60) mod 6.
void rgb_from_hsv(double h, double s, double v, int& r, int& g, int& b) {
  auto f = [&](double n) {
    const double k = std::fmod(n + h / 60.0, 6.0);
    return v - v * s * std::max(0.0, std::min({k, 4.0 - k, 1.0}));
  };
  r = round_u8(f(5) * 255);
  g = round_u8(f(3) * 255);
  b = round_u8(f(1) * 255);
}

ImageBuf brighten(const ImageBuf& img, double k, int ax, int ay) {
  ImageBuf out(img.width(), img.height(), 3);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      double h, s, v;
      hsv_from_rgb(img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2), h, s, v);
      const double d = std::sqrt(double((x - ax) * (x - ax) + (y - ay) * (y - ay)));
      v = std::min(1.0, v + k * d);
      int r, g, b;
      rgb_from_hsv(h, s, v, r, g, b);
      out.at(x, y, 0) = static_cast<std::uint8_t>(r);
      out.at(x, y, 1) = static_cast<std::uint8_t>(g);
      out.at(x, y, 2) = static_cast<std::uint8_t>(b);
    }
  return out;
}

ImageBuf global_he(const ImageBuf& gray) {
  std::array<long, 256> hist{};
  for (auto v : gray.data()) ++hist[v];
  const double n = static_cast<double>(gray.pixel_count());
  ImageBuf out(gray.width(), gray.height(), 1);
  for (int y = 0; y < gray.height(); ++y)
    for (int x = 0; x < gray.width(); ++x) {
      long cdf = 0;
      for (int b = 0; b <= gray.at(x, y); ++b) cdf += hist[b];
      out.at(x, y) = round_u8(255.0 * cdf / n);
    }
  return out;
}

namespace {

struct Tile {
  int x0, x1, y0, y1;
};

// Equal tiles of ceil(n / t) samples; the grid may overhang the image.
Tile tile_at(const ImageBuf& g, int tx, int ty, int i, int j) {
  const int sw = (g.width() + tx - 1) / tx;
  const int sh = (g.height() + ty - 1) / ty;
  return {i * sw, (i + 1) * sw, j * sh, (j + 1) * sh};
}

// Overhang samples mirror the image about its last row/column: n-1+k -> n-1-k.
int reflect(int i, int n) {
  if (i < n) return i;
  const int k = i - (n - 1);
  return n - 1 - k < 0 ? 0 : n - 1 - k;
}

int tile_mapping(const ImageBuf& g, const Tile& t, double clip_limit, int value) {
  std::vector<int> hist(256, 0);
  int n = 0;
  for (int y = t.y0; y < t.y1; ++y)
    for (int x = t.x0; x < t.x1; ++x) {
      ++hist[g.at(reflect(x, g.width()), reflect(y, g.height()))];
      ++n;
    }
  int clip = static_cast<int>(clip_limit * n / 256);
  if (clip < 1) clip = 1;
  int excess = 0;
  for (int& h : hist)
    if (h > clip) {
      excess += h - clip;
      h = clip;
    }
  for (int b = 0; b < 256; ++b) hist[b] += excess / 256;
  for (int b = 0; b < excess % 256; ++b) hist[b] += 1;
  long cdf = 0;
  for (int b = 0; b <= value; ++b) cdf += hist[b];
  return round_u8(255.0 * double(cdf) / n);
}

// Neighbouring tile indices and the weight of the upper one along one axis.
void neighbours(double pos, const std::vector<double>& centres, int& lo, int& hi, double& w) {
  const int n = static_cast<int>(centres.size());
  if (pos <= centres[0]) {
    lo = hi = 0;
    w = 0;
    return;
  }
  if (pos >= centres[n - 1]) {
    lo = hi = n - 1;
    w = 0;
    return;
  }
  for (int t = 0; t + 1 < n; ++t) {
    if (centres[t] <= pos && pos < centres[t + 1]) {
      lo = t;
      hi = t + 1;
      w = (pos - centres[t]) / (centres[t + 1] - centres[t]);
      return;
    }
  }
}

}  // namespace

ImageBuf clahe_bruteforce(const ImageBuf& gray, int tiles_x, int tiles_y, double clip_limit) {
  const int tx = std::min(tiles_x, gray.width());
  const int ty = std::min(tiles_y, gray.height());
  std::vector<double> cx, cy;
  for (int i = 0; i < tx; ++i) {
    const Tile t = tile_at(gray, tx, ty, i, 0);
    cx.push_back((t.x0 + t.x1 - 1) / 2.0);
  }
  for (int j = 0; j < ty; ++j) {
    const Tile t = tile_at(gray, tx, ty, 0, j);
    cy.push_back((t.y0 + t.y1 - 1) / 2.0);
  }
  ImageBuf out(gray.width(), gray.height(), 1);
  for (int y = 0; y < gray.height(); ++y)
    for (int x = 0; x < gray.width(); ++x) {
      int xl, xh, yl, yh;
      double wx, wy;
      neighbours(x, cx, xl, xh, wx);
      neighbours(y, cy, yl, yh, wy);
      const int v = gray.at(x, y);
      const double m00 = tile_mapping(gray, tile_at(gray, tx, ty, xl, yl), clip_limit, v);
      const double m10 = tile_mapping(gray, tile_at(gray, tx, ty, xh, yl), clip_limit, v);
      const double m01 = tile_mapping(gray, tile_at(gray, tx, ty, xl, yh), clip_limit, v);
      const double m11 = tile_mapping(gray, tile_at(gray, tx, ty, xh, yh), clip_limit, v);
      const double upper = (1.0 - wx) * m00 + wx * m10;
      const double lower = (1.0 - wx) * m01 + wx * m11;
      out.at(x, y) = round_u8((1.0 - wy) * upper + wy * lower);
    }
  return out;
}

std::vector<std::uint8_t> canny(const ImageBuf& img, const CannyRef& p) {
  const int w = img.width(), h = img.height();
  FloatPlane gray(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      gray.at(x, y) = img.channels() == 1 ? img.at(x, y)
                                          : 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                                                0.114 * img.at(x, y, 2);
  if (p.sigma > 0) {
    const int side = 2 * p.radius + 1;
    FloatPlane k(side, side);
    double total = 0;
    for (int j = 0; j < side; ++j)
      for (int i = 0; i < side; ++i) {
        const double dx = i - p.radius, dy = j - p.radius;
        k.at(i, j) = std::exp(-(dx * dx + dy * dy) / (2 * p.sigma * p.sigma));
        total += k.at(i, j);
      }
    for (int j = 0; j < side; ++j)
      for (int i = 0; i < side; ++i) k.at(i, j) /= total;
    gray = convolve_2d(gray, k);
  }

  const int sx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  const int sy[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  FloatPlane mag(w, h), dir(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double gx = 0, gy = 0;
      for (int j = -1; j <= 1; ++j)
        for (int i = -1; i <= 1; ++i) {
          const double v = gray.at(clampi(x + i, 0, w - 1), clampi(y + j, 0, h - 1));
          gx += sx[j + 1][i + 1] * v;
          gy += sy[j + 1][i + 1] * v;
        }
      mag.at(x, y) = std::hypot(gx, gy);
      dir.at(x, y) = std::atan2(gy, gx);
    }

  FloatPlane thin(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double m = mag.at(x, y);
      if (m <= 0) continue;
      double deg = dir.at(x, y) * 180 / std::numbers::pi;
      while (deg < 0) deg += 180;
      while (deg >= 180) deg -= 180;
      int dx, dy;
      if (deg < 22.5 || deg >= 157.5) {
        dx = 1; dy = 0;
      } else if (deg < 67.5) {
        dx = 1; dy = 1;
      } else if (deg < 112.5) {
        dx = 0; dy = 1;
      } else {
        dx = -1; dy = 1;
      }
      bool keep = true;
      if (x + dx >= 0 && x + dx < w && y + dy >= 0 && y + dy < h && m < mag.at(x + dx, y + dy))
        keep = false;
      if (x - dx >= 0 && x - dx < w && y - dy >= 0 && y - dy < h && m <= mag.at(x - dx, y - dy))
        keep = false;
      if (keep) thin.at(x, y) = m;
    }

  std::vector<std::uint8_t> edges(static_cast<std::size_t>(w) * h, 0);
  std::function<void(int, int)> grow = [&](int x, int y) {
    for (int j = -1; j <= 1; ++j)
      for (int i = -1; i <= 1; ++i) {
        const int nx = x + i, ny = y + j;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const double v = thin.at(nx, ny);
        if (!edges[ny * w + nx] && v > 0 && v >= p.low) {
          edges[ny * w + nx] = 1;
          grow(nx, ny);
        }
      }
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double v = thin.at(x, y);
      if (v > 0 && v >= p.high && !edges[y * w + x]) {
        edges[y * w + x] = 1;
        grow(x, y);
      }
    }
  return edges;
}

}  // namespace uwe::oracle
