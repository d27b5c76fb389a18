#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "uwenhance/convolve.hpp"
#include "uwenhance/enhance.hpp"
#include "uwenhance/error.hpp"

namespace uwe {

void RetinexParams::validate() const {
  if (scales.empty()) throw Error(Errc::InvalidParameter, "retinex needs at least one scale");
  if (weights.size() != scales.size()) {
    throw Error(Errc::InvalidParameter, "retinex weights and scales differ in length");
  }
  for (double c : scales) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw Error(Errc::InvalidParameter, "retinex scales must be finite and > 0");
    }
  }
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(Errc::InvalidParameter, "retinex weights must be >= 0");
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw Error(Errc::InvalidParameter, "retinex weights must sum to 1");
  }
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gain_g) ||
      !std::isfinite(offset_b) || !(alpha > 0.0)) {
    throw Error(Errc::InvalidParameter, "retinex gain constants must be finite, alpha > 0");
  }
}

void RetinexParams::set_scales(std::vector<double> s) {
  scales = std::move(s);
  weights.assign(scales.size(), scales.empty() ? 0.0 : 1.0 / static_cast<double>(scales.size()));
}

int surround_radius(double c) noexcept {
  return std::max(1, static_cast<int>(std::ceil(3.0 * c)));
}

FloatPlane build_surround_kernel(double c, int radius) {
  if (!(c > 0.0) || radius < 1) {
    throw Error(Errc::InvalidParameter, "surround kernel needs c > 0 and radius >= 1");
  }
  const int side = 2 * radius + 1;
  FloatPlane kernel(side, side);
  double sum = 0.0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const double w = std::exp(-static_cast<double>(dx * dx + dy * dy) / (c * c));
      kernel.at(dx + radius, dy + radius) = w;
      sum += w;
    }
  }
  for (double& w : kernel.data()) w /= sum;
  return kernel;
}

FloatPlane ssr(const FloatPlane& channel, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(Errc::InvalidParameter, "ssr scale must be finite and > 0");
  }
  const auto in = channel.data();
  if (std::any_of(in.begin(), in.end(), [](double v) { return !(v >= 0.0) || !std::isfinite(v); })) {
    throw Error(Errc::InvalidParameter, "ssr input samples must be finite and >= 0");
  }
  // exp(-(dx^2 + dy^2) / c^2) factors into two 1-D passes.
  const auto taps = gaussian_taps(c * c, surround_radius(c));
  FloatPlane out = convolve_separable(channel, taps);
  auto o = out.data();
  for (std::size_t i = 0; i < o.size(); ++i) {
    o[i] = std::log(in[i] + 1.0) - std::log(o[i] + 1.0);
  }
  return out;
}

FloatPlane msr(const FloatPlane& channel, const RetinexParams& p) {
  p.validate();
  FloatPlane acc(channel.width(), channel.height());
  auto a = acc.data();
  for (std::size_t n = 0; n < p.scales.size(); ++n) {
    if (p.weights[n] == 0.0) continue;
    const FloatPlane r = ssr(channel, p.scales[n]);
    const auto rd = r.data();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += p.weights[n] * rd[i];
  }
  return acc;
}

std::array<FloatPlane, 3> split_channels(const ImageBuf& img) {
  if (img.channels() != 3) throw Error(Errc::ChannelMismatch, "expected a 3-channel image");
  std::array<FloatPlane, 3> bands{FloatPlane(img.width(), img.height()),
                                  FloatPlane(img.width(), img.height()),
                                  FloatPlane(img.width(), img.height())};
  const auto px = img.data();
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    for (int c = 0; c < 3; ++c) bands[c].data()[i] = px[3 * i + c];
  }
  return bands;
}

std::array<FloatPlane, 3> color_restoration(const ImageBuf& img, double alpha, double beta) {
  if (img.channels() != 3) {
    throw Error(Errc::ChannelMismatch, "color_restoration needs a 3-channel image");
  }
  std::array<FloatPlane, 3> out{FloatPlane(img.width(), img.height()),
                                FloatPlane(img.width(), img.height()),
                                FloatPlane(img.width(), img.height())};
  const auto px = img.data();
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    const double total = static_cast<double>(px[3 * i]) + px[3 * i + 1] + px[3 * i + 2];
    const double log_total = std::log(total + 1.0);
    for (int c = 0; c < 3; ++c) {
      out[c].data()[i] = beta * (std::log(alpha * px[3 * i + c] + 1.0) - log_total);
    }
  }
  return out;
}

ImageBuf stretch_to_u8(const std::array<FloatPlane, 3>& bands) {
  const int w = bands[0].width();
  const int h = bands[0].height();
  ImageBuf out(w, h, 3);
  auto px = out.data();
  for (int c = 0; c < 3; ++c) {
    const auto d = bands[c].data();
    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    const double mn = *lo;
    const double range = *hi - mn;
    // Spreads below this are convolution round-off on a flat band.
    const double flat = 1e-9 * std::max({1.0, std::fabs(*lo), std::fabs(*hi)});
    for (std::size_t i = 0; i < d.size(); ++i) {
      px[3 * i + c] = range > flat ? to_u8((d[i] - mn) / range * 255.0) : 0;
    }
  }
  return out;
}

ImageBuf msrcr(const ImageBuf& img, const RetinexParams& p) {
  if (img.channels() != 3) throw Error(Errc::ChannelMismatch, "msrcr needs a 3-channel image");
  p.validate();
  auto bands = split_channels(img);
  const auto restore = color_restoration(img, p.alpha, p.beta);
  for (int c = 0; c < 3; ++c) {
    FloatPlane m = msr(bands[c], p);
    auto md = m.data();
    const auto cd = restore[c].data();
    for (std::size_t i = 0; i < md.size(); ++i) {
      md[i] = p.gain_g * (cd[i] * md[i]) + p.offset_b;
    }
    bands[c] = std::move(m);
  }
  return stretch_to_u8(bands);
}

}  // namespace uwe
