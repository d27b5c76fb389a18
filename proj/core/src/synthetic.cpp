#include "uwenhance/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "uwenhance/error.hpp"

namespace uwe {

namespace {

constexpr double kSnowDensity = 0.01;  // particles per pixel
constexpr double kSnowAmplitude = 150.0;
constexpr double kMaskPad = 3.0;

CropInput make_crop(int index, int size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  const double s = size;
  const double cx = s * (0.4 + 0.2 * unit(rng));
  const double cy = s * (0.4 + 0.2 * unit(rng));
  const double ax = s * (0.20 + 0.10 * unit(rng));
  const double ay = s * (0.15 + 0.10 * unit(rng));
  const double theta = std::numbers::pi * unit(rng);
  const double ct = std::cos(theta), st = std::sin(theta);

  // Red is almost fully absorbed; the object is a faint orange lift.
  const double water[3] = {10.0 + 4.0 * unit(rng), 38.0 + 8.0 * unit(rng),
                           48.0 + 8.0 * unit(rng)};
  const double lift[3] = {45.0, 30.0, 15.0};
  const double sigma = 5.0 + 2.0 * unit(rng);

  // Each particle is a bright pixel bleeding half its energy right and down.
  std::vector<double> snow(static_cast<std::size_t>(size) * size, 0.0);
  const int particles = static_cast<int>(kSnowDensity * size * size);
  for (int i = 0; i < particles; ++i) {
    const int px = static_cast<int>(unit(rng) * size);
    const int py = static_cast<int>(unit(rng) * size);
    const double a = kSnowAmplitude * (0.5 + 0.5 * unit(rng));
    snow[static_cast<std::size_t>(py) * size + px] += a;
    if (px + 1 < size) snow[static_cast<std::size_t>(py) * size + px + 1] += 0.5 * a;
    if (py + 1 < size) snow[static_cast<std::size_t>(py + 1) * size + px] += 0.5 * a;
  }

  ImageBuf img(size, size, 3);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(size) * size, 0);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * size + x;
      const double dx = x - cx, dy = y - cy;
      const double u = (dx * ct + dy * st) / ax;
      const double v = (-dx * st + dy * ct) / ay;
      const double r = std::sqrt(u * u + v * v);
      const double light = 1.0 - 0.35 * std::hypot(x - s / 2.0, y - (s - 1.0)) / s;
      const bool inside = r <= 1.0;
      for (int c = 0; c < 3; ++c) {
        const double base = water[c] * light + (inside ? lift[c] : 0.0) + snow[i];
        img.at(x, y, c) = to_u8(base + sigma * noise(rng));
      }
      if (r <= 1.0 + kMaskPad / std::min(ax, ay)) mask[i] = 1;
    }
  }
  return CropInput{CropId{index / 2, index % 2 + 1}, std::move(img),
                   MaskImage(size, size, std::move(mask))};
}

}  // namespace

std::vector<CropInput> synthetic_corpus(const SyntheticOptions& options) {
  if (options.count < 1 || options.size < 16) {
    throw Error(Errc::InvalidParameter, "synthetic corpus needs count >= 1 and size >= 16");
  }
  std::mt19937_64 rng(options.seed);
  std::vector<CropInput> out;
  out.reserve(static_cast<std::size_t>(options.count));
  for (int i = 0; i < options.count; ++i) out.push_back(make_crop(i, options.size, rng));
  return out;
}

CannyParams synthetic_canny_params() {
  CannyParams p;
  p.low_threshold = 25.0;
  p.high_threshold = 50.0;
  return p;
}

}  // namespace uwe
