#include "uwenhance/convolve.hpp"

#include <algorithm>
#include <cmath>

#include "uwenhance/error.hpp"

namespace uwe {

namespace {

// For one axis of length n, the per-output-position tap range that lands
// inside [0, n) plus the summed weight of taps that fall off either end.
struct FoldedAxis {
  std::vector<int> first;  // first in-range tap index
  std::vector<int> last;   // one past the last in-range tap index
  std::vector<double> low_weight;
  std::vector<double> high_weight;
};

FoldedAxis fold_axis(int n, std::span<const double> taps) {
  const int r = static_cast<int>(taps.size() / 2);
  std::vector<double> prefix(taps.size() + 1, 0.0);
  for (std::size_t j = 0; j < taps.size(); ++j) prefix[j + 1] = prefix[j] + taps[j];
  const double total = prefix.back();

  FoldedAxis axis;
  axis.first.resize(n);
  axis.last.resize(n);
  axis.low_weight.resize(n);
  axis.high_weight.resize(n);
  for (int x = 0; x < n; ++x) {
    // tap j reads sample x + j - r
    const int j0 = std::clamp(r - x, 0, 2 * r + 1);
    const int j1 = std::clamp(n - x + r, 0, 2 * r + 1);
    axis.first[x] = j0;
    axis.last[x] = j1;
    axis.low_weight[x] = prefix[j0];
    axis.high_weight[x] = total - prefix[j1];
  }
  return axis;
}

}  // namespace

std::vector<double> gaussian_taps(double denom, int radius) {
  if (!(denom > 0.0) || radius < 0) {
    throw Error(Errc::InvalidParameter, "gaussian_taps needs denom > 0 and radius >= 0");
  }
  std::vector<double> taps(2 * static_cast<std::size_t>(radius) + 1);
  double sum = 0.0;
  for (int d = -radius; d <= radius; ++d) {
    const double w = std::exp(-static_cast<double>(d) * d / denom);
    taps[d + radius] = w;
    sum += w;
  }
  for (double& w : taps) w /= sum;
  return taps;
}

FloatPlane convolve_separable(const FloatPlane& plane, std::span<const double> taps) {
  if (taps.size() % 2 != 1) {
    throw Error(Errc::InvalidParameter, "separable kernel must have odd length");
  }
  const int w = plane.width();
  const int h = plane.height();
  const int r = static_cast<int>(taps.size() / 2);

  FloatPlane tmp(w, h);
  const FoldedAxis ax = fold_axis(w, taps);
  for (int y = 0; y < h; ++y) {
    const auto in = plane.row(y);
    auto out = tmp.row(y);
    for (int x = 0; x < w; ++x) {
      double acc = ax.low_weight[x] * in[0] + ax.high_weight[x] * in[w - 1];
      const int base = x - r;
      for (int j = ax.first[x]; j < ax.last[x]; ++j) acc += taps[j] * in[base + j];
      out[x] = acc;
    }
  }

  FloatPlane result(w, h);
  const FoldedAxis ay = fold_axis(h, taps);
  for (int y = 0; y < h; ++y) {
    auto out = result.row(y);
    const auto top = tmp.row(0);
    const auto bottom = tmp.row(h - 1);
    const double lw = ay.low_weight[y];
    const double hw = ay.high_weight[y];
    for (int x = 0; x < w; ++x) out[x] = lw * top[x] + hw * bottom[x];
    for (int j = ay.first[y]; j < ay.last[y]; ++j) {
      const auto src = tmp.row(y + j - r);
      const double t = taps[j];
      for (int x = 0; x < w; ++x) out[x] += t * src[x];
    }
  }
  return result;
}

}  // namespace uwe
