#pragma once

#include <span>
#include <vector>

#include "uwenhance/image.hpp"

namespace uwe {

/// Sampled 1-D Gaussian exp(-d^2 / denom) for d in [-radius, radius],
/// normalized to unit sum.
std::vector<double> gaussian_taps(double denom, int radius);

/// Separable convolution with edge-replicate padding. `taps` has odd length
/// 2r+1 and is applied horizontally, then vertically. The kernel may be far
/// wider than the plane: taps landing beyond a border are folded into that
/// border sample before the pass runs, so the cost per sample is bounded by
/// min(2r+1, extent) + 2.
FloatPlane convolve_separable(const FloatPlane& plane, std::span<const double> taps);

}  // namespace uwe
