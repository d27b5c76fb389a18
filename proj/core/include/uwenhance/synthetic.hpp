#pragma once

#include <cstdint>
#include <vector>

#include "uwenhance/edges.hpp"
#include "uwenhance/eval.hpp"

namespace uwe {

struct SyntheticOptions {
  int count = 13;
  int size = 128;
  std::uint64_t seed = 81;
};

/// Deterministic stand-in for seabed crops: dim blue-green water lit from the
/// bottom centre, sensor noise, sparse marine snow, and one faint elliptical
/// object with a matching elliptical mask (padded by 3 px to cover its rim).
std::vector<CropInput> synthetic_corpus(const SyntheticOptions& options = {});

/// Edge thresholds the corpus is evaluated at. The objects are faint enough
/// that the library defaults (100/200) detect nothing on the originals.
CannyParams synthetic_canny_params();

}  // namespace uwe
