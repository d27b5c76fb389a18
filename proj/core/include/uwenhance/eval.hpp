#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uwenhance/edges.hpp"
#include "uwenhance/image.hpp"
#include "uwenhance/pipeline.hpp"

namespace uwe {

/// Crop label of the form i<image>_crop_<crop>.
struct CropId {
  int image_index = 0;
  int crop_index = 1;

  std::string str() const;
  static CropId parse(std::string_view text);

  friend auto operator<=>(const CropId&, const CropId&) = default;
};

/// True-positive count for one crop under one pipeline (nullopt = original).
struct EvalRecord {
  CropId crop;
  std::optional<Pipeline> pipeline;
  std::uint64_t tp_count = 0;

  friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

/// Edge pixels that fall inside the mask.
std::uint64_t tp_count(const EdgeMap& edges, const MaskImage& mask);

struct EvalOptions {
  // Zero the surroundings before edge detection (literal protocol) instead of
  // detecting on the full crop and intersecting with the mask.
  bool mask_before_canny = false;
  int jobs = 1;
};

struct CropInput {
  CropId id;
  ImageBuf image;
  MaskImage mask;
};

/// Records (original first, then `pipelines` order) and their edge maps.
struct CropResult {
  CropId id;
  std::vector<EvalRecord> records;
  std::vector<EdgeMap> edge_maps;
};

/// Evaluates the original plus every pipeline on every crop. Work is split
/// into (crop, pipeline-prefix) tasks so shared prefixes are computed once;
/// results do not depend on `jobs`.
std::vector<CropResult> evaluate_batch(std::span<const CropInput> crops,
                                       std::span<const Pipeline> pipelines,
                                       const PipelineParams& params,
                                       const EvalOptions& options = {});

std::vector<EvalRecord> evaluate_crop(const CropId& id, const ImageBuf& crop,
                                      const MaskImage& mask,
                                      std::span<const Pipeline> pipelines,
                                      const PipelineParams& params,
                                      const EvalOptions& options = {});

}  // namespace uwe
