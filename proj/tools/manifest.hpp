#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uwenhance/eval.hpp"
#include "uwenhance/image.hpp"
#include "uwenhance/pipeline.hpp"

namespace uwe::cli {

// A manifest that cannot be used at all (exit code 2).
class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ManifestEntry {
  CropId crop_id;
  std::filesystem::path image_path;
  std::filesystem::path mask_path;
  std::optional<Rect> rect;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::filesystem::path output_dir;
  PipelineParams params;
};

/// JSON manifest:
///   { "output_dir": "out",
///     "params": { "k": 0.00025, "anchor": [x, y], "scales": [15, 80, 250],
///                 "weights": [...], "alpha": 125, "beta": 46, "gain": 192,
///                 "offset": -30, "clip_limit": 2, "tiles": 50 | [tx, ty],
///                 "low": 100, "high": 200, "blur_sigma": 1.4, "blur_radius": 4 },
///     "entries": [ { "crop_id": "i0_crop_1", "image": "i0.png",
///                    "mask": "i0_crop_1_mask.png", "rect": [x, y, w, h] } ] }
/// Relative paths resolve against the manifest's directory. Every params key
/// is optional.
Manifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);

std::string manifest_to_json(const Manifest& m);

}  // namespace uwe::cli
