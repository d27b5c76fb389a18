#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uwenhance/edges.hpp"
#include "uwenhance/enhance.hpp"
#include "uwenhance/image.hpp"

namespace uwe {

// Declaration order is the canonical order used everywhere.
enum class MethodId { Brightening = 0, Clahe = 1, Retinex = 2 };

inline constexpr std::array<MethodId, 3> kAllMethods{MethodId::Brightening, MethodId::Clahe,
                                                     MethodId::Retinex};

std::string_view method_name(MethodId m) noexcept;
std::optional<MethodId> parse_method(std::string_view name) noexcept;

/// Ordered, non-empty, duplicate-free sequence of at most three methods.
class Pipeline {
 public:
  /// Throws InvalidParameter when the invariant is violated.
  explicit Pipeline(std::vector<MethodId> steps);

  const std::vector<MethodId>& steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }
  bool contains(MethodId m) const noexcept;

  /// Length first, then lexicographic on MethodId.
  friend auto operator<=>(const Pipeline& a, const Pipeline& b) noexcept {
    if (auto c = a.steps_.size() <=> b.steps_.size(); c != 0) return c;
    return a.steps_ <=> b.steps_;
  }
  friend bool operator==(const Pipeline&, const Pipeline&) = default;

 private:
  std::vector<MethodId> steps_;
};

struct PipelineParams {
  BrighteningParams brightening;
  RetinexParams retinex;
  ClaheParams clahe;
  CannyParams canny;

  void validate() const;
};

/// All 15 pipelines in canonical order.
std::vector<Pipeline> enumerate_pipelines();

/// Run a single method on an image.
ImageBuf apply_method(const ImageBuf& img, MethodId m, const PipelineParams& params);

ImageBuf run_pipeline(const ImageBuf& img, const Pipeline& p, const PipelineParams& params);

/// e.g. "retinex-brightening-clahe".
std::string pipeline_name(const Pipeline& p);
/// Inverse of pipeline_name; throws ParseError.
Pipeline parse_pipeline(std::string_view name);

}  // namespace uwe
