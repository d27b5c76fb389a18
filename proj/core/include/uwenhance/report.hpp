#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uwenhance/eval.hpp"
#include "uwenhance/pipeline.hpp"

namespace uwe {

/// One block of the processing-step tree. The root is the original image
/// (method and pct_change unset); each child appends one unused method.
struct ReportNode {
  std::optional<MethodId> method;
  std::vector<MethodId> path;
  std::uint64_t tp_sum = 0;
  // 100 * (tp_sum - parent) / parent; unset at the root or when parent is 0.
  std::optional<double> pct_change;
  std::vector<ReportNode> children;

  std::size_t node_count() const noexcept;
};

ReportNode build_report_tree(std::span<const EvalRecord> records);

/// CSV: header "crop,original,<15 pipeline names>", one row per crop sorted
/// by CropId.
std::string emit_table(std::span<const EvalRecord> records);
std::vector<EvalRecord> parse_table(std::string_view csv);

std::string emit_report_json(const ReportNode& tree);
ReportNode parse_report_json(std::string_view json);

/// Two decimals with explicit '+' for positives, e.g. "+2.78", "-53.03", "0.00".
std::string format_pct(double pct);

struct PctRange {
  double min = 0.0;
  double max = 0.0;
};

/// Per method (indexed by MethodId), the range of pct_change over every tree
/// edge that applies that method. Unset when no such edge has a defined value.
std::array<std::optional<PctRange>, 3> summarize_method_effect(const ReportNode& tree);

/// Human-readable rendering of summarize_method_effect.
std::string format_method_effect(const std::array<std::optional<PctRange>, 3>& effect);

}  // namespace uwe
