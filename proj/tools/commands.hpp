#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "manifest.hpp"
#include "uwenhance/eval.hpp"
#include "uwenhance/report.hpp"

namespace uwe::cli {

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kUsageError = 2 };

/// Command-line parameter overrides; unset fields keep the manifest/default value.
struct ParamOverrides {
  std::optional<double> k;
  std::vector<double> scales;
  std::optional<double> clip_limit;
  std::optional<int> tiles;
  std::optional<double> low;
  std::optional<double> high;
  std::optional<double> blur_sigma;

  void apply(PipelineParams& p) const;
};

struct BenchOptions {
  int jobs = 1;
  bool mask_before_canny = false;
  std::optional<std::filesystem::path> out_dir;
};

struct BenchOutcome {
  std::filesystem::path out_dir;
  std::vector<CropResult> results;
  std::vector<std::string> failures;  // "<crop>: <message>"
  std::optional<ReportNode> tree;     // unset when every entry failed
};

/// Loads every entry, evaluates the readable ones and writes table.csv,
/// report.json and <crop>/<pipeline>.png under the output directory.
BenchOutcome run_bench(const Manifest& manifest, const BenchOptions& options);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uwe::cli
