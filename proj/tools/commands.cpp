#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "uwenhance/error.hpp"
#include "uwenhance/image_io.hpp"
#include "uwenhance/pipeline.hpp"
#include "uwenhance/synthetic.hpp"

namespace uwe::cli {

namespace fs = std::filesystem;

void ParamOverrides::apply(PipelineParams& p) const {
  if (k) p.brightening.k = *k;
  if (!scales.empty()) p.retinex.set_scales(scales);
  if (clip_limit) p.clahe.clip_limit = *clip_limit;
  if (tiles) p.clahe.tiles_x = p.clahe.tiles_y = *tiles;
  if (low) p.canny.low_threshold = *low;
  if (high) p.canny.high_threshold = *high;
  if (blur_sigma) p.canny.blur_sigma = *blur_sigma;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileNotFound, path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CropInput load_entry(const ManifestEntry& e) {
  ImageBuf img = load_image(e.image_path);
  if (img.channels() != 3) {
    throw Error(Errc::ChannelMismatch, "crop image must be RGB: " + e.image_path.string());
  }
  if (e.rect) img = crop(img, *e.rect);
  MaskImage mask = MaskImage::from_image(load_image(e.mask_path));
  if (mask.width() != img.width() || mask.height() != img.height()) {
    throw Error(Errc::DimensionMismatch, "mask " + e.mask_path.string() + " is " +
                                             std::to_string(mask.width()) + "x" +
                                             std::to_string(mask.height()) + ", crop is " +
                                             std::to_string(img.width()) + "x" +
                                             std::to_string(img.height()));
  }
  if (img.width() < 3 || img.height() < 3) {
    throw Error(Errc::TooSmall, "crop must be at least 3x3");
  }
  return CropInput{e.crop_id, std::move(img), std::move(mask)};
}

void add_param_flags(CLI::App& cmd, ParamOverrides& o) {
  cmd.add_option("--k", o.k, "Radial brightening gain per pixel of distance");
  cmd.add_option("--scales", o.scales, "Retinex surround scales (comma separated)")
      ->delimiter(',');
  cmd.add_option("--clip-limit", o.clip_limit, "CLAHE clip limit");
  cmd.add_option("--tiles", o.tiles, "CLAHE tile grid size (N x N)");
  cmd.add_option("--low", o.low, "Canny low threshold");
  cmd.add_option("--high", o.high, "Canny high threshold");
  cmd.add_option("--blur-sigma", o.blur_sigma, "Canny pre-blur sigma (0 disables)");
}

int default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace

BenchOutcome run_bench(const Manifest& manifest, const BenchOptions& options) {
  BenchOutcome outcome;
  outcome.out_dir = options.out_dir.value_or(manifest.output_dir);

  std::vector<CropInput> crops;
  for (const ManifestEntry& e : manifest.entries) {
    try {
      crops.push_back(load_entry(e));
    } catch (const Error& err) {
      outcome.failures.push_back(e.crop_id.str() + ": " + err.what());
    }
  }
  if (crops.empty()) return outcome;

  const auto pipelines = enumerate_pipelines();
  EvalOptions eval;
  eval.jobs = options.jobs;
  eval.mask_before_canny = options.mask_before_canny;
  outcome.results = evaluate_batch(crops, pipelines, manifest.params, eval);

  std::vector<EvalRecord> records;
  for (const CropResult& r : outcome.results) {
    records.insert(records.end(), r.records.begin(), r.records.end());
  }
  outcome.tree = build_report_tree(records);

  fs::create_directories(outcome.out_dir);
  write_text(outcome.out_dir / "table.csv", emit_table(records));
  write_text(outcome.out_dir / "report.json", emit_report_json(*outcome.tree));
  for (const CropResult& r : outcome.results) {
    const fs::path dir = outcome.out_dir / r.id.str();
    fs::create_directories(dir);
    for (std::size_t i = 0; i < r.records.size(); ++i) {
      const auto& rec = r.records[i];
      const std::string name = rec.pipeline ? pipeline_name(*rec.pipeline) : "original";
      save_image(r.edge_maps[i].to_image(), dir / (name + ".png"));
    }
  }
  return outcome;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enhancement pipeline benchmark: brightening, CLAHE and MSRCR scored by masked Canny edges"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "uwenhance 0.1.0");

  ParamOverrides overrides;

  std::string in_path, method, out_path;
  auto* enhance = app.add_subcommand("enhance", "Apply one method or a hyphenated pipeline");
  enhance->add_option("input", in_path, "Input image")->required();
  enhance->add_option("pipeline", method, "e.g. clahe or brightening-retinex-clahe")->required();
  enhance->add_option("output", out_path, "Output image (.png/.ppm/.pgm)")->required();
  add_param_flags(*enhance, overrides);

  auto* canny_cmd = app.add_subcommand("canny", "Write the binary Canny edge map of an image");
  canny_cmd->add_option("input", in_path, "Input image")->required();
  canny_cmd->add_option("output", out_path, "Output edge map")->required();
  add_param_flags(*canny_cmd, overrides);

  std::string manifest_path;
  BenchOptions bench_opts;
  bench_opts.jobs = default_jobs();
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Run all 15 pipelines over a crop manifest");
  bench->add_option("manifest", manifest_path, "Manifest JSON")->required();
  bench->add_option("--jobs", bench_opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_flag("--mask-before-canny", bench_opts.mask_before_canny,
                  "Black out the surroundings before edge detection");
  bench->add_option("--out", bench_out, "Output directory (overrides the manifest)");
  add_param_flags(*bench, overrides);

  std::string table_path, report_out;
  auto* report = app.add_subcommand("report", "Rebuild report.json from a cached table.csv");
  report->add_option("table", table_path, "table.csv written by bench")->required();
  report->add_option("--out", report_out, "Output directory (default: next to the table)");

  std::string synth_out;
  SyntheticOptions synth_opts;
  auto* synth = app.add_subcommand("synth", "Write the synthetic evaluation corpus and its manifest");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--count", synth_opts.count, "Number of crops");
  synth->add_option("--size", synth_opts.size, "Crop side in pixels");
  synth->add_option("--seed", synth_opts.seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsageError;
  }

  try {
    if (*enhance) {
      std::optional<Pipeline> pipeline;
      try {
        pipeline = parse_pipeline(method);
      } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
      }
      PipelineParams params;
      overrides.apply(params);
      params.validate();
      const ImageBuf img = load_image(in_path);
      save_image(run_pipeline(img, *pipeline, params), out_path);
      return kOk;
    }

    if (*canny_cmd) {
      PipelineParams params;
      overrides.apply(params);
      params.validate();
      save_image(canny(load_image(in_path), params.canny).to_image(), out_path);
      return kOk;
    }

    if (*bench) {
      Manifest manifest;
      try {
        manifest = load_manifest(manifest_path);
        overrides.apply(manifest.params);
        manifest.params.validate();
      } catch (const ManifestError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
      } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
      }
      if (!bench_out.empty()) bench_opts.out_dir = bench_out;
      const BenchOutcome outcome = run_bench(manifest, bench_opts);
      if (outcome.tree) {
        out << "evaluated " << outcome.results.size() << " crop(s) into "
            << outcome.out_dir.string() << '\n'
            << format_method_effect(summarize_method_effect(*outcome.tree));
      }
      if (!outcome.failures.empty()) {
        err << outcome.failures.size() << " entr" << (outcome.failures.size() == 1 ? "y" : "ies")
            << " failed:\n";
        for (const auto& f : outcome.failures) err << "  " << f << '\n';
        return kRuntimeFailure;
      }
      return kOk;
    }

    if (*report) {
      const auto records = parse_table(read_text(table_path));
      const ReportNode tree = build_report_tree(records);
      const fs::path dir = report_out.empty() ? fs::path(table_path).parent_path() : fs::path(report_out);
      if (!dir.empty()) fs::create_directories(dir);
      write_text(dir / "report.json", emit_report_json(tree));
      out << format_method_effect(summarize_method_effect(tree));
      return kOk;
    }

    if (*synth) {
      const fs::path dir = synth_out;
      fs::create_directories(dir);
      Manifest manifest;
      manifest.output_dir = "out";
      manifest.params.canny = synthetic_canny_params();
      for (const CropInput& c : synthetic_corpus(synth_opts)) {
        const std::string id = c.id.str();
        save_image(c.image, dir / (id + ".png"));
        save_image(c.mask.to_image(), dir / (id + "_mask.png"));
        manifest.entries.push_back({c.id, id + ".png", id + "_mask.png", std::nullopt});
      }
      write_text(dir / "manifest.json", manifest_to_json(manifest));
      out << "wrote " << manifest.entries.size() << " crops and manifest.json to " << dir.string()
          << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsageError;
}

}  // namespace uwe::cli
