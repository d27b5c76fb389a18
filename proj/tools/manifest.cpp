#include "manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "uwenhance/error.hpp"

namespace uwe::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void read_params(const json& j, PipelineParams& p) {
  if (!j.is_object()) throw ManifestError("manifest 'params' must be an object");
  static const std::set<std::string> known{
      "k", "anchor", "scales", "weights", "alpha", "beta", "gain", "offset", "clip_limit",
      "tiles", "low", "high", "blur_sigma", "blur_radius"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ManifestError("unknown manifest parameter '" + key + "'");
  }

  if (j.contains("k")) p.brightening.k = j["k"].get<double>();
  if (j.contains("anchor")) {
    const auto a = j["anchor"].get<std::vector<int>>();
    if (a.size() != 2) throw ManifestError("'anchor' must be [x, y]");
    p.brightening.anchor = PixelCoord{a[0], a[1]};
  }
  if (j.contains("scales")) p.retinex.set_scales(j["scales"].get<std::vector<double>>());
  if (j.contains("weights")) p.retinex.weights = j["weights"].get<std::vector<double>>();
  if (j.contains("alpha")) p.retinex.alpha = j["alpha"].get<double>();
  if (j.contains("beta")) p.retinex.beta = j["beta"].get<double>();
  if (j.contains("gain")) p.retinex.gain_g = j["gain"].get<double>();
  if (j.contains("offset")) p.retinex.offset_b = j["offset"].get<double>();
  if (j.contains("clip_limit")) p.clahe.clip_limit = j["clip_limit"].get<double>();
  if (j.contains("tiles")) {
    const json& t = j["tiles"];
    if (t.is_array()) {
      const auto v = t.get<std::vector<int>>();
      if (v.size() != 2) throw ManifestError("'tiles' must be N or [tx, ty]");
      p.clahe.tiles_x = v[0];
      p.clahe.tiles_y = v[1];
    } else {
      p.clahe.tiles_x = p.clahe.tiles_y = t.get<int>();
    }
  }
  if (j.contains("low")) p.canny.low_threshold = j["low"].get<double>();
  if (j.contains("high")) p.canny.high_threshold = j["high"].get<double>();
  if (j.contains("blur_sigma")) p.canny.blur_sigma = j["blur_sigma"].get<double>();
  if (j.contains("blur_radius")) p.canny.blur_radius = j["blur_radius"].get<int>();
}

}  // namespace

Manifest parse_manifest(const std::string& text, const fs::path& base_dir) {
  Manifest m;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ManifestError("manifest must be a JSON object");
    m.output_dir = j.value("output_dir", std::string("out"));
    if (m.output_dir.is_relative()) m.output_dir = base_dir / m.output_dir;
    if (j.contains("params")) read_params(j["params"], m.params);

    const json& entries = j.at("entries");
    if (!entries.is_array() || entries.empty()) {
      throw ManifestError("manifest 'entries' must be a non-empty array");
    }
    std::set<CropId> seen;
    for (const json& e : entries) {
      ManifestEntry entry;
      entry.crop_id = CropId::parse(e.at("crop_id").get<std::string>());
      if (!seen.insert(entry.crop_id).second) {
        throw ManifestError("duplicate crop_id " + entry.crop_id.str());
      }
      entry.image_path = e.at("image").get<std::string>();
      entry.mask_path = e.at("mask").get<std::string>();
      if (entry.image_path.is_relative()) entry.image_path = base_dir / entry.image_path;
      if (entry.mask_path.is_relative()) entry.mask_path = base_dir / entry.mask_path;
      if (e.contains("rect")) {
        const auto r = e["rect"].get<std::vector<int>>();
        if (r.size() != 4) throw ManifestError("'rect' must be [x, y, w, h]");
        entry.rect = Rect{r[0], r[1], r[2], r[3]};
      }
      m.entries.push_back(std::move(entry));
    }
    m.params.validate();
  } catch (const json::exception& e) {
    throw ManifestError(std::string("malformed manifest: ") + e.what());
  } catch (const Error& e) {
    throw ManifestError(std::string("invalid manifest: ") + e.what());
  }
  return m;
}

Manifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot read manifest " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

std::string manifest_to_json(const Manifest& m) {
  nlohmann::ordered_json j;
  j["output_dir"] = m.output_dir.string();
  const PipelineParams& p = m.params;
  nlohmann::ordered_json params;
  params["k"] = p.brightening.k;
  if (p.brightening.anchor) params["anchor"] = {p.brightening.anchor->x, p.brightening.anchor->y};
  params["scales"] = p.retinex.scales;
  params["weights"] = p.retinex.weights;
  params["alpha"] = p.retinex.alpha;
  params["beta"] = p.retinex.beta;
  params["gain"] = p.retinex.gain_g;
  params["offset"] = p.retinex.offset_b;
  params["clip_limit"] = p.clahe.clip_limit;
  params["tiles"] = {p.clahe.tiles_x, p.clahe.tiles_y};
  params["low"] = p.canny.low_threshold;
  params["high"] = p.canny.high_threshold;
  params["blur_sigma"] = p.canny.blur_sigma;
  params["blur_radius"] = p.canny.blur_radius;
  j["params"] = params;
  j["entries"] = nlohmann::ordered_json::array();
  for (const ManifestEntry& e : m.entries) {
    nlohmann::ordered_json je;
    je["crop_id"] = e.crop_id.str();
    je["image"] = e.image_path.string();
    je["mask"] = e.mask_path.string();
    if (e.rect) je["rect"] = {e.rect->x, e.rect->y, e.rect->w, e.rect->h};
    j["entries"].push_back(je);
  }
  return j.dump(2) + "\n";
}

}  // namespace uwe::cli
