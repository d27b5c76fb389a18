#include "uwenhance/eval.hpp"

#include <charconv>
#include <map>

#include "parallel.hpp"
#include "uwenhance/error.hpp"

namespace uwe {

std::string CropId::str() const {
  return "i" + std::to_string(image_index) + "_crop_" + std::to_string(crop_index);
}

CropId CropId::parse(std::string_view text) {
  const auto fail = [&] {
    return Error(Errc::ParseError, "crop id '" + std::string(text) + "' is not i<n>_crop_<m>");
  };
  constexpr std::string_view kSep = "_crop_";
  const std::size_t sep = text.find(kSep);
  if (text.size() < 2 || text[0] != 'i' || sep == std::string_view::npos) throw fail();

  const auto parse_int = [&](std::string_view digits) {
    int value = 0;
    if (digits.empty() || digits.front() == '-' || digits.front() == '+') throw fail();
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) throw fail();
    return value;
  };
  CropId id;
  id.image_index = parse_int(text.substr(1, sep - 1));
  id.crop_index = parse_int(text.substr(sep + kSep.size()));
  if (id.crop_index < 1) throw fail();
  return id;
}

std::uint64_t tp_count(const EdgeMap& edges, const MaskImage& mask) {
  if (edges.width() != mask.width() || edges.height() != mask.height()) {
    throw Error(Errc::DimensionMismatch, "edge map and mask dimensions differ");
  }
  const auto e = edges.data();
  const auto m = mask.data();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < e.size(); ++i) count += (e[i] & m[i]);
  return count;
}

namespace {

using Steps = std::vector<MethodId>;

struct PrefixNode {
  Steps steps;
  int parent = -1;  // index into prefixes, -1 = original
};

}  // namespace

std::vector<CropResult> evaluate_batch(std::span<const CropInput> crops,
                                       std::span<const Pipeline> pipelines,
                                       const PipelineParams& params,
                                       const EvalOptions& options) {
  params.validate();
  for (const CropInput& c : crops) {
    if (c.image.channels() != 3) {
      throw Error(Errc::ChannelMismatch, c.id.str() + ": crops must be 3-channel");
    }
    if (c.image.width() != c.mask.width() || c.image.height() != c.mask.height()) {
      throw Error(Errc::DimensionMismatch, c.id.str() + ": crop and mask dimensions differ");
    }
  }

  // Every prefix of every requested pipeline, shortest first.
  std::vector<PrefixNode> prefixes;
  std::map<Steps, int> index_of;
  for (std::size_t len = 1; len <= kAllMethods.size(); ++len) {
    for (const Pipeline& p : pipelines) {
      if (p.size() < len) continue;
      Steps head(p.steps().begin(), p.steps().begin() + static_cast<std::ptrdiff_t>(len));
      if (index_of.contains(head)) continue;
      int parent = -1;
      if (len > 1) parent = index_of.at(Steps(head.begin(), head.end() - 1));
      index_of.emplace(head, static_cast<int>(prefixes.size()));
      prefixes.push_back({std::move(head), parent});
    }
  }

  const std::size_t np = prefixes.size();
  std::vector<ImageBuf> images(crops.size() * np);
  const auto source = [&](std::size_t crop, int prefix) -> const ImageBuf& {
    return prefix < 0 ? crops[crop].image : images[crop * np + static_cast<std::size_t>(prefix)];
  };

  for (std::size_t len = 1; len <= kAllMethods.size(); ++len) {
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    for (std::size_t c = 0; c < crops.size(); ++c) {
      for (std::size_t k = 0; k < np; ++k) {
        if (prefixes[k].steps.size() == len) tasks.emplace_back(c, k);
      }
    }
    detail::parallel_for(tasks.size(), options.jobs, [&](std::size_t t) {
      const auto [c, k] = tasks[t];
      images[c * np + k] =
          apply_method(source(c, prefixes[k].parent), prefixes[k].steps.back(), params);
    });
  }

  const std::size_t per_crop = pipelines.size() + 1;
  std::vector<CropResult> results(crops.size());
  for (std::size_t c = 0; c < crops.size(); ++c) {
    results[c].id = crops[c].id;
    results[c].records.resize(per_crop);
    results[c].edge_maps.resize(per_crop);
  }
  detail::parallel_for(crops.size() * per_crop, options.jobs, [&](std::size_t t) {
    const std::size_t c = t / per_crop;
    const std::size_t slot = t % per_crop;
    const int prefix = slot == 0 ? -1 : index_of.at(pipelines[slot - 1].steps());
    const ImageBuf& img = source(c, prefix);
    const MaskImage& mask = crops[c].mask;

    EdgeMap edges = options.mask_before_canny ? canny(apply_mask(img, mask), params.canny)
                                              : canny(img, params.canny);
    EvalRecord& rec = results[c].records[slot];
    rec.crop = crops[c].id;
    if (slot > 0) rec.pipeline = pipelines[slot - 1];
    rec.tp_count = tp_count(edges, mask);
    results[c].edge_maps[slot] = std::move(edges);
  });
  return results;
}

std::vector<EvalRecord> evaluate_crop(const CropId& id, const ImageBuf& crop,
                                      const MaskImage& mask,
                                      std::span<const Pipeline> pipelines,
                                      const PipelineParams& params,
                                      const EvalOptions& options) {
  const CropInput input{id, crop, mask};
  auto results = evaluate_batch(std::span(&input, 1), pipelines, params, options);
  return std::move(results.front().records);
}

}  // namespace uwe
