#include "uwenhance/pipeline.hpp"

#include <algorithm>

#include "uwenhance/error.hpp"

namespace uwe {

std::string_view method_name(MethodId m) noexcept {
  switch (m) {
    case MethodId::Brightening: return "brightening";
    case MethodId::Clahe: return "clahe";
    case MethodId::Retinex: return "retinex";
  }
  return "";
}

std::optional<MethodId> parse_method(std::string_view name) noexcept {
  for (MethodId m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

Pipeline::Pipeline(std::vector<MethodId> steps) : steps_(std::move(steps)) {
  if (steps_.empty() || steps_.size() > kAllMethods.size()) {
    throw Error(Errc::InvalidParameter, "a pipeline has between 1 and 3 steps");
  }
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (std::find(steps_.begin() + static_cast<std::ptrdiff_t>(i) + 1, steps_.end(), steps_[i]) !=
        steps_.end()) {
      throw Error(Errc::InvalidParameter, "a pipeline may not repeat a method");
    }
  }
}

bool Pipeline::contains(MethodId m) const noexcept {
  return std::find(steps_.begin(), steps_.end(), m) != steps_.end();
}

void PipelineParams::validate() const {
  if (!(brightening.k >= 0.0)) throw Error(Errc::InvalidParameter, "brightening k must be >= 0");
  retinex.validate();
  clahe.validate();
  canny.validate();
}

std::vector<Pipeline> enumerate_pipelines() {
  std::vector<Pipeline> out;
  for (std::size_t len = 1; len <= kAllMethods.size(); ++len) {
    // next_permutation over the sorted set visits orderings lexicographically;
    // the C(3, len) subsets are taken in lexicographic order too.
    std::vector<std::vector<MethodId>> of_len;
    std::vector<bool> pick(kAllMethods.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(len), true);
    do {
      std::vector<MethodId> subset;
      for (std::size_t i = 0; i < pick.size(); ++i) {
        if (pick[i]) subset.push_back(kAllMethods[i]);
      }
      do {
        of_len.push_back(subset);
      } while (std::next_permutation(subset.begin(), subset.end()));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(of_len.begin(), of_len.end());
    for (auto& steps : of_len) out.emplace_back(std::move(steps));
  }
  return out;
}

ImageBuf apply_method(const ImageBuf& img, MethodId m, const PipelineParams& params) {
  switch (m) {
    case MethodId::Brightening: return radial_brighten(img, params.brightening);
    case MethodId::Clahe: return clahe(img, params.clahe);
    case MethodId::Retinex: return msrcr(img, params.retinex);
  }
  throw Error(Errc::InvalidParameter, "unknown method");
}

ImageBuf run_pipeline(const ImageBuf& img, const Pipeline& p, const PipelineParams& params) {
  if (img.channels() != 3) {
    throw Error(Errc::ChannelMismatch, "pipelines run on 3-channel images");
  }
  ImageBuf cur = img;
  for (MethodId m : p.steps()) cur = apply_method(cur, m, params);
  return cur;
}

std::string pipeline_name(const Pipeline& p) {
  std::string name;
  for (MethodId m : p.steps()) {
    if (!name.empty()) name += '-';
    name += method_name(m);
  }
  return name;
}

Pipeline parse_pipeline(std::string_view name) {
  std::vector<MethodId> steps;
  std::size_t start = 0;
  while (true) {
    const std::size_t dash = name.find('-', start);
    const std::string_view token =
        name.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start);
    const auto m = parse_method(token);
    if (!m) throw Error(Errc::ParseError, "unknown method '" + std::string(token) + "'");
    steps.push_back(*m);
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  try {
    return Pipeline(std::move(steps));
  } catch (const Error& e) {
    throw Error(Errc::ParseError, "invalid pipeline '" + std::string(name) + "': " + e.what());
  }
}

}  // namespace uwe
