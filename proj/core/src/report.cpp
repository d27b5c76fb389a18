#include "uwenhance/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "uwenhance/error.hpp"

namespace uwe {

namespace {

using Steps = std::vector<MethodId>;
using CountsByPath = std::map<Steps, std::uint64_t>;

Steps steps_of(const EvalRecord& r) { return r.pipeline ? r.pipeline->steps() : Steps{}; }

std::string column_name(const Steps& path) {
  return path.empty() ? "original" : pipeline_name(Pipeline(path));
}

// Per-crop counts, checked for completeness against original + all 15.
std::map<CropId, CountsByPath> group_complete(std::span<const EvalRecord> records) {
  if (records.empty()) throw Error(Errc::IncompleteRecords, "no evaluation records");
  std::map<CropId, CountsByPath> by_crop;
  for (const EvalRecord& r : records) {
    if (!by_crop[r.crop].emplace(steps_of(r), r.tp_count).second) {
      throw Error(Errc::InvalidParameter,
                  "duplicate record for " + r.crop.str() + " / " + column_name(steps_of(r)));
    }
  }
  const auto pipelines = enumerate_pipelines();
  for (const auto& [crop, counts] : by_crop) {
    if (!counts.contains(Steps{})) {
      throw Error(Errc::IncompleteRecords, crop.str() + " has no original record");
    }
    for (const Pipeline& p : pipelines) {
      if (!counts.contains(p.steps())) {
        throw Error(Errc::IncompleteRecords, crop.str() + " has no record for " + pipeline_name(p));
      }
    }
  }
  return by_crop;
}

ReportNode build_node(const Steps& path, const CountsByPath& sums,
                      std::optional<std::uint64_t> parent_sum) {
  ReportNode node;
  node.path = path;
  if (!path.empty()) node.method = path.back();
  node.tp_sum = sums.at(path);
  if (parent_sum && *parent_sum > 0) {
    node.pct_change = 100.0 * (static_cast<double>(node.tp_sum) - static_cast<double>(*parent_sum)) /
                      static_cast<double>(*parent_sum);
  }
  for (MethodId m : kAllMethods) {
    if (std::find(path.begin(), path.end(), m) != path.end()) continue;
    Steps child = path;
    child.push_back(m);
    node.children.push_back(build_node(child, sums, node.tp_sum));
  }
  return node;
}

using ojson = nlohmann::ordered_json;

ojson node_to_json(const ReportNode& n, bool is_root) {
  ojson j;
  j["method"] = n.method ? std::string(method_name(*n.method)) : std::string("original");
  if (!is_root) j["pipeline"] = column_name(n.path);
  j["tp_sum"] = n.tp_sum;
  if (!is_root) {
    j["pct_change"] = n.pct_change ? ojson(format_pct(*n.pct_change)) : ojson(nullptr);
  }
  j["children"] = ojson::array();
  for (const ReportNode& c : n.children) j["children"].push_back(node_to_json(c, false));
  return j;
}

ReportNode node_from_json(const ojson& j) {
  ReportNode n;
  const std::string method = j.at("method").get<std::string>();
  if (method != "original") {
    const auto m = parse_method(method);
    if (!m) throw Error(Errc::ParseError, "unknown method '" + method + "' in report");
    n.method = *m;
    n.path = parse_pipeline(j.at("pipeline").get<std::string>()).steps();
  }
  n.tp_sum = j.at("tp_sum").get<std::uint64_t>();
  if (auto it = j.find("pct_change"); it != j.end() && !it->is_null()) {
    n.pct_change = std::stod(it->get<std::string>());
  }
  for (const ojson& c : j.at("children")) n.children.push_back(node_from_json(c));
  return n;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

void collect_effect(const ReportNode& n, std::array<std::optional<PctRange>, 3>& out) {
  if (n.method && n.pct_change) {
    auto& slot = out[static_cast<std::size_t>(*n.method)];
    const double v = *n.pct_change;
    if (!slot) {
      slot = PctRange{v, v};
    } else {
      slot->min = std::min(slot->min, v);
      slot->max = std::max(slot->max, v);
    }
  }
  for (const ReportNode& c : n.children) collect_effect(c, out);
}

}  // namespace

std::size_t ReportNode::node_count() const noexcept {
  std::size_t n = 1;
  for (const ReportNode& c : children) n += c.node_count();
  return n;
}

ReportNode build_report_tree(std::span<const EvalRecord> records) {
  const auto by_crop = group_complete(records);
  CountsByPath sums;
  for (const auto& [crop, counts] : by_crop) {
    for (const auto& [path, count] : counts) sums[path] += count;
  }
  return build_node(Steps{}, sums, std::nullopt);
}

std::string emit_table(std::span<const EvalRecord> records) {
  const auto by_crop = group_complete(records);
  const auto pipelines = enumerate_pipelines();
  std::ostringstream out;
  out << "crop,original";
  for (const Pipeline& p : pipelines) out << ',' << pipeline_name(p);
  out << '\n';
  for (const auto& [crop, counts] : by_crop) {
    out << crop.str() << ',' << counts.at(Steps{});
    for (const Pipeline& p : pipelines) out << ',' << counts.at(p.steps());
    out << '\n';
  }
  return out.str();
}

std::vector<EvalRecord> parse_table(std::string_view csv) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t nl = csv.find('\n', start);
    if (nl == std::string_view::npos) nl = csv.size();
    std::string_view line = csv.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = nl + 1;
  }
  if (lines.empty()) throw Error(Errc::ParseError, "table is empty");

  const auto header = split_csv_line(lines.front());
  if (header.empty() || header.front() != "crop") {
    throw Error(Errc::ParseError, "table header must start with 'crop'");
  }
  std::vector<std::optional<Pipeline>> columns;
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] == "original") {
      columns.emplace_back(std::nullopt);
    } else {
      columns.emplace_back(parse_pipeline(header[i]));
    }
  }

  std::vector<EvalRecord> records;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto cells = split_csv_line(lines[li]);
    if (cells.size() != header.size()) {
      throw Error(Errc::ParseError, "table row " + std::to_string(li) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(header.size()));
    }
    const CropId crop = CropId::parse(cells[0]);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      std::uint64_t value = 0;
      const auto cell = cells[i];
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw Error(Errc::ParseError, "bad count '" + std::string(cell) + "' in table row " +
                                          std::to_string(li));
      }
      records.push_back({crop, columns[i - 1], value});
    }
  }
  return records;
}

std::string emit_report_json(const ReportNode& tree) {
  return node_to_json(tree, true).dump(2) + "\n";
}

ReportNode parse_report_json(std::string_view json) {
  try {
    return node_from_json(ojson::parse(json));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed report: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(Errc::ParseError, std::string("malformed report value: ") + e.what());
  }
}

std::string format_pct(double pct) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", pct);
  std::string s = buf;
  if (s == "-0.00") return "0.00";
  if (pct > 0.0 && s != "0.00") s.insert(s.begin(), '+');
  return s;
}

std::array<std::optional<PctRange>, 3> summarize_method_effect(const ReportNode& tree) {
  std::array<std::optional<PctRange>, 3> out;
  collect_effect(tree, out);
  return out;
}

std::string format_method_effect(const std::array<std::optional<PctRange>, 3>& effect) {
  std::ostringstream out;
  for (MethodId m : kAllMethods) {
    const auto& r = effect[static_cast<std::size_t>(m)];
    out << method_name(m) << ": ";
    if (r) {
      out << format_pct(r->min) << "% .. " << format_pct(r->max) << "%";
    } else {
      out << "n/a";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace uwe
