#include "coseg/labeling_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "coseg/instance_io.hpp"

namespace coseg {

using nlohmann::json;

std::string serialize_labeling(const RunResult& res, const std::string& mode) {
  json doc;
  doc["version"] = 1;
  doc["mode"] = mode;
  doc["images"] = json::array();
  for (const auto& lab : res.labeling.images) {
    json jimg;
    if (lab.chosen_box) jimg["chosen_box"] = *lab.chosen_box;
    if (!lab.labels.empty()) jimg["labels"] = lab.labels;
    if (!lab.relaxed_y.empty()) jimg["relaxed_y"] = lab.relaxed_y;
    if (!lab.relaxed_z.empty()) jimg["relaxed_z"] = lab.relaxed_z;
    doc["images"].push_back(std::move(jimg));
  }
  if (res.metrics.objective) doc["objective"] = *res.metrics.objective;
  if (res.metrics.relaxed_objective) doc["relaxed_objective"] = *res.metrics.relaxed_objective;
  if (res.metrics.gap) doc["gap"] = *res.metrics.gap;
  return doc.dump(1);
}

RunResult parse_labeling(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed labeling file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || doc["version"] != 1)
    throw ParseError("missing or unsupported version (expected version: 1)");
  RunResult res;
  for (const auto& jimg : doc.at("images")) {
    Labeling::Image lab;
    if (jimg.contains("chosen_box")) lab.chosen_box = jimg["chosen_box"].get<int>();
    if (jimg.contains("labels")) lab.labels = jimg["labels"].get<std::vector<int>>();
    if (jimg.contains("relaxed_y")) lab.relaxed_y = jimg["relaxed_y"].get<std::vector<double>>();
    if (jimg.contains("relaxed_z")) lab.relaxed_z = jimg["relaxed_z"].get<std::vector<double>>();
    res.labeling.images.push_back(std::move(lab));
  }
  if (doc.contains("objective")) res.metrics.objective = doc["objective"].get<double>();
  if (doc.contains("relaxed_objective"))
    res.metrics.relaxed_objective = doc["relaxed_objective"].get<double>();
  if (doc.contains("gap")) res.metrics.gap = doc["gap"].get<double>();
  return res;
}

void save_labeling(const RunResult& res, const std::string& mode, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << serialize_labeling(res, mode) << "\n";
}

RunResult load_labeling(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_labeling(buf.str());
}

}  // namespace coseg
