#include "coseg/instance_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace coseg {

using nlohmann::json;

namespace {

Eigen::VectorXd to_vector(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected array of numbers");
  Eigen::VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw ParseError(where + ": expected array of numbers");
    v[i] = arr[i].get<double>();
  }
  return v;
}

json from_vector(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Rect to_rect(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.size() != 4)
    throw ParseError(where + ": rect must be [x, y, w, h]");
  return Rect{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>(),
              arr[3].get<double>()};
}

json from_rect(const Rect& r) { return json::array({r.x, r.y, r.w, r.h}); }

}  // namespace

InstanceSet parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || doc["version"] != 1)
    throw ParseError("missing or unsupported version (expected version: 1)");
  if (!doc.contains("images") || !doc["images"].is_array())
    throw ParseError("missing images array");

  InstanceSet set;
  for (size_t ii = 0; ii < doc["images"].size(); ++ii) {
    const json& jimg = doc["images"][ii];
    std::string where = "image " + std::to_string(ii);
    ImageInstance img;
    try {
      img.width = jimg.at("width").get<int>();
      img.height = jimg.at("height").get<int>();
      for (size_t j = 0; j < jimg.at("superpixels").size(); ++j) {
        const json& jsp = jimg["superpixels"][j];
        std::string sw = where + ", superpixel " + std::to_string(j);
        Superpixel sp;
        sp.id = jsp.at("id").get<int>();
        sp.features = to_vector(jsp.at("features"), sw);
        Eigen::VectorXd pos = to_vector(jsp.at("position"), sw);
        if (pos.size() != 2) throw ParseError(sw + ": position must be 2-dim");
        sp.position = pos;
        Eigen::VectorXd col = to_vector(jsp.at("color"), sw);
        if (col.size() != 3) throw ParseError(sw + ": color must be 3-dim");
        sp.color = col;
        sp.saliency_m = jsp.at("saliency").get<double>();
        sp.pixel_count = jsp.at("pixel_count").get<long>();
        if (jsp.contains("gt_foreground")) sp.gt_foreground = jsp["gt_foreground"].get<bool>();
        img.superpixels.push_back(std::move(sp));
      }
      for (size_t b = 0; b < jimg.at("boxes").size(); ++b) {
        const json& jb = jimg["boxes"][b];
        std::string bw = where + ", box " + std::to_string(b);
        BoundingBox box;
        box.id = jb.at("id").get<int>();
        box.members = jb.at("members").get<std::vector<int>>();
        std::sort(box.members.begin(), box.members.end());
        box.rect = to_rect(jb.at("rect"), bw);
        box.features = to_vector(jb.at("features"), bw);
        box.saliency_m = jb.at("saliency").get<double>();
        img.boxes.push_back(std::move(box));
      }
      if (jimg.contains("gt_box")) img.gt_box = to_rect(jimg["gt_box"], where);
    } catch (const json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    set.images.push_back(std::move(img));
  }

  ValidationReport rep = validate(set);
  if (!rep.ok()) throw ParseError(rep.joined());
  return set;
}

std::string serialize_instance(const InstanceSet& set) {
  json doc;
  doc["version"] = 1;
  doc["images"] = json::array();
  for (const auto& img : set.images) {
    json jimg;
    jimg["width"] = img.width;
    jimg["height"] = img.height;
    jimg["superpixels"] = json::array();
    for (const auto& sp : img.superpixels) {
      json jsp;
      jsp["id"] = sp.id;
      jsp["features"] = from_vector(sp.features);
      jsp["position"] = json::array({sp.position.x(), sp.position.y()});
      jsp["color"] = json::array({sp.color[0], sp.color[1], sp.color[2]});
      jsp["saliency"] = sp.saliency_m;
      jsp["pixel_count"] = sp.pixel_count;
      if (sp.gt_foreground) jsp["gt_foreground"] = *sp.gt_foreground;
      jimg["superpixels"].push_back(std::move(jsp));
    }
    jimg["boxes"] = json::array();
    for (const auto& box : img.boxes) {
      json jb;
      jb["id"] = box.id;
      jb["members"] = box.members;
      jb["rect"] = from_rect(box.rect);
      jb["features"] = from_vector(box.features);
      jb["saliency"] = box.saliency_m;
      jimg["boxes"].push_back(std::move(jb));
    }
    if (img.gt_box) jimg["gt_box"] = from_rect(*img.gt_box);
    doc["images"].push_back(std::move(jimg));
  }
  return doc.dump(1);
}

InstanceSet load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const InstanceSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << serialize_instance(set) << "\n";
}

}  // namespace coseg
