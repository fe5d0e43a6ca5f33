#include "coseg/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace coseg {

int InstanceSet::n_total() const {
  int n = 0;
  for (const auto& img : images) n += static_cast<int>(img.superpixels.size());
  return n;
}

int InstanceSet::m_total() const {
  int m = 0;
  for (const auto& img : images) m += static_cast<int>(img.boxes.size());
  return m;
}

double saliency_to_cost(double m, double eps) {
  return -std::log(std::clamp(m, eps, 1.0));
}

std::string ValidationReport::joined() const {
  std::ostringstream os;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

namespace {

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

ValidationReport validate(const InstanceSet& set) {
  ValidationReport rep;
  auto add = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

  if (set.images.empty()) {
    add("no images");
    return rep;
  }

  long sp_dim = -1, box_dim = -1;
  for (size_t ii = 0; ii < set.images.size(); ++ii) {
    const auto& img = set.images[ii];
    std::string where = "image " + std::to_string(ii);
    if (img.superpixels.empty()) add(where + ": no superpixels");
    if (img.boxes.empty()) add(where + ": no boxes");
    if (img.width <= 0 || img.height <= 0) add(where + ": non-positive dimensions");

    for (size_t j = 0; j < img.superpixels.size(); ++j) {
      const auto& sp = img.superpixels[j];
      std::string sw = where + ", superpixel " + std::to_string(j);
      if (sp.id != static_cast<int>(j)) add(sw + ": ids must be 0-based and contiguous");
      if (sp_dim < 0) sp_dim = sp.features.size();
      if (sp.features.size() != sp_dim)
        add(sw + ": feature dimension " + std::to_string(sp.features.size()) +
            " != " + std::to_string(sp_dim));
      if (!finite(sp.features)) add(sw + ": non-finite features");
      if (sp.color.size() != 3) add(sw + ": color must be 3-dim");
      if (sp.saliency_m < 0 || sp.saliency_m > 1) add(sw + ": saliency outside [0,1]");
      if (sp.pixel_count < 1) add(sw + ": pixel_count must be >= 1");
    }

    const int n_i = static_cast<int>(img.superpixels.size());
    for (size_t b = 0; b < img.boxes.size(); ++b) {
      const auto& box = img.boxes[b];
      std::string bw = where + ", box " + std::to_string(b);
      if (box.id != static_cast<int>(b)) add(bw + ": ids must be 0-based and contiguous");
      if (box.members.empty()) add(bw + ": empty member set");
      std::set<int> seen;
      for (int m : box.members) {
        if (m < 0 || m >= n_i)
          add(bw + ": member superpixel id " + std::to_string(m) + " out of range [0," +
              std::to_string(n_i - 1) + "]");
        if (!seen.insert(m).second) add(bw + ": duplicate member id " + std::to_string(m));
      }
      if (box_dim < 0) box_dim = box.features.size();
      if (box.features.size() != box_dim)
        add(bw + ": feature dimension " + std::to_string(box.features.size()) +
            " != " + std::to_string(box_dim));
      if (!finite(box.features)) add(bw + ": non-finite features");
      if (box.saliency_m < 0 || box.saliency_m > 1) add(bw + ": saliency outside [0,1]");
      if (box.rect.w < 0 || box.rect.h < 0) add(bw + ": negative rect size");
    }
  }

  if (set.n_total() < 2) add("need at least 2 superpixels overall for centering");
  if (set.m_total() < 1) add("need at least 1 box overall");
  return rep;
}

ValidationReport validate(const Hyperparams& hp) {
  ValidationReport rep;
  auto add = [&rep](const std::string& msg) { rep.violations.push_back(msg); };
  if (hp.gamma < 0 || hp.gamma > 1) add("gamma outside [0,1]");
  if (hp.beta_s <= 0) add("beta_s must be > 0");
  if (hp.beta_b <= 0) add("beta_b must be > 0");
  if (hp.alpha < 0) add("alpha must be >= 0");
  if (hp.lambda_p < 0 || hp.lambda_c < 0) add("lambda_p/lambda_c must be >= 0");
  if (hp.saliency_eps <= 0 || hp.saliency_eps >= 1) add("saliency_eps must be in (0,1)");
  if (hp.baseline_fraction <= 0 || hp.baseline_fraction > 1)
    add("baseline_fraction must be in (0,1]");
  if (!(hp.fg_min < hp.fg_max)) add("fg_min must be < fg_max");
  return rep;
}

}  // namespace coseg
