#include "coseg/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace coseg {

double box_iou(const Rect& a, const Rect& b) {
  if (a.w < 0 || a.h < 0 || b.w < 0 || b.h < 0)
    throw std::invalid_argument("box_iou: negative extent");
  double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
  double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
  double inter = ix * iy;
  double uni = a.w * a.h + b.w * b.h - inter;
  return uni > 0 ? inter / uni : 0.0;
}

double corloc(const std::vector<Rect>& preds, const std::vector<Rect>& gts) {
  if (preds.size() != gts.size()) throw std::invalid_argument("corloc: length mismatch");
  if (preds.empty()) return 0.0;
  int hit = 0;
  for (size_t i = 0; i < preds.size(); ++i)
    if (box_iou(preds[i], gts[i]) > 0.5) ++hit;
  return static_cast<double>(hit) / static_cast<double>(preds.size());
}

PixelMetrics pixel_metrics(const Labeling& pred, const InstanceSet& set) {
  long correct = 0, total = 0, inter = 0, uni = 0;
  for (size_t i = 0; i < set.images.size(); ++i) {
    const auto& img = set.images[i];
    const auto& lab = pred.images.at(i);
    for (size_t j = 0; j < img.superpixels.size(); ++j) {
      const auto& sp = img.superpixels[j];
      if (!sp.gt_foreground) throw std::invalid_argument("pixel_metrics: missing ground truth");
      bool gt = *sp.gt_foreground;
      bool pr = lab.labels.at(j) != 0;
      total += sp.pixel_count;
      if (gt == pr) correct += sp.pixel_count;
      if (gt && pr) inter += sp.pixel_count;
      if (gt || pr) uni += sp.pixel_count;
    }
  }
  PixelMetrics pm;
  pm.pixel_ap = total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
  pm.jaccard_iou = uni ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
  return pm;
}

}  // namespace coseg
