#pragma once

#include <optional>
#include <vector>

#include "coseg/qp.hpp"

namespace coseg {

double box_iou(const Rect& a, const Rect& b);

// fraction of pairs with IoU strictly greater than 0.5
double corloc(const std::vector<Rect>& preds, const std::vector<Rect>& gts);

struct PixelMetrics {
  double pixel_ap = 0;     // correctly labeled pixels / all pixels
  double jaccard_iou = 0;  // foreground intersection / union in pixels
};

// Micro-averaged over all pixels in the set; requires gt_foreground on
// every superpixel.
PixelMetrics pixel_metrics(const Labeling& pred, const InstanceSet& set);

struct MetricsReport {
  std::optional<double> pixel_ap;
  std::optional<double> jaccard_iou;
  std::optional<double> corloc;
  std::optional<double> mean_box_iou;
  std::optional<double> objective;          // at the rounded integer assignment
  std::optional<double> relaxed_objective;
  std::optional<double> gap;
};

}  // namespace coseg
