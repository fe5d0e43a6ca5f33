#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace coseg {

// Axis-aligned rectangle in pixel units.
struct Rect {
  double x = 0, y = 0, w = 0, h = 0;
  bool operator==(const Rect&) const = default;
};

struct Superpixel {
  int id = 0;
  Eigen::VectorXd features;
  Eigen::Vector2d position;   // normalized to [0,1] image coordinates
  Eigen::Vector3d color;      // [0,1]
  double saliency_m = 0;      // mean saliency map value over the superpixel
  long pixel_count = 1;
  std::optional<bool> gt_foreground;
};

struct BoundingBox {
  int id = 0;
  std::vector<int> members;   // superpixel ids, kept sorted
  Rect rect;
  Eigen::VectorXd features;
  double saliency_m = 0;
};

struct ImageInstance {
  int width = 0, height = 0;
  std::vector<Superpixel> superpixels;
  std::vector<BoundingBox> boxes;
  std::optional<Rect> gt_box;
};

struct InstanceSet {
  std::vector<ImageInstance> images;

  int n_total() const;
  int m_total() const;
};

struct Hyperparams {
  double alpha = 0.1;
  double nu = 0.005;
  double mu = 0.001;
  double gamma = 0.1;
  double beta_s = 1.0;
  double beta_b = 1.0;
  double lambda_p = 0.001;
  double lambda_c = 0.05;
  double saliency_eps = 1e-6;
  double baseline_fraction = 0.4;
  double fg_min = 0.1;        // per-image foreground pixel fraction bounds
  double fg_max = 0.9;
};

// s = -log(clamp(m, eps, 1)); always finite and >= 0.
double saliency_to_cost(double m, double eps);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string joined() const;
};

ValidationReport validate(const InstanceSet& set);
ValidationReport validate(const Hyperparams& hp);

}  // namespace coseg
