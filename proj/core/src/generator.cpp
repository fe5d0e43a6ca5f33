#include "coseg/generator.hpp"

#include <algorithm>
#include <json.hpp>
#include <random>
#include <set>
#include <stdexcept>

namespace coseg {

SynthConfig parse_synth_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed generator config: ") + e.what());
  }
  SynthConfig cfg;
  auto get = [&doc](const char* key, auto& field) {
    if (doc.contains(key)) field = doc[key].template get<std::decay_t<decltype(field)>>();
  };
  get("images", cfg.images);
  get("superpixels", cfg.superpixels);
  get("boxes", cfg.boxes);
  get("feature_dim", cfg.feature_dim);
  get("box_feature_dim", cfg.box_feature_dim);
  get("separation", cfg.separation);
  get("saliency_corr", cfg.saliency_corr);
  get("fg_saliency", cfg.fg_saliency);
  get("bg_saliency", cfg.bg_saliency);
  get("box_saliency_corr", cfg.box_saliency_corr);
  get("cluster_tightness", cfg.cluster_tightness);
  get("box_feature_noise", cfg.box_feature_noise);
  get("dilation", cfg.dilation);
  get("seed", cfg.seed);
  if (cfg.images < 1 || cfg.superpixels < 1 || cfg.boxes < 1 || cfg.feature_dim < 1 ||
      cfg.box_feature_dim < 1)
    throw std::invalid_argument("generator config: counts must be >= 1");
  if (cfg.separation < 0) throw std::invalid_argument("generator config: separation must be >= 0");
  return cfg;
}

namespace {

constexpr int kImageSize = 100;

Rect bounding_rect(const std::vector<Eigen::Vector2d>& pts, double pad) {
  double x0 = 1, y0 = 1, x1 = 0, y1 = 0;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x());
    y0 = std::min(y0, p.y());
    x1 = std::max(x1, p.x());
    y1 = std::max(y1, p.y());
  }
  double px0 = std::max(0.0, x0 * kImageSize - pad);
  double py0 = std::max(0.0, y0 * kImageSize - pad);
  double px1 = std::min<double>(kImageSize, x1 * kImageSize + pad);
  double py1 = std::min<double>(kImageSize, y1 * kImageSize + pad);
  return Rect{px0, py0, px1 - px0, py1 - py0};
}

}  // namespace

InstanceSet generate(const SynthConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int n = cfg.superpixels;
  const int n_fg = std::max(1, static_cast<int>(std::lround(0.35 * n)));
  const int d = cfg.feature_dim;

  // common foreground appearance across images
  Eigen::VectorXd fg_mean = Eigen::VectorXd::Zero(d);
  fg_mean[0] = cfg.separation;
  Eigen::Vector3d fg_color(0.8, 0.25, 0.2);

  InstanceSet set;
  for (int ii = 0; ii < cfg.images; ++ii) {
    ImageInstance img;
    img.width = kImageSize;
    img.height = kImageSize;

    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::set<int> fg(ids.begin(), ids.begin() + n_fg);

    Eigen::Vector2d center(0.3 + 0.4 * unit(rng), 0.3 + 0.4 * unit(rng));
    img.superpixels.resize(n);
    std::vector<Eigen::Vector2d> fg_pts;
    for (int j = 0; j < n; ++j) {
      Superpixel sp;
      sp.id = j;
      bool is_fg = fg.count(j) > 0;
      sp.features.resize(d);
      for (int k = 0; k < d; ++k) sp.features[k] = (is_fg ? fg_mean[k] : 0.0) + gauss(rng);
      if (is_fg) {
        sp.position = center + cfg.cluster_tightness * Eigen::Vector2d(gauss(rng), gauss(rng));
        sp.color = fg_color + 0.05 * Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
      } else {
        sp.position = Eigen::Vector2d(unit(rng), unit(rng));
        sp.color = Eigen::Vector3d(unit(rng), unit(rng), unit(rng));
      }
      sp.position = sp.position.cwiseMax(0.0).cwiseMin(1.0);
      sp.color = sp.color.cwiseMax(0.0).cwiseMin(1.0);
      double target = is_fg ? cfg.fg_saliency : cfg.bg_saliency;
      sp.saliency_m =
          std::clamp(cfg.saliency_corr * target + (1 - cfg.saliency_corr) * unit(rng), 0.0, 1.0);
      sp.pixel_count = 80 + static_cast<long>(unit(rng) * 41.0);
      sp.gt_foreground = is_fg;
      img.superpixels[j] = std::move(sp);
      if (is_fg) fg_pts.push_back(img.superpixels[j].position);
    }
    img.gt_box = bounding_rect(fg_pts, 3.0);

    // member sets: one true box (planted set + dilation), rest distractors
    std::vector<std::vector<int>> member_sets;
    {
      std::vector<int> members(fg.begin(), fg.end());
      std::vector<int> bg;
      for (int j = 0; j < n; ++j)
        if (!fg.count(j)) bg.push_back(j);
      std::shuffle(bg.begin(), bg.end(), rng);
      for (int k = 0; k < cfg.dilation && k < static_cast<int>(bg.size()); ++k)
        members.push_back(bg[k]);
      std::sort(members.begin(), members.end());
      member_sets.push_back(std::move(members));
    }
    for (int b = 1; b < cfg.boxes; ++b) {
      std::vector<int> pool(n);
      std::iota(pool.begin(), pool.end(), 0);
      std::shuffle(pool.begin(), pool.end(), rng);
      int size = 2 + static_cast<int>(unit(rng) * std::max(1, n / 2 - 1));
      size = std::min(size, n);
      std::vector<int> members(pool.begin(), pool.begin() + size);
      // keep distractors distinct from the planted set
      if (std::set<int>(members.begin(), members.end()) == fg) members.push_back(pool[size % n]);
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      member_sets.push_back(std::move(members));
    }
    std::shuffle(member_sets.begin(), member_sets.end(), rng);

    for (int b = 0; b < cfg.boxes; ++b) {
      BoundingBox box;
      box.id = b;
      box.members = member_sets[b];
      std::vector<Eigen::Vector2d> pts;
      Eigen::VectorXd feat_mean = Eigen::VectorXd::Zero(d);
      double sal = 0, weight = 0;
      for (int j : box.members) {
        const auto& sp = img.superpixels[j];
        pts.push_back(sp.position);
        feat_mean += sp.features;
        sal += static_cast<double>(sp.pixel_count) * sp.saliency_m;
        weight += static_cast<double>(sp.pixel_count);
      }
      feat_mean /= static_cast<double>(box.members.size());
      box.rect = bounding_rect(pts, 3.0);
      double bcorr = cfg.box_saliency_corr < 0 ? cfg.saliency_corr : cfg.box_saliency_corr;
      box.saliency_m = std::clamp(bcorr * (sal / weight) + (1 - bcorr) * unit(rng), 0.0, 1.0);
      box.features.resize(cfg.box_feature_dim);
      for (int k = 0; k < cfg.box_feature_dim; ++k)
        box.features[k] = (k < d ? feat_mean[k] : 0.0) + cfg.box_feature_noise * gauss(rng);
      img.boxes.push_back(std::move(box));
    }
    set.images.push_back(std::move(img));
  }
  return set;
}

}  // namespace coseg
