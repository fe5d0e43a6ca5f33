#pragma once

#include <cstdint>
#include <string>

#include "coseg/instance.hpp"

namespace coseg {

struct SynthConfig {
  int images = 3;
  int superpixels = 8;       // per image
  int boxes = 3;             // per image
  int feature_dim = 4;       // superpixel feature dimension
  int box_feature_dim = 4;
  double separation = 5.0;   // foreground/background feature centroid distance (in noise sigmas)
  double saliency_corr = 0.9;
  double fg_saliency = 0.9;         // saliency-map target for planted superpixels
  double bg_saliency = 0.1;
  double box_saliency_corr = -1.0;  // negative -> same as saliency_corr
  double cluster_tightness = 0.08;  // spatial std of the planted foreground
  double box_feature_noise = 1.0;
  int dilation = 0;          // extra background superpixels added to the true box
  std::uint64_t seed = 0;
};

SynthConfig parse_synth_config(const std::string& text);

// Planted instance: a spatially clustered, salient, feature-separated
// foreground per image, one box covering exactly the planted set (plus
// dilation) and random distractor boxes. Output always passes validate().
InstanceSet generate(const SynthConfig& cfg);

}  // namespace coseg
