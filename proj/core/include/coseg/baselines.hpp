#pragma once

#include <string>

#include "coseg/metrics.hpp"
#include "coseg/solver.hpp"

namespace coseg {

enum class BaselineMode { kJoint, kB1, kB2, kB3, kSal, kSalDisc };

const char* mode_name(BaselineMode mode);
BaselineMode mode_from_name(const std::string& name);

struct RunResult {
  Labeling labeling;
  MetricsReport metrics;
  SolveStatus status = SolveStatus::kConverged;
};

// joint: full coupled QP; b1: superpixel discriminative QP with per-image
// foreground-fraction bounds; b2: greedy most-salient superpixels up to the
// pixel fraction; b3: b1 plus the saliency term; sal: most salient box per
// image; sal_disc: box discriminative + saliency QP with one box per image.
RunResult run(BaselineMode mode, const InstanceSet& set, const Hyperparams& hp,
              const SolverConfig& cfg = {});

}  // namespace coseg
