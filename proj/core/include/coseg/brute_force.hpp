#pragma once

#include <cstdint>
#include <vector>

#include "coseg/qp.hpp"

namespace coseg {

// Integer assignment for one image: a chosen box plus a superpixel bitmask.
struct LocalAssign {
  int box = 0;
  std::uint32_t ymask = 0;
};

// Direct transcription of the coupling constraints with explicit per-box
// copies x_i = P_i y; one-hot z at `box`. Orphan superpixels must be 0.
bool integer_feasible_explicit(const ImageInstance& img, const LocalAssign& a, double gamma);

std::vector<LocalAssign> enumerate_feasible(const ImageInstance& img, double gamma);

struct BruteForceResult {
  bool feasible = false;
  double objective = 0;
  Eigen::VectorXd u;      // integer assignment as a global variable vector
  Labeling labeling;
};

// Exhaustive integer minimizer of the joint objective; ties broken by the
// lexicographically smallest [y; z] vector. Guarded: the product over images
// of m_i * 2^{n_i} must not exceed 1e7.
BruteForceResult brute_force(const InstanceSet& set, const ModelMatrices& mat,
                             const Hyperparams& hp);

}  // namespace coseg
