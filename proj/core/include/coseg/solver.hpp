#pragma once

#include <cstdint>

#include "coseg/qp.hpp"

namespace coseg {

struct SolverConfig {
  double tol_primal = 1e-6;
  double tol_dual = 1e-6;
  int max_iters = 50000;
  std::uint64_t seed = 0;
  double psd_jitter = 1e-9;
};

enum class SolveStatus { kConverged, kIterationLimit, kInfeasible };

struct Solution {
  Eigen::VectorXd u;
  double objective = 0;          // u^T M u + c^T u at u
  double primal_residual = 0;
  double dual_residual = 0;
  int iterations = 0;
  SolveStatus status = SolveStatus::kIterationLimit;
};

// Operator-splitting (ADMM) solve of the relaxed convex QP, followed by an
// active-set polish. Deterministic for identical inputs.
Solution solve(const QpProblem& qp, const SolverConfig& cfg = {});

// exact - relaxed; must be >= -tol for a valid relaxation.
double relaxation_gap(double relaxed, double exact);

}  // namespace coseg
