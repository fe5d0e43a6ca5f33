#pragma once

#include <Eigen/Dense>
#include <vector>

#include "coseg/instance.hpp"

namespace coseg {

struct LaplacianBlock {
  int image = 0;
  Eigen::MatrixXd L;  // n_i x n_i, symmetric PSD, L Q^{1/2} 1 = 0
};

// W_ab = exp(-lambda_p ||p_a - p_b||^2 - lambda_c ||c_a - c_b||^2).
// Entries below sparsity_cut are zeroed (0 disables the cut).
Eigen::MatrixXd similarity_matrix(const Eigen::MatrixX2d& positions,
                                  const Eigen::MatrixX3d& colors, double lambda_p,
                                  double lambda_c, double sparsity_cut = 0.0);

// L = I - Q^{-1/2} W Q^{-1/2} with Q the diagonal degree matrix.
LaplacianBlock normalized_laplacian(const Eigen::MatrixXd& W, int image = 0);

// Block-diagonal merge, blocks ordered by image index.
Eigen::MatrixXd assemble_block_laplacian(const std::vector<LaplacianBlock>& blocks);

// Per-image Laplacians for a full instance set.
std::vector<LaplacianBlock> image_laplacians(const InstanceSet& set, const Hyperparams& hp);

}  // namespace coseg
