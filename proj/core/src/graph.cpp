#include "coseg/graph.hpp"

#include <cassert>
#include <cmath>

namespace coseg {

Eigen::MatrixXd similarity_matrix(const Eigen::MatrixX2d& positions,
                                  const Eigen::MatrixX3d& colors, double lambda_p,
                                  double lambda_c, double sparsity_cut) {
  const Eigen::Index n = positions.rows();
  assert(colors.rows() == n);
  Eigen::MatrixXd W(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    W(a, a) = 1.0;
    for (Eigen::Index b = a + 1; b < n; ++b) {
      double dp = (positions.row(a) - positions.row(b)).squaredNorm();
      double dc = (colors.row(a) - colors.row(b)).squaredNorm();
      double w = std::exp(-lambda_p * dp - lambda_c * dc);
      if (w < sparsity_cut) w = 0.0;
      W(a, b) = W(b, a) = w;
    }
  }
  return W;
}

LaplacianBlock normalized_laplacian(const Eigen::MatrixXd& W, int image) {
  const Eigen::Index n = W.rows();
  Eigen::VectorXd degree = W.rowwise().sum();
  assert((degree.array() > 0).all());
  Eigen::VectorXd dinv_sqrt = degree.array().rsqrt();
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
  L.noalias() -= dinv_sqrt.asDiagonal() * W * dinv_sqrt.asDiagonal();
  L = 0.5 * (L + L.transpose());
  return LaplacianBlock{image, std::move(L)};
}

Eigen::MatrixXd assemble_block_laplacian(const std::vector<LaplacianBlock>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.L.rows();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    L.block(off, off, b.L.rows(), b.L.cols()) = b.L;
    off += b.L.rows();
  }
  return L;
}

std::vector<LaplacianBlock> image_laplacians(const InstanceSet& set, const Hyperparams& hp) {
  std::vector<LaplacianBlock> blocks;
  for (size_t i = 0; i < set.images.size(); ++i) {
    const auto& img = set.images[i];
    const Eigen::Index n = static_cast<Eigen::Index>(img.superpixels.size());
    Eigen::MatrixX2d pos(n, 2);
    Eigen::MatrixX3d col(n, 3);
    for (Eigen::Index j = 0; j < n; ++j) {
      pos.row(j) = img.superpixels[j].position;
      col.row(j) = img.superpixels[j].color;
    }
    Eigen::MatrixXd W = similarity_matrix(pos, col, hp.lambda_p, hp.lambda_c);
    blocks.push_back(normalized_laplacian(W, static_cast<int>(i)));
  }
  return blocks;
}

}  // namespace coseg
