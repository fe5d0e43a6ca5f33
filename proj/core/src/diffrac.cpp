#include "coseg/diffrac.hpp"

#include <stdexcept>

namespace coseg {

Eigen::MatrixXd centering_projection(int n) {
  if (n < 1) throw std::invalid_argument("centering_projection: n must be >= 1");
  Eigen::MatrixXd pi = Eigen::MatrixXd::Identity(n, n);
  pi.array() -= 1.0 / n;
  return pi;
}

DiffracMatrix diffrac_matrix(const Eigen::MatrixXd& X, double beta) {
  if (beta <= 0) throw std::invalid_argument("diffrac_matrix: beta must be > 0");
  if (!X.allFinite()) throw std::invalid_argument("diffrac_matrix: non-finite entries");
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (n < 2) throw std::invalid_argument("diffrac_matrix: need n >= 2");

  Eigen::MatrixXd Xc = X.rowwise() - X.colwise().mean();  // Pi X
  Eigen::MatrixXd G = Xc.transpose() * Xc;                // X^T Pi X
  G.diagonal().array() += beta;
  // (X^T Pi X + beta I) is SPD for beta > 0
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("diffrac_matrix: factorization failed");
  Eigen::MatrixXd sol = llt.solve(Xc.transpose());  // (d x n)

  Eigen::MatrixXd D = centering_projection(static_cast<int>(n));
  D.noalias() -= Xc * sol;  // Pi X (..)^{-1} X^T Pi
  // symmetrize against roundoff
  D = 0.5 * (D + D.transpose());
  (void)d;
  return DiffracMatrix{std::move(D), beta};
}

double ridge_loss_min(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double beta) {
  if (X.rows() != y.size()) throw std::invalid_argument("ridge_loss_min: dimension mismatch");
  Eigen::MatrixXd Xc = X.rowwise() - X.colwise().mean();
  Eigen::MatrixXd G = Xc.transpose() * Xc;
  G.diagonal().array() += beta;
  Eigen::VectorXd yc = y.array() - y.mean();
  Eigen::VectorXd a = Eigen::LLT<Eigen::MatrixXd>(G).solve(Xc.transpose() * yc);
  double b = (y - X * a).mean();
  double loss = (y - X * a - Eigen::VectorXd::Constant(y.size(), b)).squaredNorm();
  return loss + beta * a.squaredNorm();
}

}  // namespace coseg
