#pragma once

#include <Eigen/Dense>

namespace coseg {

struct DiffracMatrix {
  Eigen::MatrixXd D;   // n x n, symmetric PSD, D*1 = 0
  double beta = 1.0;
};

// Pi = I - (1/n) 1 1^T
Eigen::MatrixXd centering_projection(int n);

// D = Pi [I - X (X^T Pi X + beta I_d)^{-1} X^T] Pi
DiffracMatrix diffrac_matrix(const Eigen::MatrixXd& X, double beta);

// min over (a, b) of ||y - X a - b 1||^2 + beta ||a||^2, via the closed form.
// Equals y^T D y for D = diffrac_matrix(X, beta).
double ridge_loss_min(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double beta);

}  // namespace coseg
