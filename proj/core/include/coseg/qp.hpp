#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "coseg/instance.hpp"

namespace coseg {

// Generic convex QP: minimize u^T M u + c^T u
// subject to A u <= b, Aeq u = beq, lb <= u <= ub.
struct QpProblem {
  Eigen::MatrixXd M;
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::MatrixXd Aeq;
  Eigen::VectorXd beq;
  Eigen::VectorXd lb, ub;

  int num_vars() const { return static_cast<int>(c.size()); }
};

// Global column layout: all y (by image, then local id), then all z.
struct VarIndex {
  std::vector<int> y_offsets;
  std::vector<int> z_offsets;
  int n_total = 0;
  int m_total = 0;

  int y(int img, int sp) const { return y_offsets[img] + sp; }
  int z(int img, int box) const { return n_total + z_offsets[img] + box; }
  int num_vars() const { return n_total + m_total; }

  static VarIndex from(const InstanceSet& set);
};

struct JointQp {
  QpProblem qp;
  VarIndex index;
};

// Model matrices feeding the joint objective.
struct ModelMatrices {
  Eigen::MatrixXd D_s;   // n_total x n_total
  Eigen::MatrixXd L_s;   // n_total x n_total, block-diagonal per image
  Eigen::MatrixXd D_b;   // m_total x m_total
  Eigen::VectorXd s_s;   // superpixel saliency costs
  Eigen::VectorXd s_b;   // box saliency costs
};

ModelMatrices build_matrices(const InstanceSet& set, const Hyperparams& hp);

// |S_i| x n_i selector; rows follow the sorted member list.
Eigen::MatrixXd projection_matrix(const BoundingBox& box, int n_i);

JointQp assemble(const InstanceSet& set, const ModelMatrices& mat, const Hyperparams& hp);

double objective_value(const QpProblem& qp, const Eigen::VectorXd& u);

struct Labeling {
  struct Image {
    std::optional<int> chosen_box;
    std::vector<int> labels;          // 0/1 per superpixel; empty for box-only modes
    std::vector<double> relaxed_y;
    std::vector<double> relaxed_z;
  };
  std::vector<Image> images;
};

// argmax z per image (ties -> lowest id); y divided by per-image max, then
// thresholded at 0.5 (>= is foreground); orphan superpixels forced background.
Labeling round_solution(const Eigen::VectorXd& u, const InstanceSet& set, const VarIndex& index);

// One row per line: signed <coeff>*<var> terms, then <= / = and the rhs.
// Variables named y[img,sp] and z[img,box].
std::string dump_constraints(const JointQp& jqp);

}  // namespace coseg
