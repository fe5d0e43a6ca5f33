#include "coseg/qp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "coseg/diffrac.hpp"
#include "coseg/graph.hpp"

namespace coseg {

VarIndex VarIndex::from(const InstanceSet& set) {
  VarIndex idx;
  int n = 0, m = 0;
  for (const auto& img : set.images) {
    idx.y_offsets.push_back(n);
    idx.z_offsets.push_back(m);
    n += static_cast<int>(img.superpixels.size());
    m += static_cast<int>(img.boxes.size());
  }
  idx.n_total = n;
  idx.m_total = m;
  return idx;
}

ModelMatrices build_matrices(const InstanceSet& set, const Hyperparams& hp) {
  const int n = set.n_total();
  const int m = set.m_total();
  ModelMatrices mat;

  // design matrices span all superpixels / boxes across all images
  const auto& sp0 = set.images[0].superpixels[0];
  const auto& bx0 = set.images[0].boxes[0];
  Eigen::MatrixXd Xs(n, sp0.features.size());
  Eigen::MatrixXd Xb(m, bx0.features.size());
  mat.s_s.resize(n);
  mat.s_b.resize(m);
  int r = 0, q = 0;
  for (const auto& img : set.images) {
    for (const auto& sp : img.superpixels) {
      Xs.row(r) = sp.features;
      mat.s_s[r] = saliency_to_cost(sp.saliency_m, hp.saliency_eps);
      ++r;
    }
    for (const auto& box : img.boxes) {
      Xb.row(q) = box.features;
      mat.s_b[q] = saliency_to_cost(box.saliency_m, hp.saliency_eps);
      ++q;
    }
  }

  mat.D_s = diffrac_matrix(Xs, hp.beta_s).D;
  mat.D_b = m >= 2 ? diffrac_matrix(Xb, hp.beta_b).D
                   : Eigen::MatrixXd::Zero(m, m);
  mat.L_s = assemble_block_laplacian(image_laplacians(set, hp));
  return mat;
}

Eigen::MatrixXd projection_matrix(const BoundingBox& box, int n_i) {
  std::vector<int> members = box.members;
  std::sort(members.begin(), members.end());
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(members.size(), n_i);
  for (size_t r = 0; r < members.size(); ++r) P(static_cast<Eigen::Index>(r), members[r]) = 1.0;
  return P;
}

JointQp assemble(const InstanceSet& set, const ModelMatrices& mat, const Hyperparams& hp) {
  if (hp.gamma < 0 || hp.gamma >= 0.5)
    throw std::invalid_argument("assemble: gamma must be in [0, 0.5)");

  VarIndex idx = VarIndex::from(set);
  const int n = idx.n_total;
  const int m = idx.m_total;
  const int nv = n + m;
  if (mat.D_s.rows() != n || mat.L_s.rows() != n || mat.D_b.rows() != m ||
      mat.s_s.size() != n || mat.s_b.size() != m)
    throw std::invalid_argument("assemble: matrix dimensions do not match instance");

  JointQp jqp;
  jqp.index = idx;
  QpProblem& qp = jqp.qp;

  qp.M = Eigen::MatrixXd::Zero(nv, nv);
  qp.M.topLeftCorner(n, n) = mat.D_s + hp.alpha * mat.L_s;
  qp.M.bottomRightCorner(m, m) = mat.D_b;
  qp.c.resize(nv);
  qp.c.head(n) = hp.nu * mat.s_s;
  qp.c.tail(m) = hp.mu * mat.s_b;
  qp.lb = Eigen::VectorXd::Zero(nv);
  qp.ub = Eigen::VectorXd::Ones(nv);

  // count rows: two per box (coupling bounds), one per covered superpixel
  int n_rows = 2 * m;
  std::vector<std::vector<int>> cover;  // per image: box count per superpixel
  for (size_t i = 0; i < set.images.size(); ++i) {
    const auto& img = set.images[i];
    std::vector<int> cj(img.superpixels.size(), 0);
    for (const auto& box : img.boxes)
      for (int j : box.members) ++cj[j];
    for (int c : cj)
      if (c > 0) ++n_rows;
    cover.push_back(std::move(cj));
  }

  qp.A = Eigen::MatrixXd::Zero(n_rows, nv);
  qp.b = Eigen::VectorXd::Zero(n_rows);
  qp.Aeq = Eigen::MatrixXd::Zero(set.images.size(), nv);
  qp.beq = Eigen::VectorXd::Ones(set.images.size());

  int row = 0;
  for (size_t i = 0; i < set.images.size(); ++i) {
    const auto& img = set.images[i];
    const int ii = static_cast<int>(i);
    for (const auto& box : img.boxes) {
      const double s = static_cast<double>(box.members.size());
      // gamma |S| z - sum y <= 0
      for (int j : box.members) qp.A(row, idx.y(ii, j)) = -1.0;
      qp.A(row, idx.z(ii, box.id)) = hp.gamma * s;
      ++row;
      // sum y - (1-gamma) |S| z <= 0
      for (int j : box.members) qp.A(row, idx.y(ii, j)) = 1.0;
      qp.A(row, idx.z(ii, box.id)) = -(1.0 - hp.gamma) * s;
      ++row;
    }
    for (size_t j = 0; j < img.superpixels.size(); ++j) {
      const int cj = cover[i][j];
      if (cj == 0) {
        // orphan: can only be background
        qp.ub[idx.y(ii, static_cast<int>(j))] = 0.0;
        continue;
      }
      // c_j y_j - sum_{i: j in S_i} z_i <= 0
      qp.A(row, idx.y(ii, static_cast<int>(j))) = static_cast<double>(cj);
      for (const auto& box : img.boxes)
        if (std::binary_search(box.members.begin(), box.members.end(), static_cast<int>(j)))
          qp.A(row, idx.z(ii, box.id)) = -1.0;
      ++row;
    }
    for (const auto& box : img.boxes) qp.Aeq(ii, idx.z(ii, box.id)) = 1.0;
  }

  return jqp;
}

double objective_value(const QpProblem& qp, const Eigen::VectorXd& u) {
  if (u.size() != qp.c.size()) throw std::invalid_argument("objective_value: dimension mismatch");
  return u.dot(qp.M * u) + qp.c.dot(u);
}

Labeling round_solution(const Eigen::VectorXd& u, const InstanceSet& set, const VarIndex& idx) {
  Labeling lab;
  for (size_t i = 0; i < set.images.size(); ++i) {
    const auto& img = set.images[i];
    const int ii = static_cast<int>(i);
    Labeling::Image out;
    out.relaxed_y.resize(img.superpixels.size());
    out.relaxed_z.resize(img.boxes.size());
    for (size_t j = 0; j < img.superpixels.size(); ++j)
      out.relaxed_y[j] = u[idx.y(ii, static_cast<int>(j))];
    for (size_t bzi = 0; bzi < img.boxes.size(); ++bzi)
      out.relaxed_z[bzi] = u[idx.z(ii, static_cast<int>(bzi))];

    int best = 0;
    for (size_t bzi = 1; bzi < out.relaxed_z.size(); ++bzi)
      if (out.relaxed_z[bzi] > out.relaxed_z[best]) best = static_cast<int>(bzi);
    out.chosen_box = best;

    std::vector<bool> covered(img.superpixels.size(), false);
    for (const auto& box : img.boxes)
      for (int j : box.members) covered[j] = true;

    double ymax = 0;
    for (double v : out.relaxed_y) ymax = std::max(ymax, v);
    out.labels.resize(img.superpixels.size(), 0);
    if (ymax > 0) {
      for (size_t j = 0; j < out.labels.size(); ++j)
        out.labels[j] = (covered[j] && out.relaxed_y[j] / ymax >= 0.5) ? 1 : 0;
    }
    lab.images.push_back(std::move(out));
  }
  return lab;
}

namespace {

std::string fmt_coeff(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string var_name(int col, const VarIndex& idx) {
  if (col < idx.n_total) {
    int img = 0;
    while (img + 1 < static_cast<int>(idx.y_offsets.size()) && idx.y_offsets[img + 1] <= col) ++img;
    return "y[" + std::to_string(img) + "," + std::to_string(col - idx.y_offsets[img]) + "]";
  }
  int zc = col - idx.n_total;
  int img = 0;
  while (img + 1 < static_cast<int>(idx.z_offsets.size()) && idx.z_offsets[img + 1] <= zc) ++img;
  return "z[" + std::to_string(img) + "," + std::to_string(zc - idx.z_offsets[img]) + "]";
}

void dump_row(std::ostringstream& os, const Eigen::RowVectorXd& row, const char* rel, double rhs,
              const VarIndex& idx) {
  bool first = true;
  for (Eigen::Index col = 0; col < row.size(); ++col) {
    if (row[col] == 0) continue;
    if (!first) os << " + ";
    os << fmt_coeff(row[col]) << "*" << var_name(static_cast<int>(col), idx);
    first = false;
  }
  if (first) os << "0";
  os << " " << rel << " " << fmt_coeff(rhs) << "\n";
}

}  // namespace

std::string dump_constraints(const JointQp& jqp) {
  std::ostringstream os;
  for (Eigen::Index r = 0; r < jqp.qp.A.rows(); ++r)
    dump_row(os, jqp.qp.A.row(r), "<=", jqp.qp.b[r], jqp.index);
  for (Eigen::Index r = 0; r < jqp.qp.Aeq.rows(); ++r)
    dump_row(os, jqp.qp.Aeq.row(r), "=", jqp.qp.beq[r], jqp.index);
  for (Eigen::Index v = 0; v < jqp.qp.ub.size(); ++v)
    if (jqp.qp.ub[v] == 0)
      os << "1*" << var_name(static_cast<int>(v), jqp.index) << " = 0\n";
  return os.str();
}

}  // namespace coseg
