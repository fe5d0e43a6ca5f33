#include "coseg/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "coseg/brute_force.hpp"

namespace coseg {

const char* mode_name(BaselineMode mode) {
  switch (mode) {
    case BaselineMode::kJoint: return "joint";
    case BaselineMode::kB1: return "b1";
    case BaselineMode::kB2: return "b2";
    case BaselineMode::kB3: return "b3";
    case BaselineMode::kSal: return "sal";
    case BaselineMode::kSalDisc: return "sal-disc";
  }
  return "?";
}

BaselineMode mode_from_name(const std::string& name) {
  if (name == "joint") return BaselineMode::kJoint;
  if (name == "b1") return BaselineMode::kB1;
  if (name == "b2") return BaselineMode::kB2;
  if (name == "b3") return BaselineMode::kB3;
  if (name == "sal") return BaselineMode::kSal;
  if (name == "sal-disc" || name == "sal_disc") return BaselineMode::kSalDisc;
  throw std::invalid_argument("unknown mode: " + name);
}

namespace {

void attach_box_metrics(RunResult& res, const InstanceSet& set) {
  std::vector<Rect> preds, gts;
  for (size_t i = 0; i < set.images.size(); ++i) {
    const auto& lab = res.labeling.images[i];
    if (!lab.chosen_box || !set.images[i].gt_box) continue;
    preds.push_back(set.images[i].boxes[*lab.chosen_box].rect);
    gts.push_back(*set.images[i].gt_box);
  }
  if (preds.empty()) return;
  res.metrics.corloc = corloc(preds, gts);
  double s = 0;
  for (size_t i = 0; i < preds.size(); ++i) s += box_iou(preds[i], gts[i]);
  res.metrics.mean_box_iou = s / static_cast<double>(preds.size());
}

void attach_pixel_metrics(RunResult& res, const InstanceSet& set) {
  for (const auto& img : set.images)
    for (const auto& sp : img.superpixels)
      if (!sp.gt_foreground) return;
  if (res.labeling.images.empty() || res.labeling.images[0].labels.empty()) return;
  PixelMetrics pm = pixel_metrics(res.labeling, set);
  res.metrics.pixel_ap = pm.pixel_ap;
  res.metrics.jaccard_iou = pm.jaccard_iou;
}

// normalize by per-image max, threshold at 0.5 (no box coverage rule)
std::vector<int> round_y(const std::vector<double>& y) {
  double ymax = 0;
  for (double v : y) ymax = std::max(ymax, v);
  std::vector<int> labels(y.size(), 0);
  if (ymax > 0)
    for (size_t j = 0; j < y.size(); ++j) labels[j] = (y[j] / ymax >= 0.5) ? 1 : 0;
  return labels;
}

RunResult run_joint(const InstanceSet& set, const Hyperparams& hp, const SolverConfig& cfg) {
  ModelMatrices mat = build_matrices(set, hp);
  JointQp jqp = assemble(set, mat, hp);
  Solution sol = solve(jqp.qp, cfg);
  RunResult res;
  res.status = sol.status;
  if (sol.status == SolveStatus::kInfeasible) return res;
  res.labeling = round_solution(sol.u, set, jqp.index);
  res.metrics.relaxed_objective = sol.objective;

  // objective of the rounded integer assignment
  Eigen::VectorXd ui = Eigen::VectorXd::Zero(jqp.qp.num_vars());
  for (size_t i = 0; i < set.images.size(); ++i) {
    const auto& lab = res.labeling.images[i];
    for (size_t j = 0; j < lab.labels.size(); ++j)
      if (lab.labels[j]) ui[jqp.index.y(static_cast<int>(i), static_cast<int>(j))] = 1.0;
    if (lab.chosen_box) ui[jqp.index.z(static_cast<int>(i), *lab.chosen_box)] = 1.0;
  }
  res.metrics.objective = objective_value(jqp.qp, ui);
  res.metrics.gap = relaxation_gap(sol.objective, *res.metrics.objective);
  return res;
}

// b1/b3 share the per-image foreground-fraction QP over y only.
RunResult run_b1_b3(const InstanceSet& set, const Hyperparams& hp, const SolverConfig& cfg,
                    bool with_saliency) {
  ModelMatrices mat = build_matrices(set, hp);
  VarIndex idx = VarIndex::from(set);
  const int n = idx.n_total;

  QpProblem qp;
  qp.M = mat.D_s + hp.alpha * mat.L_s;
  qp.c = with_saliency ? Eigen::VectorXd(hp.nu * mat.s_s) : Eigen::VectorXd(Eigen::VectorXd::Zero(n));
  qp.lb = Eigen::VectorXd::Zero(n);
  qp.ub = Eigen::VectorXd::Ones(n);
  qp.A = Eigen::MatrixXd::Zero(2 * set.images.size(), n);
  qp.b = Eigen::VectorXd::Zero(2 * set.images.size());
  for (size_t i = 0; i < set.images.size(); ++i) {
    const auto& img = set.images[i];
    double total = 0;
    for (const auto& sp : img.superpixels) total += static_cast<double>(sp.pixel_count);
    for (size_t j = 0; j < img.superpixels.size(); ++j) {
      double pix = static_cast<double>(img.superpixels[j].pixel_count);
      qp.A(2 * i, idx.y(static_cast<int>(i), static_cast<int>(j))) = -pix;
      qp.A(2 * i + 1, idx.y(static_cast<int>(i), static_cast<int>(j))) = pix;
    }
    qp.b[2 * i] = -hp.fg_min * total;
    qp.b[2 * i + 1] = hp.fg_max * total;
  }
  qp.Aeq.resize(0, n);
  qp.beq.resize(0);

  Solution sol = solve(qp, cfg);
  RunResult res;
  res.status = sol.status;
  if (sol.status == SolveStatus::kInfeasible) return res;
  res.metrics.relaxed_objective = sol.objective;
  for (size_t i = 0; i < set.images.size(); ++i) {
    Labeling::Image lab;
    const auto& img = set.images[i];
    lab.relaxed_y.resize(img.superpixels.size());
    for (size_t j = 0; j < img.superpixels.size(); ++j)
      lab.relaxed_y[j] = sol.u[idx.y(static_cast<int>(i), static_cast<int>(j))];
    lab.labels = round_y(lab.relaxed_y);
    res.labeling.images.push_back(std::move(lab));
  }
  return res;
}

RunResult run_b2(const InstanceSet& set, const Hyperparams& hp) {
  RunResult res;
  for (const auto& img : set.images) {
    Labeling::Image lab;
    const size_t n = img.superpixels.size();
    lab.labels.assign(n, 0);
    lab.relaxed_y.assign(n, 0.0);
    double total = 0;
    for (const auto& sp : img.superpixels) total += static_cast<double>(sp.pixel_count);

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      double ca = saliency_to_cost(img.superpixels[a].saliency_m, hp.saliency_eps);
      double cb = saliency_to_cost(img.superpixels[b].saliency_m, hp.saliency_eps);
      return ca < cb;
    });
    double got = 0;
    for (size_t j : order) {
      if (got >= hp.baseline_fraction * total) break;
      lab.labels[j] = 1;
      lab.relaxed_y[j] = 1.0;
      got += static_cast<double>(img.superpixels[j].pixel_count);
    }
    res.labeling.images.push_back(std::move(lab));
  }
  return res;
}

RunResult run_sal(const InstanceSet& set, const Hyperparams& hp) {
  RunResult res;
  for (const auto& img : set.images) {
    Labeling::Image lab;
    lab.relaxed_z.resize(img.boxes.size());
    int best = 0;
    double best_cost = saliency_to_cost(img.boxes[0].saliency_m, hp.saliency_eps);
    for (size_t b = 0; b < img.boxes.size(); ++b) {
      double cost = saliency_to_cost(img.boxes[b].saliency_m, hp.saliency_eps);
      lab.relaxed_z[b] = -cost;
      if (cost < best_cost) {
        best = static_cast<int>(b);
        best_cost = cost;
      }
    }
    lab.chosen_box = best;
    res.labeling.images.push_back(std::move(lab));
  }
  return res;
}

RunResult run_sal_disc(const InstanceSet& set, const Hyperparams& hp, const SolverConfig& cfg) {
  ModelMatrices mat = build_matrices(set, hp);
  VarIndex idx = VarIndex::from(set);
  const int m = idx.m_total;

  QpProblem qp;
  qp.M = mat.D_b;
  qp.c = hp.mu * mat.s_b;
  qp.lb = Eigen::VectorXd::Zero(m);
  qp.ub = Eigen::VectorXd::Ones(m);
  qp.A.resize(0, m);
  qp.b.resize(0);
  qp.Aeq = Eigen::MatrixXd::Zero(set.images.size(), m);
  qp.beq = Eigen::VectorXd::Ones(set.images.size());
  for (size_t i = 0; i < set.images.size(); ++i)
    for (size_t b = 0; b < set.images[i].boxes.size(); ++b)
      qp.Aeq(i, idx.z(static_cast<int>(i), static_cast<int>(b)) - idx.n_total) = 1.0;

  Solution sol = solve(qp, cfg);
  RunResult res;
  res.status = sol.status;
  if (sol.status == SolveStatus::kInfeasible) return res;
  res.metrics.relaxed_objective = sol.objective;
  for (size_t i = 0; i < set.images.size(); ++i) {
    Labeling::Image lab;
    const auto& img = set.images[i];
    lab.relaxed_z.resize(img.boxes.size());
    int best = 0;
    for (size_t b = 0; b < img.boxes.size(); ++b) {
      lab.relaxed_z[b] = sol.u[idx.z(static_cast<int>(i), static_cast<int>(b)) - idx.n_total];
      if (lab.relaxed_z[b] > lab.relaxed_z[best]) best = static_cast<int>(b);
    }
    lab.chosen_box = best;
    res.labeling.images.push_back(std::move(lab));
  }
  return res;
}

}  // namespace

RunResult run(BaselineMode mode, const InstanceSet& set, const Hyperparams& hp,
              const SolverConfig& cfg) {
  ValidationReport rep = validate(set);
  if (!rep.ok()) throw std::invalid_argument("invalid instance: " + rep.joined());

  RunResult res;
  switch (mode) {
    case BaselineMode::kJoint: res = run_joint(set, hp, cfg); break;
    case BaselineMode::kB1: res = run_b1_b3(set, hp, cfg, false); break;
    case BaselineMode::kB3: res = run_b1_b3(set, hp, cfg, true); break;
    case BaselineMode::kB2: res = run_b2(set, hp); break;
    case BaselineMode::kSal: res = run_sal(set, hp); break;
    case BaselineMode::kSalDisc: res = run_sal_disc(set, hp, cfg); break;
  }
  if (res.status != SolveStatus::kInfeasible) {
    attach_box_metrics(res, set);
    attach_pixel_metrics(res, set);
  }
  return res;
}

}  // namespace coseg
