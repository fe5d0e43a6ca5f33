#include "coseg/solver.hpp"

#include <cmath>
#include <limits>

namespace coseg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Stacked {
  Eigen::MatrixXd K;       // [I; A; Aeq]
  Eigen::VectorXd lo, hi;  // row ranges: lo <= K u <= hi
  Eigen::VectorXd rho;     // per-row penalty
};

Stacked stack_constraints(const QpProblem& qp, double rho) {
  const int nv = qp.num_vars();
  const int ni = static_cast<int>(qp.A.rows());
  const int ne = static_cast<int>(qp.Aeq.rows());
  Stacked s;
  s.K.resize(nv + ni + ne, nv);
  s.K.topRows(nv) = Eigen::MatrixXd::Identity(nv, nv);
  if (ni) s.K.middleRows(nv, ni) = qp.A;
  if (ne) s.K.bottomRows(ne) = qp.Aeq;
  s.lo.resize(nv + ni + ne);
  s.hi.resize(nv + ni + ne);
  s.lo.head(nv) = qp.lb;
  s.hi.head(nv) = qp.ub;
  if (ni) {
    s.lo.segment(nv, ni).setConstant(-kInf);
    s.hi.segment(nv, ni) = qp.b;
  }
  if (ne) {
    s.lo.tail(ne) = qp.beq;
    s.hi.tail(ne) = qp.beq;
  }
  s.rho.resize(nv + ni + ne);
  s.rho.head(nv + ni).setConstant(rho);
  s.rho.tail(ne).setConstant(1e3 * rho);  // stiffer on equalities
  return s;
}

double primal_residual(const Stacked& s, const Eigen::VectorXd& ku) {
  double r = 0;
  for (Eigen::Index i = 0; i < ku.size(); ++i) {
    double v = 0;
    if (ku[i] > s.hi[i]) v = ku[i] - s.hi[i];
    if (ku[i] < s.lo[i]) v = s.lo[i] - ku[i];
    r = std::max(r, v);
  }
  return r;
}

// Equality-constrained re-solve on the active set; returns true when the
// polished point beats the ADMM iterate on both residuals.
bool polish(const QpProblem& qp, const Stacked& s, const Eigen::MatrixXd& P,
            const SolverConfig& cfg, Eigen::VectorXd& x, Eigen::VectorXd& y, double& rp,
            double& rd) {
  const int nv = qp.num_vars();
  const double act_tol = 1e-7;
  Eigen::VectorXd kx = s.K * x;
  std::vector<int> active;
  std::vector<double> rhs_act;
  for (Eigen::Index i = 0; i < kx.size(); ++i) {
    if (s.lo[i] == s.hi[i]) {
      active.push_back(static_cast<int>(i));
      rhs_act.push_back(s.lo[i]);
    } else if (s.hi[i] < kInf && (kx[i] > s.hi[i] - act_tol || y[i] > act_tol)) {
      active.push_back(static_cast<int>(i));
      rhs_act.push_back(s.hi[i]);
    } else if (s.lo[i] > -kInf && (kx[i] < s.lo[i] + act_tol || y[i] < -act_tol)) {
      active.push_back(static_cast<int>(i));
      rhs_act.push_back(s.lo[i]);
    }
  }
  const int na = static_cast<int>(active.size());
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(nv + na, nv + na);
  kkt.topLeftCorner(nv, nv) = P;
  kkt.topLeftCorner(nv, nv).diagonal().array() += 1e-11;
  for (int r = 0; r < na; ++r) {
    kkt.block(0, nv + r, nv, 1) = s.K.row(active[r]).transpose();
    kkt.block(nv + r, 0, 1, nv) = s.K.row(active[r]);
    kkt(nv + r, nv + r) = -1e-11;
  }
  Eigen::VectorXd rhs(nv + na);
  rhs.head(nv) = -qp.c;
  for (int r = 0; r < na; ++r) rhs[nv + r] = rhs_act[static_cast<size_t>(r)];

  Eigen::LDLT<Eigen::MatrixXd> ldlt(kkt);
  if (ldlt.info() != Eigen::Success) return false;
  Eigen::VectorXd sol = ldlt.solve(rhs);
  // one round of iterative refinement
  sol += ldlt.solve(rhs - kkt * sol);

  Eigen::VectorXd xp = sol.head(nv);
  Eigen::VectorXd yp = Eigen::VectorXd::Zero(s.K.rows());
  for (int r = 0; r < na; ++r) yp[active[r]] = sol[nv + r];

  double rpp = primal_residual(s, s.K * xp);
  double rdp = (P * xp + qp.c + s.K.transpose() * yp).lpNorm<Eigen::Infinity>();
  // dual feasibility of the polished multipliers
  for (int r = 0; r < na; ++r) {
    const int i = active[r];
    if (s.lo[i] == s.hi[i]) continue;
    if (rhs_act[static_cast<size_t>(r)] == s.hi[i] && yp[i] < -cfg.tol_dual) return false;
    if (rhs_act[static_cast<size_t>(r)] == s.lo[i] && yp[i] > cfg.tol_dual) return false;
  }
  if (std::max(rpp, rdp) <= std::max(rp, rd)) {
    x = xp;
    y = yp;
    rp = rpp;
    rd = rdp;
    return true;
  }
  return false;
}

}  // namespace

Solution solve(const QpProblem& qp, const SolverConfig& cfg) {
  const int nv = qp.num_vars();
  const Eigen::MatrixXd P = 2.0 * qp.M;
  const double sigma = 1e-6;
  const double rho = 0.1;
  const double alpha = 1.6;

  Stacked s = stack_constraints(qp, rho);
  const Eigen::Index nk = s.K.rows();

  Eigen::MatrixXd H = P + sigma * Eigen::MatrixXd::Identity(nv, nv) +
                      s.K.transpose() * s.rho.asDiagonal() * s.K;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
  if (ldlt.info() != Eigen::Success) {
    H.diagonal().array() += cfg.psd_jitter;
    ldlt.compute(H);
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(nv);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(nk);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(nk);
  for (Eigen::Index i = 0; i < nk; ++i)
    z[i] = std::clamp(0.0, s.lo[i], s.hi[i] < kInf ? s.hi[i] : 0.0);

  Solution out;
  double rp = kInf, rd = kInf;
  int it = 0;
  bool infeasible = false;
  Eigen::VectorXd y_prev = y;

  for (it = 1; it <= cfg.max_iters; ++it) {
    Eigen::VectorXd w = sigma * x - qp.c + s.K.transpose() * (s.rho.cwiseProduct(z) - y);
    Eigen::VectorXd xt = ldlt.solve(w);
    Eigen::VectorXd zt = s.K * xt;
    Eigen::VectorXd xn = alpha * xt + (1 - alpha) * x;
    Eigen::VectorXd zrel = alpha * zt + (1 - alpha) * z;
    Eigen::VectorXd zn(nk), yn(nk);
    for (Eigen::Index i = 0; i < nk; ++i) {
      double v = zrel[i] + y[i] / s.rho[i];
      zn[i] = std::clamp(v, s.lo[i], s.hi[i]);
      yn[i] = y[i] + s.rho[i] * (zrel[i] - zn[i]);
    }
    x = xn;
    z = zn;
    y_prev.swap(y);
    y = yn;

    if (it % 25 == 0 || it == cfg.max_iters) {
      Eigen::VectorXd kx = s.K * x;
      rp = (kx - z).lpNorm<Eigen::Infinity>();
      rd = (P * x + qp.c + s.K.transpose() * y).lpNorm<Eigen::Infinity>();
      if (rp <= cfg.tol_primal && rd <= cfg.tol_dual) break;

      // primal infeasibility certificate from the dual direction
      Eigen::VectorXd dy = y - y_prev;
      double dyn = dy.lpNorm<Eigen::Infinity>();
      if (dyn > 1e-12) {
        Eigen::VectorXd dyu = dy / dyn;
        double kt = (s.K.transpose() * dyu).lpNorm<Eigen::Infinity>();
        if (kt <= 1e-8) {
          double support = 0;
          bool bounded = true;
          for (Eigen::Index i = 0; i < nk; ++i) {
            if (dyu[i] > 1e-12) {
              if (s.hi[i] >= kInf) { bounded = false; break; }
              support += dyu[i] * s.hi[i];
            } else if (dyu[i] < -1e-12) {
              if (s.lo[i] <= -kInf) { bounded = false; break; }
              support += dyu[i] * s.lo[i];
            }
          }
          if (bounded && support < -1e-8) {
            infeasible = true;
            break;
          }
        }
      }
    }
  }

  if (!infeasible) polish(qp, s, P, cfg, x, y, rp, rd);

  out.u = x;
  out.objective = objective_value(qp, x);
  out.primal_residual = rp;
  out.dual_residual = rd;
  out.iterations = std::min(it, cfg.max_iters);
  if (infeasible)
    out.status = SolveStatus::kInfeasible;
  else if (rp <= cfg.tol_primal && rd <= cfg.tol_dual)
    out.status = SolveStatus::kConverged;
  else
    out.status = SolveStatus::kIterationLimit;
  return out;
}

double relaxation_gap(double relaxed, double exact) { return exact - relaxed; }

}  // namespace coseg
