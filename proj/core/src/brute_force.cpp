#include "coseg/brute_force.hpp"

#include <algorithm>
#include <stdexcept>

namespace coseg {

bool integer_feasible_explicit(const ImageInstance& img, const LocalAssign& a, double gamma) {
  const int n_i = static_cast<int>(img.superpixels.size());
  auto y_of = [&](int j) { return (a.ymask >> j) & 1u; };

  std::vector<int> cover(n_i, 0);
  for (const auto& box : img.boxes)
    for (int j : box.members) ++cover[j];

  // explicit x_i = P_i y, constraint rows evaluated per box
  for (const auto& box : img.boxes) {
    const int z_i = (box.id == a.box) ? 1 : 0;
    int sum_x = 0;
    for (int j : box.members) sum_x += y_of(j);
    const double s = static_cast<double>(box.members.size());
    if (!(gamma * s * z_i <= sum_x && sum_x <= (1.0 - gamma) * s * z_i)) return false;
  }
  // per-superpixel row: sum of x copies <= sum of containing z
  for (int j = 0; j < n_i; ++j) {
    if (cover[j] == 0) {
      if (y_of(j)) return false;  // orphan rule
      continue;
    }
    int lhs = 0, rhs = 0;
    for (const auto& box : img.boxes) {
      if (!std::binary_search(box.members.begin(), box.members.end(), j)) continue;
      lhs += static_cast<int>(y_of(j));
      rhs += (box.id == a.box) ? 1 : 0;
    }
    if (lhs > rhs) return false;
  }
  return true;
}

std::vector<LocalAssign> enumerate_feasible(const ImageInstance& img, double gamma) {
  const int n_i = static_cast<int>(img.superpixels.size());
  if (n_i > 24) throw std::invalid_argument("enumerate_feasible: image too large");
  std::vector<LocalAssign> out;
  for (int k = 0; k < static_cast<int>(img.boxes.size()); ++k) {
    for (std::uint32_t mask = 0; mask < (1u << n_i); ++mask) {
      LocalAssign a{k, mask};
      if (integer_feasible_explicit(img, a, gamma)) out.push_back(a);
    }
  }
  return out;
}

namespace {

Eigen::VectorXd mask_to_vec(std::uint32_t mask, int n) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j)
    if ((mask >> j) & 1u) v[j] = 1.0;
  return v;
}

}  // namespace

BruteForceResult brute_force(const InstanceSet& set, const ModelMatrices& mat,
                             const Hyperparams& hp) {
  const size_t ni = set.images.size();
  double work = 1;
  for (const auto& img : set.images)
    work *= static_cast<double>(img.boxes.size()) * std::pow(2.0, img.superpixels.size());
  if (work > 1e7) throw std::invalid_argument("brute_force: instance too large");

  VarIndex idx = VarIndex::from(set);
  std::vector<std::vector<LocalAssign>> locals(ni);
  for (size_t i = 0; i < ni; ++i) locals[i] = enumerate_feasible(set.images[i], hp.gamma);

  BruteForceResult res;
  for (const auto& l : locals)
    if (l.empty()) return res;  // some image has no feasible assignment

  // local y/z vectors per assignment
  std::vector<std::vector<Eigen::VectorXd>> yv(ni);
  std::vector<int> ns(ni), ms(ni);
  for (size_t i = 0; i < ni; ++i) {
    ns[i] = static_cast<int>(set.images[i].superpixels.size());
    ms[i] = static_cast<int>(set.images[i].boxes.size());
    for (const auto& a : locals[i]) yv[i].push_back(mask_to_vec(a.ymask, ns[i]));
  }

  // self costs
  std::vector<std::vector<double>> self(ni);
  for (size_t i = 0; i < ni; ++i) {
    const int yo = idx.y_offsets[i], zo = idx.z_offsets[i];
    Eigen::MatrixXd Qy = mat.D_s.block(yo, yo, ns[i], ns[i]) +
                         hp.alpha * mat.L_s.block(yo, yo, ns[i], ns[i]);
    Eigen::MatrixXd Qz = mat.D_b.block(zo, zo, ms[i], ms[i]);
    for (size_t a = 0; a < locals[i].size(); ++a) {
      const auto& y = yv[i][a];
      const int k = locals[i][a].box;
      double cost = y.dot(Qy * y) + Qz(k, k) + hp.nu * mat.s_s.segment(yo, ns[i]).dot(y) +
                    hp.mu * mat.s_b[zo + k];
      self[i].push_back(cost);
    }
  }

  // pairwise cross costs (off-diagonal blocks of D_s and D_b)
  std::vector<std::vector<std::vector<double>>> cross(ni, std::vector<std::vector<double>>(ni));
  for (size_t i = 0; i < ni; ++i) {
    for (size_t j = i + 1; j < ni; ++j) {
      Eigen::MatrixXd Dy = mat.D_s.block(idx.y_offsets[i], idx.y_offsets[j], ns[i], ns[j]);
      Eigen::MatrixXd Dz = mat.D_b.block(idx.z_offsets[i], idx.z_offsets[j], ms[i], ms[j]);
      auto& tab = cross[i][j];
      tab.resize(locals[i].size() * locals[j].size());
      for (size_t a = 0; a < locals[i].size(); ++a) {
        Eigen::RowVectorXd va = yv[i][a].transpose() * Dy;
        for (size_t b = 0; b < locals[j].size(); ++b)
          tab[a * locals[j].size() + b] =
              2.0 * va.dot(yv[j][b]) + 2.0 * Dz(locals[i][a].box, locals[j][b].box);
      }
    }
  }

  auto build_u = [&](const std::vector<size_t>& combo) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(idx.num_vars());
    for (size_t i = 0; i < ni; ++i) {
      const auto& a = locals[i][combo[i]];
      for (int j = 0; j < ns[i]; ++j)
        if ((a.ymask >> j) & 1u) u[idx.y(static_cast<int>(i), j)] = 1.0;
      u[idx.z(static_cast<int>(i), a.box)] = 1.0;
    }
    return u;
  };

  auto lex_less = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  };

  std::vector<size_t> combo(ni, 0);
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_u;
  bool done = false;
  while (!done) {
    double cost = 0;
    for (size_t i = 0; i < ni; ++i) cost += self[i][combo[i]];
    for (size_t i = 0; i < ni; ++i)
      for (size_t j = i + 1; j < ni; ++j)
        cost += cross[i][j][combo[i] * locals[j].size() + combo[j]];

    if (cost < best) {
      best = cost;
      best_u = build_u(combo);
    } else if (cost == best) {
      Eigen::VectorXd u = build_u(combo);
      if (lex_less(u, best_u)) best_u = u;
    }

    // odometer
    for (size_t i = 0;; ++i) {
      if (i == ni) { done = true; break; }
      if (++combo[i] < locals[i].size()) break;
      combo[i] = 0;
    }
  }

  res.feasible = true;
  res.objective = best;
  res.u = best_u;
  res.labeling = round_solution(best_u, set, idx);
  return res;
}

}  // namespace coseg
