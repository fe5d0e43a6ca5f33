#include <doctest.h>

#include <cstring>
#include <random>

#include "coseg/brute_force.hpp"
#include "coseg/solver.hpp"
#include "kkt_oracle.hpp"
#include "test_util.hpp"

using namespace coseg;

TEST_CASE("symmetric projection onto a simplex") {
  QpProblem qp;
  qp.M = Eigen::MatrixXd::Identity(2, 2);
  qp.c = Eigen::VectorXd::Zero(2);
  qp.A.resize(0, 2);
  qp.b.resize(0);
  qp.Aeq = Eigen::MatrixXd::Ones(1, 2);
  qp.beq = Eigen::VectorXd::Ones(1);
  qp.lb = Eigen::VectorXd::Zero(2);
  qp.ub = Eigen::VectorXd::Ones(2);

  Solution sol = solve(qp);
  REQUIRE(sol.status == SolveStatus::kConverged);
  CHECK(sol.u[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sol.u[1] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sol.objective == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("KKT-constructed problems are recovered") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 25; ++t) {
    auto kc = testutil::make_kkt_case(rng, 6 + static_cast<int>(rng() % 5));
    Solution sol = solve(kc.qp);
    REQUIRE(sol.status == SolveStatus::kConverged);
    CHECK((sol.u - kc.u_star).lpNorm<Eigen::Infinity>() <= 1e-5);
  }
}

TEST_CASE("determinism: identical inputs give bit-identical output") {
  std::mt19937_64 rng(7);
  auto kc = testutil::make_kkt_case(rng, 8);
  SolverConfig cfg;
  cfg.seed = 42;
  Solution a = solve(kc.qp, cfg);
  Solution b = solve(kc.qp, cfg);
  REQUIRE(a.u.size() == b.u.size());
  CHECK(std::memcmp(a.u.data(), b.u.data(), sizeof(double) * a.u.size()) == 0);
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("converged solutions are feasible within tolerance") {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 10; ++t) {
    auto kc = testutil::make_kkt_case(rng, 7);
    SolverConfig cfg;
    Solution sol = solve(kc.qp, cfg);
    REQUIRE(sol.status == SolveStatus::kConverged);
    CHECK(((kc.qp.Aeq * sol.u - kc.qp.beq).array().abs() <= cfg.tol_primal + 1e-12).all());
    CHECK((sol.u.array() >= kc.qp.lb.array() - cfg.tol_primal).all());
    CHECK((sol.u.array() <= kc.qp.ub.array() + cfg.tol_primal).all());
  }
}

TEST_CASE("brute force: single box, saliency decides") {
  // 1 image, 1 box over all 3 superpixels, zero matrices, costs (0,1,0)
  InstanceSet set;
  ImageInstance img;
  img.width = img.height = 10;
  for (int j = 0; j < 3; ++j) {
    Superpixel sp;
    sp.id = j;
    sp.features = Eigen::VectorXd::Zero(2);
    sp.position = Eigen::Vector2d(0.1 * j, 0.1);
    sp.color = Eigen::Vector3d(0.5, 0.5, 0.5);
    sp.saliency_m = 1.0;
    sp.pixel_count = 10;
    img.superpixels.push_back(sp);
  }
  BoundingBox box;
  box.id = 0;
  box.members = {0, 1, 2};
  box.rect = Rect{0, 0, 10, 10};
  box.features = Eigen::VectorXd::Zero(2);
  box.saliency_m = 1.0;
  img.boxes.push_back(box);
  set.images.push_back(img);

  Hyperparams hp;
  hp.gamma = 0.1;
  hp.nu = 1.0;
  hp.mu = 0.0;
  ModelMatrices mat;
  mat.D_s = Eigen::MatrixXd::Zero(3, 3);
  mat.L_s = Eigen::MatrixXd::Zero(3, 3);
  mat.D_b = Eigen::MatrixXd::Zero(1, 1);
  mat.s_s.resize(3);
  mat.s_s << 0, 1, 0;
  mat.s_b = Eigen::VectorXd::Zero(1);

  BruteForceResult bf = brute_force(set, mat, hp);
  REQUIRE(bf.feasible);
  CHECK(bf.objective == doctest::Approx(0.0));
  CHECK(*bf.labeling.images[0].chosen_box == 0);
  // y = (1,0,1) also attains cost 0 but the lexicographic tie rule picks (0,0,1)
  CHECK(bf.labeling.images[0].labels == std::vector<int>{0, 0, 1});
  CHECK(integer_feasible_explicit(img, LocalAssign{0, 0b101}, hp.gamma));
  CHECK_FALSE(integer_feasible_explicit(img, LocalAssign{0, 0b000}, hp.gamma));
}

TEST_CASE("brute force: gamma bounds can make an instance integer-infeasible") {
  InstanceSet set;
  ImageInstance img;
  img.width = img.height = 10;
  Superpixel sp;
  sp.id = 0;
  sp.features = Eigen::VectorXd::Zero(2);
  sp.position = Eigen::Vector2d(0.5, 0.5);
  sp.color = Eigen::Vector3d(0.5, 0.5, 0.5);
  sp.saliency_m = 0.5;
  sp.pixel_count = 10;
  img.superpixels.push_back(sp);
  Superpixel sp2 = sp;
  sp2.id = 1;
  img.superpixels.push_back(sp2);
  BoundingBox box;
  box.id = 0;
  box.members = {0};
  box.rect = Rect{0, 0, 5, 5};
  box.features = Eigen::VectorXd::Zero(2);
  box.saliency_m = 0.5;
  img.boxes.push_back(box);
  set.images.push_back(img);

  Hyperparams hp;
  hp.gamma = 0.4;  // 0.4 <= y <= 0.6 has no integer point
  ModelMatrices mat;
  mat.D_s = Eigen::MatrixXd::Zero(2, 2);
  mat.L_s = Eigen::MatrixXd::Zero(2, 2);
  mat.D_b = Eigen::MatrixXd::Zero(1, 1);
  mat.s_s = Eigen::VectorXd::Zero(2);
  mat.s_b = Eigen::VectorXd::Zero(1);

  BruteForceResult bf = brute_force(set, mat, hp);
  CHECK_FALSE(bf.feasible);
}

TEST_CASE("relaxed optimum lower-bounds the integer optimum") {
  Hyperparams hp;
  SolverConfig cfg;
  cfg.tol_primal = cfg.tol_dual = 1e-8;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    InstanceSet set = testutil::small_planted(seed, 2, 5, 2);
    ModelMatrices mat = build_matrices(set, hp);
    JointQp jqp = assemble(set, mat, hp);
    Solution sol = solve(jqp.qp, cfg);
    REQUIRE(sol.status == SolveStatus::kConverged);
    BruteForceResult bf = brute_force(set, mat, hp);
    REQUIRE(bf.feasible);
    CHECK(sol.objective <= bf.objective + 1e-6);
    CHECK(relaxation_gap(sol.objective, bf.objective) >= -1e-6);
  }
}

TEST_CASE("relaxation gap arithmetic") {
  CHECK(relaxation_gap(1.0, 1.0) == 0.0);
  CHECK(relaxation_gap(0.8, 1.0) == doctest::Approx(0.2));
}

TEST_CASE("brute force guard rejects oversized instances") {
  InstanceSet set = testutil::small_planted(0, 3, 6, 3);
  Hyperparams hp;
  ModelMatrices mat = build_matrices(set, hp);
  // blow up the apparent size by replicating images beyond the guard
  InstanceSet big = set;
  while (big.images.size() < 20) big.images.push_back(set.images[0]);
  CHECK_THROWS(brute_force(big, mat, hp));
}
