#include <doctest.h>

#include <random>

#include "coseg/brute_force.hpp"
#include "coseg/qp.hpp"
#include "test_util.hpp"

using namespace coseg;

namespace {

// independent objective evaluation: plain entry loops, no Eigen products
double objective_by_loops(const QpProblem& qp, const Eigen::VectorXd& u) {
  double v = 0;
  for (Eigen::Index i = 0; i < qp.M.rows(); ++i)
    for (Eigen::Index j = 0; j < qp.M.cols(); ++j) v += u[i] * qp.M(i, j) * u[j];
  for (Eigen::Index i = 0; i < qp.c.size(); ++i) v += qp.c[i] * u[i];
  return v;
}

}  // namespace

TEST_CASE("projection matrix follows the appendix example") {
  InstanceSet set = testutil::appendix_fixture();
  Eigen::MatrixXd P1 = projection_matrix(set.images[0].boxes[0], 5);
  Eigen::MatrixXd expect(3, 5);
  expect << 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0;
  CHECK((P1 - expect).lpNorm<Eigen::Infinity>() == 0.0);

  BoundingBox all;
  all.members = {0, 1, 2};
  CHECK((projection_matrix(all, 3) - Eigen::MatrixXd::Identity(3, 3)).lpNorm<Eigen::Infinity>() ==
        0.0);

  BoundingBox single;
  single.members = {2};
  Eigen::MatrixXd Ps = projection_matrix(single, 4);
  CHECK(Ps.rows() == 1);
  CHECK(Ps(0, 2) == 1.0);
  CHECK(Ps.sum() == 1.0);
}

TEST_CASE("appendix constraint system, gamma = 0.1") {
  InstanceSet set = testutil::appendix_fixture();
  Hyperparams hp;
  hp.gamma = 0.1;
  ModelMatrices mat = build_matrices(set, hp);
  JointQp jqp = assemble(set, mat, hp);
  const auto& A = jqp.qp.A;
  const auto& idx = jqp.index;

  // rows: box0 lower, box0 upper, box1 lower, box1 upper, then sp rows 0..3
  REQUIRE(A.rows() == 8);
  const double tol = 1e-12;

  // 0.3 z1 <= y1 + y3 + y4
  CHECK(A(0, idx.y(0, 0)) == doctest::Approx(-1).epsilon(tol));
  CHECK(A(0, idx.y(0, 2)) == doctest::Approx(-1).epsilon(tol));
  CHECK(A(0, idx.y(0, 3)) == doctest::Approx(-1).epsilon(tol));
  CHECK(A(0, idx.y(0, 1)) == 0.0);
  CHECK(A(0, idx.z(0, 0)) == doctest::Approx(0.3).epsilon(tol));
  CHECK(jqp.qp.b[0] == 0.0);
  // y1 + y3 + y4 <= 2.7 z1
  CHECK(A(1, idx.y(0, 0)) == doctest::Approx(1).epsilon(tol));
  CHECK(A(1, idx.z(0, 0)) == doctest::Approx(-2.7).epsilon(tol));
  // second box: 0.3 z2 <= y1 + y2 + y4 <= 2.7 z2
  CHECK(A(2, idx.y(0, 1)) == doctest::Approx(-1).epsilon(tol));
  CHECK(A(2, idx.z(0, 1)) == doctest::Approx(0.3).epsilon(tol));
  CHECK(A(3, idx.z(0, 1)) == doctest::Approx(-2.7).epsilon(tol));

  // 2 y1 <= z1 + z2
  CHECK(A(4, idx.y(0, 0)) == doctest::Approx(2).epsilon(tol));
  CHECK(A(4, idx.z(0, 0)) == doctest::Approx(-1).epsilon(tol));
  CHECK(A(4, idx.z(0, 1)) == doctest::Approx(-1).epsilon(tol));
  // y2 <= z2
  CHECK(A(5, idx.y(0, 1)) == doctest::Approx(1).epsilon(tol));
  CHECK(A(5, idx.z(0, 0)) == 0.0);
  CHECK(A(5, idx.z(0, 1)) == doctest::Approx(-1).epsilon(tol));
  // y3 <= z1
  CHECK(A(6, idx.y(0, 2)) == doctest::Approx(1).epsilon(tol));
  CHECK(A(6, idx.z(0, 0)) == doctest::Approx(-1).epsilon(tol));
  CHECK(A(6, idx.z(0, 1)) == 0.0);
  // 2 y4 <= z1 + z2
  CHECK(A(7, idx.y(0, 3)) == doctest::Approx(2).epsilon(tol));
  CHECK(A(7, idx.z(0, 0)) == doctest::Approx(-1).epsilon(tol));

  // z1 + z2 = 1
  REQUIRE(jqp.qp.Aeq.rows() == 1);
  CHECK(jqp.qp.Aeq(0, idx.z(0, 0)) == 1.0);
  CHECK(jqp.qp.Aeq(0, idx.z(0, 1)) == 1.0);
  CHECK(jqp.qp.beq[0] == 1.0);

  // superpixel 5 is in no box: fixed to zero
  CHECK(jqp.qp.ub[idx.y(0, 4)] == 0.0);

  std::string dump = dump_constraints(jqp);
  CHECK(dump.find("2*y[0,0] + -1*z[0,0] + -1*z[0,1] <= 0") != std::string::npos);
  CHECK(dump.find("1*z[0,0] + 1*z[0,1] = 1") != std::string::npos);
  CHECK(dump.find("1*y[0,4] = 0") != std::string::npos);
}

TEST_CASE("gamma edge cases") {
  InstanceSet set = testutil::appendix_fixture();
  Hyperparams hp;
  ModelMatrices mat = build_matrices(set, hp);

  hp.gamma = 0.0;
  JointQp jqp = assemble(set, mat, hp);
  // lower rows vacuous: gamma coefficient zero
  CHECK(jqp.qp.A(0, jqp.index.z(0, 0)) == 0.0);
  // upper rows use |S| z
  CHECK(jqp.qp.A(1, jqp.index.z(0, 0)) == doctest::Approx(-3.0));

  hp.gamma = 0.5;
  CHECK_THROWS(assemble(set, mat, hp));
  hp.gamma = -0.1;
  CHECK_THROWS(assemble(set, mat, hp));
}

TEST_CASE("objective value") {
  QpProblem qp;
  qp.M = Eigen::MatrixXd::Zero(3, 3);
  qp.c = Eigen::VectorXd::Zero(3);
  CHECK(objective_value(qp, Eigen::VectorXd::Zero(3)) == 0.0);

  qp.c << 0.5, 1.5, -2.0;
  CHECK(objective_value(qp, Eigen::VectorXd::Unit(3, 1)) == doctest::Approx(1.5));

  CHECK_THROWS(objective_value(qp, Eigen::VectorXd::Zero(2)));
}

TEST_CASE("objective matches an independent evaluation on the appendix fixture") {
  InstanceSet set = testutil::appendix_fixture();
  Hyperparams hp;
  ModelMatrices mat = build_matrices(set, hp);
  JointQp jqp = assemble(set, mat, hp);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u01;
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd u(jqp.qp.num_vars());
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = u01(rng);
    CHECK(objective_value(jqp.qp, u) ==
          doctest::Approx(objective_by_loops(jqp.qp, u)).epsilon(1e-10));
  }
}

TEST_CASE("rounding rules") {
  InstanceSet set = testutil::appendix_fixture();
  VarIndex idx = VarIndex::from(set);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(idx.num_vars());

  SUBCASE("argmax box") {
    u[idx.z(0, 0)] = 0.7;
    u[idx.z(0, 1)] = 0.3;
    Labeling lab = round_solution(u, set, idx);
    CHECK(*lab.images[0].chosen_box == 0);
  }
  SUBCASE("argmax tie -> lowest id") {
    u[idx.z(0, 0)] = 0.5;
    u[idx.z(0, 1)] = 0.5;
    Labeling lab = round_solution(u, set, idx);
    CHECK(*lab.images[0].chosen_box == 0);
  }
  SUBCASE("normalize then threshold at 0.5") {
    u[idx.y(0, 0)] = 0.4;
    u[idx.y(0, 1)] = 0.2;
    u[idx.y(0, 2)] = 0.1;
    Labeling lab = round_solution(u, set, idx);
    CHECK(lab.images[0].labels == std::vector<int>{1, 1, 0, 0, 0});
  }
  SUBCASE("all zero y -> all background") {
    Labeling lab = round_solution(u, set, idx);
    CHECK(lab.images[0].labels == std::vector<int>{0, 0, 0, 0, 0});
  }
  SUBCASE("orphan stays background even with high relaxed value") {
    u[idx.y(0, 4)] = 0.9;
    u[idx.y(0, 0)] = 0.9;
    Labeling lab = round_solution(u, set, idx);
    CHECK(lab.images[0].labels[4] == 0);
    CHECK(lab.images[0].labels[0] == 1);
  }
}

TEST_CASE("background box forces its exclusive superpixels to zero") {
  InstanceSet set = testutil::appendix_fixture();
  Hyperparams hp;
  ModelMatrices mat = build_matrices(set, hp);
  JointQp jqp = assemble(set, mat, hp);
  const auto& idx = jqp.index;

  auto feasible = [&](const Eigen::VectorXd& u) {
    if (((jqp.qp.A * u).array() > jqp.qp.b.array() + 1e-9).any()) return false;
    if (((jqp.qp.Aeq * u - jqp.qp.beq).array().abs() > 1e-9).any()) return false;
    if ((u.array() < jqp.qp.lb.array() - 1e-9).any()) return false;
    if ((u.array() > jqp.qp.ub.array() + 1e-9).any()) return false;
    return true;
  };

  // superpixel 2 only lives in box 0; with z0 = 0, y3 > 0 is infeasible
  Eigen::VectorXd u = Eigen::VectorXd::Zero(idx.num_vars());
  u[idx.z(0, 1)] = 1.0;
  u[idx.y(0, 2)] = 0.2;
  CHECK_FALSE(feasible(u));
  u[idx.y(0, 2)] = 0.0;
  // satisfy the selected box's lower coupling instead
  u[idx.y(0, 1)] = 0.9;
  CHECK(feasible(u));
}

TEST_CASE("x-eliminated integer set equals the explicit-x transcription") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    InstanceSet set = testutil::small_planted(seed, 1, 5, 3);
    Hyperparams hp;
    ModelMatrices mat = build_matrices(set, hp);
    JointQp jqp = assemble(set, mat, hp);
    const auto& img = set.images[0];
    const int n = static_cast<int>(img.superpixels.size());

    for (int k = 0; k < static_cast<int>(img.boxes.size()); ++k) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        Eigen::VectorXd u = Eigen::VectorXd::Zero(jqp.qp.num_vars());
        for (int j = 0; j < n; ++j)
          if ((mask >> j) & 1u) u[jqp.index.y(0, j)] = 1.0;
        u[jqp.index.z(0, k)] = 1.0;

        bool reduced = !((jqp.qp.A * u).array() > jqp.qp.b.array() + 1e-9).any() &&
                       !((u.array() > jqp.qp.ub.array() + 1e-9).any()) &&
                       !((jqp.qp.Aeq * u - jqp.qp.beq).array().abs() > 1e-9).any();
        bool explicit_x = integer_feasible_explicit(img, LocalAssign{k, mask}, hp.gamma);
        CHECK(reduced == explicit_x);
      }
    }
  }
}

TEST_CASE("assembled M is PSD") {
  for (std::uint64_t seed : {0u, 3u, 8u}) {
    InstanceSet set = testutil::small_planted(seed, 2, 6, 2);
    Hyperparams hp;
    ModelMatrices mat = build_matrices(set, hp);
    JointQp jqp = assemble(set, mat, hp);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jqp.qp.M);
    CHECK(es.eigenvalues().minCoeff() >=
          -1e-8 * (jqp.qp.M.trace() / static_cast<double>(jqp.qp.M.rows())));
  }
}
