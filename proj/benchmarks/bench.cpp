#include <benchmark/benchmark.h>

#include "coseg/baselines.hpp"
#include "coseg/diffrac.hpp"
#include "coseg/generator.hpp"
#include "coseg/solver.hpp"

namespace {

coseg::InstanceSet make_set(int images, int superpixels, int boxes) {
  coseg::SynthConfig cfg;
  cfg.images = images;
  cfg.superpixels = superpixels;
  cfg.boxes = boxes;
  cfg.seed = 1;
  return coseg::generate(cfg);
}

void BM_DiffracMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::MatrixXd X = Eigen::MatrixXd::Random(n, 16);
  for (auto _ : state) benchmark::DoNotOptimize(coseg::diffrac_matrix(X, 1.0));
}
BENCHMARK(BM_DiffracMatrix)->Arg(64)->Arg(256)->Arg(512);

void BM_Assemble(benchmark::State& state) {
  coseg::InstanceSet set = make_set(static_cast<int>(state.range(0)), 20, 5);
  coseg::Hyperparams hp;
  coseg::ModelMatrices mat = coseg::build_matrices(set, hp);
  for (auto _ : state) benchmark::DoNotOptimize(coseg::assemble(set, mat, hp));
}
BENCHMARK(BM_Assemble)->Arg(2)->Arg(8);

void BM_JointSolve(benchmark::State& state) {
  coseg::InstanceSet set = make_set(static_cast<int>(state.range(0)), 15, 4);
  coseg::Hyperparams hp;
  coseg::ModelMatrices mat = coseg::build_matrices(set, hp);
  coseg::JointQp jqp = coseg::assemble(set, mat, hp);
  coseg::SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(coseg::solve(jqp.qp, cfg));
}
BENCHMARK(BM_JointSolve)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
