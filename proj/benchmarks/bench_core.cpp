// Microbenchmarks for the hot paths: exact matrix-game solves, the
// grid value operator, one-stage splitting values, the survival DP,
// and the transport metric.

#include <benchmark/benchmark.h>

#include "repval/beliefs.hpp"
#include "repval/game.hpp"
#include "repval/matrix_game.hpp"
#include "repval/nonrevealing.hpp"
#include "repval/recursion.hpp"
#include "repval/rng.hpp"
#include "repval/walk.hpp"

namespace {

using namespace repval;

void bm_solve_matrix_game(benchmark::State& state) {
  Rng rng(7);
  RMat m(4, RVec(4));
  for (auto& row : m)
    for (Rational& x : row)
      x = Rational(static_cast<int>(rng.below(21)) - 10,
                   static_cast<int>(1 + rng.below(4)));
  for (auto _ : state) {
    MatrixGameSolution sol = solve_matrix_game(m);
    benchmark::DoNotOptimize(sol.value);
  }
}
BENCHMARK(bm_solve_matrix_game);

void bm_u_value(benchmark::State& state) {
  const GameFamily f = make_market(3);
  const Belief p = full_simplex_segment().at(Rational(1, 3));
  for (auto _ : state) {
    Rational u = u_value(f, p);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(bm_u_value);

void bm_v1_two_atoms(benchmark::State& state) {
  const GameFamily f = make_zamir();
  const Segment seg = full_simplex_segment();
  const BeliefDistribution dist = BeliefDistribution::make(
      {seg.at(Rational(1, 4)), seg.at(Rational(3, 4))},
      {Rational(1, 2), Rational(1, 2)});
  for (auto _ : state) {
    Rational v = v1(f, dist);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_v1_two_atoms);

void bm_t_grid_apply(benchmark::State& state) {
  const GameFamily f = make_zamir();
  const std::size_t grid = static_cast<std::size_t>(state.range(0));
  ValueGrid vg = ValueGrid::uniform(full_simplex_segment(), grid);
  for (std::size_t t = 0; t < grid; ++t)
    vg.values[t] = to_double(vg.alphas[t] * (1 - vg.alphas[t]));
  const Rational alpha(1, 2);
  for (auto _ : state) {
    double v = shapley_T_grid_alpha(f, vg, alpha);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_t_grid_apply)->Arg(17)->Arg(65)->Arg(257);

void bm_value_curve_stage20(benchmark::State& state) {
  const GameFamily f = make_market(2);
  const Belief mid = full_simplex_segment().at(Rational(1, 2));
  for (auto _ : state) {
    ValueCurve curve = value_curve(f, mid, 20, 65);
    benchmark::DoNotOptimize(curve.values.back());
  }
}
BENCHMARK(bm_value_curve_stage20);

void bm_survival_dp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Rational s = tau_survival_probability(n);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(bm_survival_dp)->Arg(64)->Arg(256);

void bm_kantorovich(benchmark::State& state) {
  const Segment seg = full_simplex_segment();
  std::vector<Belief> atoms;
  RVec wa, wb;
  for (int k = 0; k < 6; ++k) {
    atoms.push_back(seg.at(Rational(k, 6)));
    wa.push_back(Rational(1, 6));
    wb.push_back(Rational(k == 0 ? 3 : (k == 5 ? 1 : 2), 12));
  }
  const BeliefDistribution a = BeliefDistribution::make(atoms, wa);
  const BeliefDistribution b = BeliefDistribution::make(atoms, wb);
  for (auto _ : state) {
    Rational d = kantorovich_d2(a, b);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(bm_kantorovich);

}  // namespace

BENCHMARK_MAIN();
