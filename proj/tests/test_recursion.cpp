#include "repval/recursion.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "repval/nonrevealing.hpp"
#include "repval/rng.hpp"

using namespace repval;

namespace {

const char* const kBuiltins[] = {"zamir", "dk:alpha=0", "dk:alpha=1/2",
                                 "market:m=1", "market:m=2", "market:m=3"};

Belief edge(const Rational& alpha) {
  return full_simplex_segment().at(alpha);
}

RVec random_dyadic_values(Rng& rng, std::size_t n) {
  RVec f(n);
  for (Rational& x : f) x = rng.unit_rational(32);
  return f;
}

std::vector<double> to_doubles(const RVec& f) {
  std::vector<double> out;
  out.reserve(f.size());
  for (const Rational& x : f) out.push_back(to_double(x));
  return out;
}

}  // namespace

TEST_CASE("v1 agrees with the profile-enumeration oracle") {
  const Segment seg = full_simplex_segment();
  Rng rng(88);
  for (const char* name : kBuiltins) {
    CAPTURE(name);
    const GameFamily f = *parse_builtin(name);
    for (int t = 0; t < 5; ++t) {
      const auto dist = oracles::random_distribution(rng, seg);
      CHECK(v1(f, dist) == oracles::stage_value_by_profiles(f, dist));
    }
  }
}

TEST_CASE("v1 dominates the non-revealing value at the barycenter") {
  const Segment seg = full_simplex_segment();
  Rng rng(137);
  for (const char* name : {"zamir", "dk:alpha=0", "market:m=2"}) {
    const GameFamily f = *parse_builtin(name);
    for (int t = 0; t < 8; ++t) {
      const auto dist = oracles::random_distribution(rng, seg);
      CHECK(v1(f, dist) >= u_value(f, dist.barycenter()));
    }
    // A point mass reveals nothing, so the two values coincide.
    const Belief p = seg.at(rng.unit_rational(64));
    CHECK(v1(f, dirac_distribution(p)) == u_value(f, p));
  }
}

TEST_CASE("v1 skips zero-weight atoms and validates dimensions") {
  const GameFamily f = make_zamir();
  const auto padded = BeliefDistribution::make(
      {edge(Rational(1, 4)), edge(Rational(1))},
      RVec{Rational(1), Rational(0)});
  CHECK(v1(f, padded) == u_value(f, edge(Rational(1, 4))));
  CHECK_THROWS_AS(v1(f, dirac_distribution(dirac_belief(0, 3))),
                  std::invalid_argument);
}

TEST_CASE("v1_numeric tracks the exact LP") {
  const Segment seg = full_simplex_segment();
  Rng rng(55);
  for (const char* name : {"zamir", "market:m=3"}) {
    const GameFamily f = *parse_builtin(name);
    for (int t = 0; t < 6; ++t) {
      const auto dist = oracles::random_distribution(rng, seg);
      std::vector<std::vector<double>> atoms;
      std::vector<double> weights;
      for (std::size_t s = 0; s < dist.size(); ++s) {
        atoms.push_back(to_doubles(dist.atoms[s].weights));
        weights.push_back(to_double(dist.weights[s]));
      }
      CHECK(std::abs(v1_numeric(f, atoms, weights) - to_double(v1(f, dist))) <
            1e-9);
    }
  }
  CHECK_THROWS_AS(v1_numeric(make_zamir(), {{0.5, 0.5}}, {0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(v1_numeric(make_zamir(), {{0.5, 0.5}}, {-1.0}),
                  std::invalid_argument);
}

TEST_CASE("stage-1 operator equals the one-shot value on any grid") {
  const Segment seg = full_simplex_segment();
  const Rational probes[] = {Rational(0), Rational(1, 4), Rational(1, 2),
                             Rational(1)};
  for (const char* name : kBuiltins) {
    CAPTURE(name);
    const GameFamily f = *parse_builtin(name);
    RVec alphas3 = {Rational(0), Rational(1, 2), Rational(1)};
    for (const Rational& a : probes) {
      const Rational exact = oracles::one_shot_value(f, seg.at(a));
      CHECK(shapley_T_grid_exact(f, seg, alphas3, RVec(3, Rational(0)), a) ==
            exact);
      const ValueGrid zero9 = ValueGrid::uniform(seg, 9);
      CHECK(std::abs(shapley_T_grid_alpha(f, zero9, a) - to_double(exact)) <
            1e-9);
    }
  }

  // Closed form for the matching-pennies style family: min(p0, p1).
  const GameFamily dk0 = *parse_builtin("dk:alpha=0");
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    const Rational a = rng.unit_rational(64);
    CHECK(oracles::one_shot_value(dk0, seg.at(a)) ==
          oracles::dk0_stage_value(a));
  }
}

TEST_CASE("exact grid operator equals brute-force splitting enumeration") {
  const Segment seg = full_simplex_segment();
  const RVec alphas = {Rational(0), Rational(1, 4), Rational(1, 2),
                       Rational(3, 4), Rational(1)};
  Rng rng(202);
  for (const char* name : {"zamir", "dk:alpha=0", "market:m=2"}) {
    CAPTURE(name);
    const GameFamily f = *parse_builtin(name);
    for (int t = 0; t < 6; ++t) {
      const RVec fvals = random_dyadic_values(rng, alphas.size());
      for (const Rational& a : {Rational(1, 4), Rational(1, 3)}) {
        CHECK(shapley_T_grid_exact(f, seg, alphas, fvals, a) ==
              oracles::splitting_enum_value(f, seg, alphas, fvals, a));
      }
    }
  }
}

TEST_CASE("double operator path stays within 1e-9 of the exact path") {
  const Segment seg = full_simplex_segment();
  Rng rng(313);
  for (const char* name : {"zamir", "market:m=3"}) {
    CAPTURE(name);
    const GameFamily f = *parse_builtin(name);
    ValueGrid grid = ValueGrid::uniform(seg, 9);
    for (int t = 0; t < 5; ++t) {
      const RVec fvals = random_dyadic_values(rng, grid.size());
      grid.values = to_doubles(fvals);
      const Rational a = rng.unit_rational(32);
      const Rational exact =
          shapley_T_grid_exact(f, seg, grid.alphas, fvals, a);
      CHECK(std::abs(shapley_T_grid_alpha(f, grid, a) - to_double(exact)) <
            1e-9);
    }
  }
}

TEST_CASE("belief-addressed operator agrees with the minimization form") {
  const Segment seg = full_simplex_segment();
  Rng rng(77);
  for (const char* name : {"zamir", "dk:alpha=1/2", "market:m=2"}) {
    CAPTURE(name);
    const GameFamily f = *parse_builtin(name);
    ValueGrid grid = ValueGrid::uniform(seg, 9);
    for (int t = 0; t < 5; ++t) {
      grid.values = to_doubles(random_dyadic_values(rng, grid.size()));
      const Belief p = grid.belief_at(rng.below(grid.size()));
      CHECK(std::abs(shapley_T_grid(f, grid, p) -
                     shapley_T_grid_minform(f, grid, p)) < 1e-9);
    }
  }
}

TEST_CASE("grid operator guards") {
  const GameFamily f = make_zamir();
  const Segment seg = full_simplex_segment();
  const ValueGrid grid = ValueGrid::uniform(seg, 5);
  CHECK_THROWS_AS(shapley_T_grid_alpha(f, grid, Rational(-1, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(shapley_T_grid_alpha(f, grid, Rational(3, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(ValueGrid::uniform(seg, 1), std::invalid_argument);

  // Beliefs off the grid's segment are rejected by exact coordinates.
  const Segment lower_half(seg.at(Rational(1, 2)), seg.at(Rational(0)));
  const ValueGrid half_grid = ValueGrid::uniform(lower_half, 5);
  CHECK_THROWS_AS(shapley_T_grid(f, half_grid, edge(Rational(3, 4))),
                  std::invalid_argument);

  // Targets outside the grid's convex hull are infeasible splittings.
  CHECK_THROWS_AS(shapley_T_grid_exact(f, seg,
                                       {Rational(1, 2), Rational(1)},
                                       RVec(2, Rational(0)), Rational(1, 4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(shapley_T_grid_exact(f, seg, {Rational(0)}, RVec{},
                                       Rational(0)),
                  std::invalid_argument);
}

TEST_CASE("value curve pins") {
  const ValueCurve z = value_curve(make_zamir(), edge(Rational(1, 2)), 2, 5);
  CHECK(z.grid_size == 5);
  CHECK(z.prior_index == 2);
  CHECK(z.lower_bound_flag);
  REQUIRE(z.values.size() == 3);
  CHECK(z.values[0] == 0.0);
  CHECK(z.values[1] == 0.5);
  CHECK(z.values[2] == 0.5);
  REQUIRE(z.stats.size() == 2);
  CHECK(z.stats[0].lp_solves == 5);
  CHECK(z.stats[1].lp_solves == 5);
  REQUIRE(z.grid_values.size() == 3);
  for (std::size_t n = 0; n < z.grid_values.size(); ++n) {
    REQUIRE(z.grid_values[n].size() == 5);
    CHECK(z.values[n] == z.grid_values[n][z.prior_index]);
  }

  // Bounded family: the curve is flat at min(p0, p1) from stage 1 on.
  const ValueCurve dk = value_curve(*parse_builtin("dk:alpha=0"),
                                    Belief(RVec{Rational(3, 4), Rational(1, 4)}),
                                    6, 5);
  CHECK(dk.prior_index == 1);
  CHECK(dk.values[0] == 0.0);
  for (std::size_t n = 1; n < dk.values.size(); ++n)
    CHECK(dk.values[n] == 0.25);
}

TEST_CASE("value curves never decrease in the stage") {
  for (const char* name : {"zamir", "market:m=2"}) {
    CAPTURE(name);
    const ValueCurve c =
        value_curve(*parse_builtin(name), edge(Rational(1, 2)), 10, 17);
    for (std::size_t n = 0; n + 1 < c.values.size(); ++n)
      CHECK(c.values[n + 1] >= c.values[n] - 1e-12);
  }
}

TEST_CASE("nested finer grids dominate") {
  // Grid 33 contains every grid-17 point, so each stage value can only
  // move up when splittings gain support points.
  const ValueCurve coarse =
      value_curve(make_zamir(), edge(Rational(1, 2)), 8, 17);
  const ValueCurve fine =
      value_curve(make_zamir(), edge(Rational(1, 2)), 8, 33);
  for (std::size_t n = 0; n < coarse.values.size(); ++n)
    CHECK(fine.values[n] >= coarse.values[n] - 1e-12);
}

TEST_CASE("the segment entry matches the two-state convenience entry") {
  const ValueCurve a = value_curve(make_zamir(), edge(Rational(1, 2)), 4, 9);
  const ValueCurve b = value_curve_on_segment(
      make_zamir(), full_simplex_segment(), Rational(1, 2), 4, 9);
  CHECK(a.values == b.values);
  CHECK(a.prior_index == b.prior_index);
}

TEST_CASE("value_curve guards") {
  const GameFamily f = make_zamir();
  const Belief mid = edge(Rational(1, 2));
  CHECK_THROWS_AS(value_curve(f, edge(Rational(1, 3)), 4, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(value_curve(f, mid, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(value_curve(f, mid, 4, 1), std::invalid_argument);

  const GameFamily tri = GameFamily::make(
      {"a", "b", "c"}, 1, 1,
      {RMat{{Rational(0)}}, RMat{{Rational(0)}}, RMat{{Rational(0)}}});
  CHECK_THROWS_AS(
      value_curve(tri, Belief(RVec{Rational(1, 3), Rational(1, 3),
                                   Rational(1, 3)}),
                  2, 5),
      std::invalid_argument);
  const Segment tri_edge(dirac_belief(0, 3), dirac_belief(1, 3));
  const ValueCurve flat =
      value_curve_on_segment(tri, tri_edge, Rational(1, 2), 2, 5);
  CHECK(flat.values == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("operator property report") {
  const auto z = check_operator_properties(make_zamir(), 9, 5, 1);
  CHECK(z.grid_size == 9);
  CHECK(z.trials == 5);
  CHECK(z.seed == 1);
  CHECK(z.monotone_worst >= -1e-9);
  CHECK(z.increasing_worst >= -1e-12);
  CHECK_FALSE(z.h_checked);

  const auto mk = check_operator_properties(*parse_builtin("market:m=2"),
                                            9, 5, 1);
  CHECK(mk.h_checked);
  CHECK(mk.h_stages == 20);
  CHECK(mk.h_worst_slack == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(mk.monotone_worst >= -1e-9);
  CHECK(mk.increasing_worst >= -1e-9);

  CHECK_THROWS_AS(check_operator_properties(make_zamir(), 1, 5, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_operator_properties(make_zamir(), 9, 0, 1),
                  std::invalid_argument);
}
