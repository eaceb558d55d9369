#include "repval/game.hpp"

#include <stdexcept>

#include "doctest.h"

using namespace repval;

namespace {

Belief belief2(const Rational& p0, const Rational& p1) {
  return Belief(RVec{p0, p1});
}

}  // namespace

TEST_CASE("distribution types reject malformed weight vectors") {
  CHECK_NOTHROW((void)Belief(RVec{Rational(1, 3), Rational(2, 3)}));
  CHECK_NOTHROW((void)MixedAction(RVec{Rational(1)}));
  CHECK_THROWS_AS((void)Belief(RVec{}), std::invalid_argument);
  CHECK_THROWS_AS((void)Belief(RVec{Rational(1, 2), Rational(1, 4)}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)Belief(RVec{Rational(3, 2), Rational(-1, 2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)MixedAction(RVec{Rational(2)}), std::invalid_argument);
}

TEST_CASE("dirac helpers") {
  const Belief b = dirac_belief(0, 3);
  CHECK(b.weights == RVec{Rational(1), Rational(0), Rational(0)});
  const MixedAction a = dirac_action(2, 3);
  CHECK(a.weights == RVec{Rational(0), Rational(0), Rational(1)});
  CHECK_THROWS_AS(dirac_belief(3, 3), std::out_of_range);
  CHECK_THROWS_AS(dirac_action(5, 2), std::out_of_range);
}

TEST_CASE("segment parametrization pins alpha = 1 to the first endpoint") {
  const Segment seg(belief2(Rational(0), Rational(1)),
                    belief2(Rational(1), Rational(0)));
  CHECK(seg.at(Rational(1)) == seg.p_prime);
  CHECK(seg.at(Rational(0)) == seg.p_double_prime);
  CHECK(seg.at(Rational(1, 4)) == belief2(Rational(3, 4), Rational(1, 4)));
  CHECK_THROWS_AS(seg.at(Rational(-1, 8)), std::invalid_argument);
  CHECK_THROWS_AS(seg.at(Rational(9, 8)), std::invalid_argument);

  CHECK_THROWS_AS(Segment(belief2(Rational(1, 2), Rational(1, 2)),
                          belief2(Rational(1, 2), Rational(1, 2))),
                  std::invalid_argument);
  CHECK_THROWS_AS(Segment(Belief(RVec{Rational(1)}),
                          belief2(Rational(1), Rational(0))),
                  std::invalid_argument);
}

TEST_CASE("full simplex segment weights state 1 by alpha") {
  const Segment seg = full_simplex_segment();
  CHECK(seg.at(Rational(0)) == belief2(Rational(1), Rational(0)));
  CHECK(seg.at(Rational(1, 3)) == belief2(Rational(2, 3), Rational(1, 3)));
  CHECK(seg.at(Rational(1)) == belief2(Rational(0), Rational(1)));
}

TEST_CASE("GameFamily::make validates shape and labels") {
  const RMat m2 = {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}};
  CHECK_THROWS_AS(GameFamily::make({}, 2, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(GameFamily::make({"a"}, 0, 2, {m2}), std::invalid_argument);
  CHECK_THROWS_AS(GameFamily::make({"a", "b"}, 2, 2, {m2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GameFamily::make({"a", "a"}, 2, 2, {m2, m2}),
                  std::invalid_argument);
  const RMat ragged = {{Rational(0), Rational(0)}, {Rational(0)}};
  CHECK_THROWS_AS(GameFamily::make({"a"}, 2, 2, {ragged}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GameFamily::make({"a"}, 3, 2, {m2}), std::invalid_argument);

  const GameFamily f = GameFamily::make({"x", "y"}, 2, 2, {m2, m2});
  CHECK(f.num_states() == 2);
  CHECK(f.state_label(1) == "y");
}

TEST_CASE("builtin payoff entries") {
  const GameFamily z = make_zamir();
  CHECK(z.payoff(0) == RMat{{Rational(3), Rational(-1)},
                            {Rational(-3), Rational(1)}});
  CHECK(z.payoff(1) == RMat{{Rational(2), Rational(-2)},
                            {Rational(-2), Rational(2)}});

  const GameFamily dk = make_dk(Rational(1, 4));
  CHECK(dk.payoff(0) == RMat{{Rational(1), Rational(0)},
                             {Rational(0), Rational(-3, 4)}});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(dk.payoff(1)[i][j] == -dk.payoff(0)[i][j]);

  // market(2): actions are prices {0, 1/2, 1}; the trade happens at the
  // larger quoted price and only when the quotes differ.
  const GameFamily mk = make_market(2);
  CHECK(mk.rows() == 3);
  CHECK(mk.cols() == 3);
  CHECK(mk.payoff(0)[1][1] == Rational(0));
  CHECK(mk.payoff(0)[1][0] == Rational(-1, 2));
  CHECK(mk.payoff(0)[0][1] == Rational(1, 2));
  CHECK(mk.payoff(0)[2][0] == Rational(-1));
  CHECK(mk.payoff(1)[1][0] == Rational(1, 2));
  CHECK(mk.payoff(1)[0][2] == Rational(0));
  CHECK(mk.payoff(1)[2][1] == Rational(0));
}

TEST_CASE("builtin constructors guard their parameters") {
  CHECK_THROWS_AS(make_dk(Rational(2)), std::invalid_argument);
  CHECK_THROWS_AS(make_dk(Rational(-1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(make_market(0), std::invalid_argument);
  CHECK_THROWS_AS(make_market(1025), std::invalid_argument);
  CHECK(make_market(1).rows() == 2);
}

TEST_CASE("parse_builtin accepts the documented forms only") {
  REQUIRE(parse_builtin("zamir").has_value());
  CHECK(parse_builtin("zamir")->payoff(0) == make_zamir().payoff(0));

  const auto dk = parse_builtin("dk:alpha=1/2");
  REQUIRE(dk.has_value());
  CHECK(dk->payoff(0) == make_dk(Rational(1, 2)).payoff(0));

  const auto mk = parse_builtin("market:m=3");
  REQUIRE(mk.has_value());
  CHECK(mk->rows() == 4);

  CHECK_FALSE(parse_builtin("nope").has_value());
  CHECK_FALSE(parse_builtin("").has_value());
  CHECK_FALSE(parse_builtin("zamir:extra").has_value());
  CHECK_FALSE(parse_builtin("dk").has_value());
  CHECK_FALSE(parse_builtin("dk:alpha=").has_value());
  CHECK_FALSE(parse_builtin("dk:alpha=3/2").has_value());
  CHECK_FALSE(parse_builtin("dk:alpha=-1/2").has_value());
  CHECK_FALSE(parse_builtin("dk:beta=1/2").has_value());
  CHECK_FALSE(parse_builtin("market").has_value());
  CHECK_FALSE(parse_builtin("market:m=0").has_value());
  CHECK_FALSE(parse_builtin("market:m=1025").has_value());
  CHECK_FALSE(parse_builtin("market:m=3/2").has_value());
}

TEST_CASE("expected_matrix is the exact state mixture") {
  const GameFamily z = make_zamir();
  const RMat mid = expected_matrix(z, belief2(Rational(1, 2), Rational(1, 2)));
  CHECK(mid == RMat{{Rational(5, 2), Rational(-3, 2)},
                    {Rational(-5, 2), Rational(3, 2)}});
  CHECK(expected_matrix(z, dirac_belief(0, 2)) == z.payoff(0));
  CHECK(expected_matrix(z, dirac_belief(1, 2)) == z.payoff(1));
  CHECK_THROWS_AS(expected_matrix(z, dirac_belief(0, 3)),
                  std::invalid_argument);
}

TEST_CASE("lipschitz seminorm equals the largest pairwise spread") {
  CHECK(lipschitz_seminorm(make_zamir()) == Rational(1));
  CHECK(lipschitz_seminorm(make_dk(Rational(0))) == Rational(2));
  CHECK(lipschitz_seminorm(make_dk(Rational(1, 2))) == Rational(2));
  for (int m = 1; m <= 3; ++m)
    CHECK(lipschitz_seminorm(make_market(m)) == Rational(1));

  const GameFamily z = make_zamir();
  CHECK(lipschitz_seminorm(z) ==
        matrix_max_abs_diff(z.payoff(0), z.payoff(1)));

  // Three states exercise the pair scan beyond the first two.
  const GameFamily tri = GameFamily::make(
      {"a", "b", "c"}, 1, 1,
      {RMat{{Rational(0)}}, RMat{{Rational(5)}}, RMat{{Rational(-1)}}});
  CHECK(lipschitz_seminorm(tri) == Rational(6));

  CHECK_THROWS_AS(
      matrix_max_abs_diff(RMat{{Rational(0)}}, RMat{{Rational(0), Rational(0)}}),
      std::invalid_argument);
}

TEST_CASE("pure_piecewise_transform appends one column per strategy") {
  const GameFamily z = make_zamir();
  const MixedAction half(RVec{Rational(1, 2), Rational(1, 2)});
  const MixedAction first = dirac_action(0, 2);
  const GameFamily t = pure_piecewise_transform(z, {half, first});
  REQUIRE(t.cols() == 4);
  REQUIRE(t.rows() == 2);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(t.payoff(k)[i][j] == z.payoff(k)[i][j]);
  CHECK(t.payoff(0)[0][2] == Rational(1));
  CHECK(t.payoff(0)[1][2] == Rational(-1));
  CHECK(t.payoff(1)[0][2] == Rational(0));
  CHECK(t.payoff(1)[1][2] == Rational(0));
  CHECK(t.payoff(0)[0][3] == Rational(3));
  CHECK(t.payoff(0)[1][3] == Rational(-3));

  CHECK_THROWS_AS(
      pure_piecewise_transform(z, {MixedAction(RVec{Rational(1)})}),
      std::invalid_argument);
}

TEST_CASE("add_mixed_row appends the weighted row combination") {
  const GameFamily z = make_zamir();
  const GameFamily g =
      add_mixed_row(z, MixedAction(RVec{Rational(3, 4), Rational(1, 4)}));
  REQUIRE(g.rows() == 3);
  CHECK(g.payoff(0)[2] == RVec{Rational(3, 2), Rational(-1, 2)});
  CHECK(g.payoff(1)[2] == RVec{Rational(1), Rational(-1)});
  CHECK(g.payoff(0)[0] == z.payoff(0)[0]);

  const GameFamily dup = add_mixed_row(z, dirac_action(1, 2));
  CHECK(dup.payoff(0)[2] == z.payoff(0)[1]);

  CHECK_THROWS_AS(add_mixed_row(z, MixedAction(RVec{Rational(1)})),
                  std::invalid_argument);
}
