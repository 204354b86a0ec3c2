#include <doctest.h>

#include "magt/linear.hpp"

using namespace magt;

TEST_CASE("gaussian elimination solves a 3x3 system") {
  // x = 1, y = -2, z = 3
  std::vector<double> a{2, 1, 1, 1, 3, 2, 1, 0, 0};
  std::vector<double> b{3, 1, 1};
  auto x = solve_linear(a, b, 3);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == doctest::Approx(1.0));
  CHECK((*x)[1] == doctest::Approx(-2.0));
  CHECK((*x)[2] == doctest::Approx(3.0));
}

TEST_CASE("gaussian elimination reports singular systems") {
  std::vector<double> a{1, 2, 2, 4};
  std::vector<double> b{1, 2};
  CHECK_FALSE(solve_linear(a, b, 2).has_value());
}

TEST_CASE("least squares recovers an exact solution") {
  // Overdetermined consistent: y = 2x + 1 at x = 0,1,2.
  std::vector<double> a{1, 0, 1, 1, 1, 2};
  std::vector<double> b{1, 3, 5};
  auto x = solve_least_squares(a, b, 3, 2);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == doctest::Approx(1.0));
  CHECK((*x)[1] == doctest::Approx(2.0));
}

TEST_CASE("simplex solves a textbook LP") {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6 -> x = 4, y = 0, value 12.
  SimplexResult r = simplex_max({3, 2}, {1, 1, 1, 3}, {4, 6}, 2, 2);
  REQUIRE(r.status == SimplexResult::Status::Optimal);
  CHECK(r.value == doctest::Approx(12.0));
  CHECK(r.x[0] == doctest::Approx(4.0));
  CHECK(r.x[1] == doctest::Approx(0.0));
}

TEST_CASE("simplex detects unbounded problems") {
  // max x with only y constrained.
  SimplexResult r = simplex_max({1, 0}, {0, 1}, {1}, 1, 2);
  CHECK(r.status == SimplexResult::Status::Unbounded);
}

TEST_CASE("simplex duals give the matching-pennies game value") {
  // Row player's payoff matrix shifted positive: value of the shifted game
  // is 1/sum(y*). Matching pennies value 0, shift 2 -> shifted value 2.
  // G = [[1,-1],[-1,1]] + 2 = [[3,1],[1,3]].
  SimplexResult r = simplex_max({1, 1}, {3, 1, 1, 3}, {1, 1}, 2, 2);
  REQUIRE(r.status == SimplexResult::Status::Optimal);
  double value = 1.0 / r.value;
  CHECK(value == doctest::Approx(2.0));
  // Optimal mix from the duals: uniform.
  double total = r.dual[0] + r.dual[1];
  CHECK(r.dual[0] / total == doctest::Approx(0.5));
  CHECK(r.dual[1] / total == doctest::Approx(0.5));
}
