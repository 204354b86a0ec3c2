#include <doctest.h>

#include <cmath>
#include <random>

#include "magt/errors.hpp"
#include "magt/game.hpp"
#include "magt/game_io.hpp"

using namespace magt;

namespace {

Game fig1() {
  return Game::Bimatrix({"A", "B"}, {"A", "B"}, {1, 3, 3, 2}, {2, 4, 2, 1});
}

Game fig2() {
  return Game::Bimatrix({"A", "B"}, {"A", "B"}, {8, 9, 1, 3}, {2, 4, 2, 1});
}

SymmetricGame fig3_sym() {
  return SymmetricGame({"A", "B"}, {0, 1, 1, 0});
}

Game random_game(std::mt19937_64& rng, int max_players = 3, int max_actions = 4) {
  std::uniform_int_distribution<int> players_d(1, max_players);
  std::uniform_int_distribution<int> actions_d(1, max_actions);
  std::uniform_real_distribution<double> payoff_d(-5.0, 5.0);
  int n = players_d(rng);
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> actions;
  std::size_t profiles = 1;
  for (int i = 0; i < n; ++i) {
    players.push_back("p" + std::to_string(i));
    int k = actions_d(rng);
    std::vector<std::string> list;
    for (int a = 0; a < k; ++a) list.push_back("a" + std::to_string(a));
    actions.push_back(list);
    profiles *= static_cast<std::size_t>(k);
  }
  std::vector<double> payoffs(profiles * static_cast<std::size_t>(n));
  for (double& u : payoffs) u = payoff_d(rng);
  return Game(std::move(players), std::move(actions), std::move(payoffs));
}

}  // namespace

TEST_CASE("utility returns the stored payoff vectors") {
  Game g = fig1();
  auto u = g.utility({0, 1});  // (A,B)
  CHECK(u[0] == 3.0);
  CHECK(u[1] == 4.0);
  auto u2 = g.utility({0, 0});  // (A,A)
  CHECK(u2[0] == 1.0);
  CHECK(u2[1] == 2.0);
}

TEST_CASE("single-action one-player game") {
  Game g({"solo"}, {{"only"}}, {0.0});
  CHECK(g.utility({0})[0] == 0.0);
  CHECK(expected_utility(g, MixedProfile::FromPure({0}, {1}), 0) == 0.0);
}

TEST_CASE("utility rejects invalid action indices naming the player") {
  Game g = fig1();
  CHECK_THROWS_WITH_AS(g.utility({0, 2}), doctest::Contains("p2"), std::invalid_argument);
  CHECK_THROWS_AS(g.utility({-1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(g.utility({0, 0}, 5), std::invalid_argument);
}

TEST_CASE("expected utility of a pure profile reduces to utility") {
  Game g = fig1();
  MixedProfile pure = MixedProfile::FromPure({0, 1}, {2, 2});
  CHECK(expected_utility(g, pure, 0) == doctest::Approx(3.0));
}

TEST_CASE("expected utility matches outcome enumeration on the cycle game") {
  Game g = embed_symmetric(fig3_sym());
  MixedProfile half{{MixedStrategy({0.5, 0.5}), MixedStrategy({0.5, 0.5})}};
  // Outcomes {0,1,1,0}, each probability 1/4.
  CHECK(expected_utility(g, half, 0) == doctest::Approx(0.5));
}

TEST_CASE("expected utility with one pure and one mixed strategy") {
  Game g = fig2();
  MixedProfile p{{MixedStrategy({1.0, 0.0}), MixedStrategy({0.5, 0.5})}};
  // 0.5*2 + 0.5*4 by enumeration.
  CHECK(expected_utility(g, p, 1) == doctest::Approx(3.0));
}

TEST_CASE("expected utility of pure profiles equals utility on random games") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    Game g = random_game(rng);
    std::vector<int> counts;
    for (int i = 0; i < g.num_players(); ++i) counts.push_back(g.num_actions(i));
    for (std::size_t idx = 0; idx < g.num_profiles(); ++idx) {
      PureProfile s = g.profile_at(idx);
      MixedProfile mixed = MixedProfile::FromPure(s, counts);
      for (int i = 0; i < g.num_players(); ++i) {
        CHECK(expected_utility(g, mixed, i) == doctest::Approx(g.utility(s, i)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("expected utility is linear in each player's strategy") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Game g = random_game(rng);
    const int n = g.num_players();
    // Random base profile.
    MixedProfile base;
    for (int i = 0; i < n; ++i) {
      std::vector<double> w(static_cast<std::size_t>(g.num_actions(i)));
      double total = 0.0;
      for (double& x : w) { x = unit(rng) + 1e-3; total += x; }
      for (double& x : w) x /= total;
      base.strategies.push_back(MixedStrategy(w));
    }
    for (int i = 0; i < n; ++i) {
      std::vector<double> w(static_cast<std::size_t>(g.num_actions(i)));
      double total = 0.0;
      for (double& x : w) { x = unit(rng) + 1e-3; total += x; }
      for (double& x : w) x /= total;
      MixedStrategy alt(w);
      double alpha = unit(rng);

      std::vector<double> blended(static_cast<std::size_t>(g.num_actions(i)));
      for (int a = 0; a < g.num_actions(i); ++a) {
        blended[static_cast<std::size_t>(a)] =
            alpha * base.at(i).prob(a) + (1 - alpha) * alt.prob(a);
      }
      MixedProfile mixed = base;
      mixed.strategies[static_cast<std::size_t>(i)] = MixedStrategy(blended);
      MixedProfile swapped = base;
      swapped.strategies[static_cast<std::size_t>(i)] = alt;

      for (int p = 0; p < n; ++p) {
        double lhs = expected_utility(g, mixed, p);
        double rhs = alpha * expected_utility(g, base, p) +
                     (1 - alpha) * expected_utility(g, swapped, p);
        CHECK(std::abs(lhs - rhs) < 1e-9);
      }
    }
  }
}

TEST_CASE("mixed strategy validation") {
  CHECK_THROWS_AS(MixedStrategy({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(MixedStrategy({-0.1, 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(MixedStrategy(std::vector<double>{}), std::invalid_argument);
  // Renormalizes within tolerance.
  MixedStrategy s({0.5 + 4e-10, 0.5 + 4e-10});
  CHECK(s.prob(0) + s.prob(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(MixedStrategy({1.0, 0.0}).pure_action() == 0);
  CHECK(MixedStrategy({0.4, 0.6}).pure_action() == -1);
}

TEST_CASE("embedding a symmetric game transposes the column payoffs") {
  Game g = embed_symmetric(fig3_sym());
  CHECK(g.utility({0, 0})[0] == 0.0);
  CHECK(g.utility({0, 1})[0] == 1.0);
  CHECK(g.utility({0, 1})[1] == 1.0);
  CHECK(g.utility({1, 1})[1] == 0.0);

  SymmetricGame constant({"x", "y"}, {3, 3, 3, 3});
  Game gc = embed_symmetric(constant);
  for (std::size_t idx = 0; idx < gc.num_profiles(); ++idx) {
    auto u = gc.utility(gc.profile_at(idx));
    CHECK(u[0] == 3.0);
    CHECK(u[1] == 3.0);
  }

  SymmetricGame asym({"A", "B"}, {0, 1, 0, 0});  // u(A,B)=1, u(B,A)=0
  Game ga = embed_symmetric(asym);
  CHECK(ga.utility({0, 1})[0] == 1.0);
  CHECK(ga.utility({0, 1})[1] == 0.0);
}

TEST_CASE("embedding satisfies the role-swap identity on random symmetric games") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> payoff_d(-5.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    int k = 2 + static_cast<int>(rng() % 3);
    std::vector<std::string> names;
    for (int a = 0; a < k; ++a) names.push_back("s" + std::to_string(a));
    std::vector<double> payoffs(static_cast<std::size_t>(k) * k);
    for (double& u : payoffs) u = payoff_d(rng);
    SymmetricGame sym(names, payoffs);
    Game g = embed_symmetric(sym);
    CHECK(is_symmetric_embedding(g));
    for (int s = 0; s < k; ++s) {
      for (int t = 0; t < k; ++t) {
        CHECK(g.utility({s, t}, 0) == g.utility({t, s}, 1));
      }
    }
  }
}

TEST_CASE("game files round-trip") {
  Game g = fig1();
  Game loaded = load_game(save_game(g));
  CHECK(loaded.player_names() == g.player_names());
  for (int i = 0; i < 2; ++i) CHECK(loaded.action_names(i) == g.action_names(i));
  for (std::size_t idx = 0; idx < g.num_profiles(); ++idx) {
    PureProfile s = g.profile_at(idx);
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(loaded.utility(s, i) - g.utility(s, i)) <= 1e-12);
    }
  }

  SymmetricGame sym = fig3_sym();
  SymmetricGame re = load_symmetric_game(save_symmetric_game(sym));
  CHECK(re.action_names() == sym.action_names());
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) CHECK(re.payoff(s, t) == sym.payoff(s, t));
  }
}

TEST_CASE("round-trip on random games is exact") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    Game g = random_game(rng);
    Game loaded = load_game(save_game(g));
    for (std::size_t idx = 0; idx < g.num_profiles(); ++idx) {
      PureProfile s = g.profile_at(idx);
      for (int i = 0; i < g.num_players(); ++i) {
        CHECK(loaded.utility(s, i) == g.utility(s, i));
      }
    }
  }
}

TEST_CASE("loader reports malformed documents and missing profiles") {
  CHECK_THROWS_AS(load_game("not json at all {"), ConfigError);
  CHECK_THROWS_AS(load_game(R"({"players": ["p1"], "actions": [[]], "payoffs": []})"),
                  ConfigError);
  // Incomplete tensor names the missing profile.
  const char* missing = R"({
    "players": ["p1", "p2"],
    "actions": [["A", "B"], ["A", "B"]],
    "payoffs": [
      {"profile": ["A", "A"], "u": [1, 2]},
      {"profile": ["A", "B"], "u": [3, 4]},
      {"profile": ["B", "A"], "u": [3, 2]}
    ]
  })";
  CHECK_THROWS_WITH_AS(load_game(missing), doctest::Contains("(B,B)"), ConfigError);

  // Wrong payoff vector length.
  const char* short_u = R"({
    "players": ["p1", "p2"],
    "actions": [["A"], ["A"]],
    "payoffs": [{"profile": ["A", "A"], "u": [1]}]
  })";
  CHECK_THROWS_AS(load_game(short_u), ConfigError);
}

TEST_CASE("loader handles a 3-player document") {
  const char* doc = R"({
    "players": ["p1", "p2", "p3"],
    "actions": [["A", "B"], ["A", "B"], ["A", "B"]],
    "payoffs": [
      {"profile": ["A","A","A"], "u": [0,0,0]},
      {"profile": ["A","A","B"], "u": [1,0,0]},
      {"profile": ["A","B","A"], "u": [0,1,0]},
      {"profile": ["A","B","B"], "u": [0,0,1]},
      {"profile": ["B","A","A"], "u": [1,1,0]},
      {"profile": ["B","A","B"], "u": [1,0,1]},
      {"profile": ["B","B","A"], "u": [0,1,1]},
      {"profile": ["B","B","B"], "u": [1,1,1]}
    ]
  })";
  Game g = load_game(doc);
  CHECK(g.num_players() == 3);
  CHECK(g.num_profiles() == 8);
  CHECK(g.utility({1, 0, 1})[2] == 1.0);
}

TEST_CASE("payoff rescaling is affine") {
  SymmetricGame sym = fig3_sym();
  SymmetricGame scaled = rescale_payoffs(sym, 2.0, 1.0);
  CHECK(scaled.payoff(0, 0) == 1.0);
  CHECK(scaled.payoff(0, 1) == 3.0);
}
