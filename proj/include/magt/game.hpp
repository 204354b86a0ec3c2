#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace magt {

inline constexpr double kProbTolerance = 1e-9;

// Action index per player; profiles index the dense payoff tensor.
using PureProfile = std::vector<int>;

// Probability distribution over one player's actions. Immutable after
// construction. Construction renormalizes sums within kProbTolerance of 1
// and rejects anything further off.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy Pure(int action, int num_actions);
  static MixedStrategy Uniform(int num_actions);

  int num_actions() const { return static_cast<int>(probs_.size()); }
  double prob(int action) const { return probs_[static_cast<std::size_t>(action)]; }
  const std::vector<double>& probs() const { return probs_; }

  std::vector<int> support(double tol = kProbTolerance) const;
  // Action carrying all mass, or -1 if the strategy is not degenerate.
  int pure_action(double tol = kProbTolerance) const;
  bool is_pure(double tol = kProbTolerance) const { return pure_action(tol) >= 0; }

 private:
  std::vector<double> probs_;
};

// One mixed strategy per player.
struct MixedProfile {
  std::vector<MixedStrategy> strategies;

  int num_players() const { return static_cast<int>(strategies.size()); }
  const MixedStrategy& at(int player) const {
    return strategies[static_cast<std::size_t>(player)];
  }

  static MixedProfile FromPure(const PureProfile& profile,
                               const std::vector<int>& action_counts);
};

// Finite N-player normal-form game. Payoff tensor is dense, row-major in
// profile order (last player's action varies fastest), with the N payoffs of
// each profile stored contiguously. Immutable after construction.
class Game {
 public:
  Game(std::vector<std::string> players,
       std::vector<std::vector<std::string>> actions,
       std::vector<double> payoffs);

  // Convenience builder for 2-player games. u1/u2 are row-major
  // (row = player 1's action, column = player 2's action).
  static Game Bimatrix(std::vector<std::string> row_actions,
                       std::vector<std::string> col_actions,
                       std::vector<double> u1, std::vector<double> u2);

  int num_players() const { return static_cast<int>(players_.size()); }
  int num_actions(int player) const {
    return static_cast<int>(actions_[static_cast<std::size_t>(player)].size());
  }
  const std::string& player_name(int player) const {
    return players_[static_cast<std::size_t>(player)];
  }
  const std::string& action_name(int player, int action) const {
    return actions_[static_cast<std::size_t>(player)][static_cast<std::size_t>(action)];
  }
  const std::vector<std::string>& action_names(int player) const {
    return actions_[static_cast<std::size_t>(player)];
  }
  const std::vector<std::string>& player_names() const { return players_; }
  // -1 when no such action.
  int action_index(int player, std::string_view name) const;

  std::size_t num_profiles() const { return num_profiles_; }
  std::size_t profile_index(const PureProfile& profile) const;
  PureProfile profile_at(std::size_t index) const;

  // Payoff vector (one entry per player) for a pure profile.
  std::span<const double> utility(const PureProfile& profile) const;
  double utility(const PureProfile& profile, int player) const;

  const std::vector<double>& payoff_tensor() const { return payoffs_; }

  void check_player(int player) const;

 private:
  void check_profile(const PureProfile& profile) const;

  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> actions_;
  std::vector<double> payoffs_;  // num_profiles * num_players
  std::size_t num_profiles_ = 1;
};

// Symmetric pairwise game: one shared action list, payoff(s, s') is the
// utility of an s-player meeting an s'-player.
class SymmetricGame {
 public:
  SymmetricGame(std::vector<std::string> actions, std::vector<double> payoffs);

  int num_actions() const { return static_cast<int>(actions_.size()); }
  const std::string& action_name(int action) const {
    return actions_[static_cast<std::size_t>(action)];
  }
  const std::vector<std::string>& action_names() const { return actions_; }
  int action_index(std::string_view name) const;

  double payoff(int own, int other) const {
    return payoffs_[static_cast<std::size_t>(own) * actions_.size() +
                    static_cast<std::size_t>(other)];
  }

 private:
  std::vector<std::string> actions_;
  std::vector<double> payoffs_;  // row-major u(own, other)
};

// Expected utility of `player` under a full mixed profile: sum over pure
// profiles of the product of the players' action probabilities times the
// player's payoff.
double expected_utility(const Game& game, const MixedProfile& profile, int player);

// Two-player embedding with u1(s,s') = u(s,s') and u2(s,s') = u(s',s).
Game embed_symmetric(const SymmetricGame& sym);

// Affine payoff transform u -> scale*u + shift (e.g. to make 1+u positive
// for the replicator map).
SymmetricGame rescale_payoffs(const SymmetricGame& sym, double scale, double shift);

// True when the 2-player game satisfies u1(s,s') == u2(s',s) with a shared
// action list, i.e. it is the embedding of a symmetric game.
bool is_symmetric_embedding(const Game& game, double tol = kProbTolerance);

}  // namespace magt
