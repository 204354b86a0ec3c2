#include "magt/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace magt {

MixedStrategy::MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw std::invalid_argument("mixed strategy needs at least one action");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("mixed strategy has negative probability " +
                                  std::to_string(p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw std::invalid_argument("mixed strategy probabilities sum to " +
                                std::to_string(total) + ", not 1");
  }
  for (double& p : probs_) p /= total;
}

MixedStrategy MixedStrategy::Pure(int action, int num_actions) {
  if (action < 0 || action >= num_actions) {
    throw std::invalid_argument("pure action index out of range");
  }
  std::vector<double> probs(static_cast<std::size_t>(num_actions), 0.0);
  probs[static_cast<std::size_t>(action)] = 1.0;
  return MixedStrategy(std::move(probs));
}

MixedStrategy MixedStrategy::Uniform(int num_actions) {
  if (num_actions < 1) throw std::invalid_argument("empty action set");
  return MixedStrategy(std::vector<double>(static_cast<std::size_t>(num_actions),
                                           1.0 / num_actions));
}

std::vector<int> MixedStrategy::support(double tol) const {
  std::vector<int> out;
  for (int a = 0; a < num_actions(); ++a) {
    if (probs_[static_cast<std::size_t>(a)] > tol) out.push_back(a);
  }
  return out;
}

int MixedStrategy::pure_action(double tol) const {
  for (int a = 0; a < num_actions(); ++a) {
    if (probs_[static_cast<std::size_t>(a)] >= 1.0 - tol) return a;
  }
  return -1;
}

MixedProfile MixedProfile::FromPure(const PureProfile& profile,
                                    const std::vector<int>& action_counts) {
  MixedProfile out;
  out.strategies.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out.strategies.push_back(MixedStrategy::Pure(profile[i], action_counts[i]));
  }
  return out;
}

Game::Game(std::vector<std::string> players,
           std::vector<std::vector<std::string>> actions,
           std::vector<double> payoffs)
    : players_(std::move(players)), actions_(std::move(actions)),
      payoffs_(std::move(payoffs)) {
  if (players_.empty()) throw std::invalid_argument("game needs at least one player");
  if (actions_.size() != players_.size()) {
    throw std::invalid_argument("one action list required per player");
  }
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (actions_[i].empty()) {
      throw std::invalid_argument("player " + players_[i] + " has an empty action list");
    }
    std::set<std::string> seen(actions_[i].begin(), actions_[i].end());
    if (seen.size() != actions_[i].size()) {
      throw std::invalid_argument("player " + players_[i] +
                                  " has duplicate action identifiers");
    }
    num_profiles_ *= actions_[i].size();
  }
  if (payoffs_.size() != num_profiles_ * players_.size()) {
    throw std::invalid_argument(
        "payoff tensor has " + std::to_string(payoffs_.size()) + " entries, expected " +
        std::to_string(num_profiles_ * players_.size()));
  }
  for (double u : payoffs_) {
    if (!std::isfinite(u)) throw std::invalid_argument("payoffs must be finite");
  }
}

Game Game::Bimatrix(std::vector<std::string> row_actions,
                    std::vector<std::string> col_actions,
                    std::vector<double> u1, std::vector<double> u2) {
  const std::size_t rows = row_actions.size(), cols = col_actions.size();
  if (u1.size() != rows * cols || u2.size() != rows * cols) {
    throw std::invalid_argument("bimatrix payoff size mismatch");
  }
  std::vector<double> payoffs;
  payoffs.reserve(rows * cols * 2);
  for (std::size_t idx = 0; idx < rows * cols; ++idx) {
    payoffs.push_back(u1[idx]);
    payoffs.push_back(u2[idx]);
  }
  return Game({"p1", "p2"}, {std::move(row_actions), std::move(col_actions)},
              std::move(payoffs));
}

int Game::action_index(int player, std::string_view name) const {
  check_player(player);
  const auto& list = actions_[static_cast<std::size_t>(player)];
  for (std::size_t a = 0; a < list.size(); ++a) {
    if (list[a] == name) return static_cast<int>(a);
  }
  return -1;
}

void Game::check_player(int player) const {
  if (player < 0 || player >= num_players()) {
    throw std::invalid_argument("player index " + std::to_string(player) +
                                " out of range [0, " + std::to_string(num_players()) + ")");
  }
}

void Game::check_profile(const PureProfile& profile) const {
  if (profile.size() != players_.size()) {
    throw std::invalid_argument("profile has " + std::to_string(profile.size()) +
                                " entries for a " + std::to_string(players_.size()) +
                                "-player game");
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] < 0 || static_cast<std::size_t>(profile[i]) >= actions_[i].size()) {
      throw std::invalid_argument("invalid action index " + std::to_string(profile[i]) +
                                  " for player " + players_[i]);
    }
  }
}

std::size_t Game::profile_index(const PureProfile& profile) const {
  check_profile(profile);
  std::size_t index = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    index = index * actions_[i].size() + static_cast<std::size_t>(profile[i]);
  }
  return index;
}

PureProfile Game::profile_at(std::size_t index) const {
  PureProfile profile(players_.size());
  for (std::size_t i = players_.size(); i-- > 0;) {
    profile[i] = static_cast<int>(index % actions_[i].size());
    index /= actions_[i].size();
  }
  return profile;
}

std::span<const double> Game::utility(const PureProfile& profile) const {
  const std::size_t base = profile_index(profile) * players_.size();
  return {payoffs_.data() + base, players_.size()};
}

double Game::utility(const PureProfile& profile, int player) const {
  check_player(player);
  return utility(profile)[static_cast<std::size_t>(player)];
}

SymmetricGame::SymmetricGame(std::vector<std::string> actions,
                             std::vector<double> payoffs)
    : actions_(std::move(actions)), payoffs_(std::move(payoffs)) {
  if (actions_.empty()) throw std::invalid_argument("symmetric game needs actions");
  std::set<std::string> seen(actions_.begin(), actions_.end());
  if (seen.size() != actions_.size()) {
    throw std::invalid_argument("duplicate action identifiers in symmetric game");
  }
  if (payoffs_.size() != actions_.size() * actions_.size()) {
    throw std::invalid_argument("symmetric payoff matrix size mismatch");
  }
  for (double u : payoffs_) {
    if (!std::isfinite(u)) throw std::invalid_argument("payoffs must be finite");
  }
}

int SymmetricGame::action_index(std::string_view name) const {
  for (std::size_t a = 0; a < actions_.size(); ++a) {
    if (actions_[a] == name) return static_cast<int>(a);
  }
  return -1;
}

double expected_utility(const Game& game, const MixedProfile& profile, int player) {
  game.check_player(player);
  if (profile.num_players() != game.num_players()) {
    throw std::invalid_argument("mixed profile player count mismatch");
  }
  for (int i = 0; i < game.num_players(); ++i) {
    if (profile.at(i).num_actions() != game.num_actions(i)) {
      throw std::invalid_argument("mixed strategy action count mismatch for player " +
                                  game.player_name(i));
    }
  }
  double total = 0.0;
  const int n = game.num_players();
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
    const PureProfile s = game.profile_at(idx);
    double weight = 1.0;
    for (int i = 0; i < n && weight != 0.0; ++i) {
      weight *= profile.at(i).prob(s[static_cast<std::size_t>(i)]);
    }
    if (weight != 0.0) total += weight * game.utility(s, player);
  }
  return total;
}

Game embed_symmetric(const SymmetricGame& sym) {
  const int n = sym.num_actions();
  std::vector<double> u1, u2;
  u1.reserve(static_cast<std::size_t>(n) * n);
  u2.reserve(static_cast<std::size_t>(n) * n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      u1.push_back(sym.payoff(s, t));
      u2.push_back(sym.payoff(t, s));
    }
  }
  return Game::Bimatrix(sym.action_names(), sym.action_names(), std::move(u1),
                        std::move(u2));
}

SymmetricGame rescale_payoffs(const SymmetricGame& sym, double scale, double shift) {
  const int n = sym.num_actions();
  std::vector<double> payoffs;
  payoffs.reserve(static_cast<std::size_t>(n) * n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) payoffs.push_back(scale * sym.payoff(s, t) + shift);
  }
  return SymmetricGame(sym.action_names(), std::move(payoffs));
}

bool is_symmetric_embedding(const Game& game, double tol) {
  if (game.num_players() != 2) return false;
  const int n = game.num_actions(0);
  if (game.num_actions(1) != n) return false;
  if (game.action_names(0) != game.action_names(1)) return false;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (std::abs(game.utility({s, t}, 0) - game.utility({t, s}, 1)) > tol) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace magt
