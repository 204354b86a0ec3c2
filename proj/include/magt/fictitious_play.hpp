#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "magt/game.hpp"

namespace magt {

// One agent's frequency model of its opponents: a weight per (opponent,
// action), with one independent model per opponent. The agent's own slot is
// empty.
struct BeliefState {
  int owner = 0;
  std::vector<std::vector<double>> weights;  // [player][action], own slot empty

  static BeliefState Uniform(const Game& game, int agent, double initial_weight = 1.0);

  void validate(const Game& game) const;
};

// Returns a copy with the weight of each opponent's observed action
// incremented by one. The observer's own entry of `observed` is ignored.
BeliefState update_weights(const BeliefState& beliefs, const PureProfile& observed);

// Empirical distribution k(s_j) / sum k for one opponent.
MixedStrategy opponent_distribution(const BeliefState& beliefs, int opponent);

enum class TieRule { LowestIndex, UniformRandom };

// Joint action where every agent best-responds to the product of its
// opponent models. `rng` is consulted only under TieRule::UniformRandom.
PureProfile fp_step(const Game& game, const std::vector<BeliefState>& beliefs,
                    TieRule tie_rule, std::mt19937_64* rng);

struct FpStepRecord {
  int t = 0;
  PureProfile actions;
  std::vector<BeliefState> beliefs;  // beliefs the actions were based on
  std::vector<double> payoffs;
};

struct FpStatus {
  enum class Kind { Converged, Cycle, BudgetExhausted };
  Kind kind = Kind::BudgetExhausted;
  PureProfile profile;                     // Converged
  int period = 0;                          // Cycle
  std::vector<PureProfile> cycle_profiles; // Cycle, in play order
};

struct FpTrace {
  std::vector<FpStepRecord> steps;
  FpStatus status;
};

struct FpConfig {
  int budget = 100;
  int cycle_window = 20;        // periodicity check over this many trailing steps
  int convergence_window = 10;  // identical profiles needed to declare convergence
  // Convergence also requires every opponent model to put at least this much
  // probability on the repeated profile's actions. A bare action window
  // misfires on mixed-equilibrium games, where realized play has ever-longer
  // runs of one profile while the empirical mixture converges elsewhere.
  double belief_concentration = 0.98;
  TieRule tie_rule = TieRule::LowestIndex;
  std::uint64_t seed = 0;
};

// Iterates fp_step / update_weights. Stops early once one profile has been
// played for convergence_window consecutive steps with concentrated beliefs;
// otherwise runs the full budget and then checks the trailing cycle_window
// steps for a cycle of period >= 2.
FpTrace run_fp(const Game& game, std::vector<BeliefState> beliefs, const FpConfig& config);

// Trace CSV: t, action per player, belief probabilities per (agent,
// opponent, action), payoff per player; terminal status in a footer record.
void write_fp_trace_csv(std::ostream& out, const Game& game, const FpTrace& trace);

std::string fp_status_line(const Game& game, const FpStatus& status);

}  // namespace magt
