#pragma once

#include <optional>
#include <vector>

#include "magt/game.hpp"

namespace magt {

enum class DominanceMode { Strict, Weak };

struct EliminationRecord {
  int player = 0;
  int action = 0;
  MixedStrategy dominator;  // over the player's full action list
  DominanceMode mode = DominanceMode::Strict;
  int round = 0;
};

// Result of iterated dominance. `surviving` holds the action indices left per
// player. Weak-mode results are order dependent; `order_dependent` flags that.
struct ReducedGame {
  const Game* original = nullptr;
  std::vector<std::vector<int>> surviving;
  std::vector<EliminationRecord> log;
  DominanceMode mode = DominanceMode::Strict;
  bool order_dependent = false;
};

// Searches for a (possibly mixed) strategy over the player's other surviving
// actions that dominates `action` against every surviving pure opponent
// profile. Decided by a linear program; returns the dominator or nullopt.
std::optional<MixedStrategy> is_dominated(const Game& game, int player, int action,
                                          DominanceMode mode,
                                          const std::vector<std::vector<int>>& surviving);

// Each round removes every action that is dominated given the current
// survivors, simultaneously, until a fixpoint.
ReducedGame iterated_dominance(const Game& game, DominanceMode mode);

struct BestResponse {
  std::vector<int> actions;  // all maximizers, in action-index order
  double value = 0.0;
};

// Best pure responses of `player` against the other entries of `others`
// (the player's own entry is ignored). Ties within 1e-9.
BestResponse best_response(const Game& game, int player, const MixedProfile& others);

struct NashResult {
  MixedProfile profile;
  bool equilibrium = false;
  bool pure = false;
  bool strict = false;
  double regret = 0.0;  // max over players of best-deviation gain
};

NashResult verify_nash(const Game& game, const MixedProfile& profile, double tolerance);

// Support enumeration over all support pairs; candidate solutions of the
// indifference systems are kept when no player can gain more than 1e-9 by
// deviating. Duplicates within 1e-7 are merged. Two players only.
std::vector<NashResult> enumerate_nash_2p(const Game& game, int action_cap = 8);

struct EssVerdict {
  MixedStrategy strategy;
  bool is_nash = false;
  bool is_ess = false;
  std::optional<MixedStrategy> witness;  // invader defeating the candidate
};

// Evolutionary stability of `candidate` in a symmetric game, tested against
// all pure strategies plus a simplex grid with `resolution` steps per
// coordinate: every invader w' != w must satisfy u(w,w) > u(w',w), or tie
// and u(w,w') > u(w',w').
EssVerdict check_ess(const SymmetricGame& sym, const MixedStrategy& candidate,
                     int resolution = 100);

// Expected payoff of `own` against `other` in a symmetric game.
double expected_payoff(const SymmetricGame& sym, const MixedStrategy& own,
                       const MixedStrategy& other);

}  // namespace magt
