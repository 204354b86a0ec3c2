#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "magt/game.hpp"

namespace magt {

enum class AgentLevel { Zero = 0, One = 1, Two = 2 };

// What a 2-level agent assumes about the payoffs of the agents it models:
// the true functions, or mirrored copies of its own.
enum class KnowledgeMode { TrueValues, AssumeSymmetric };

struct AgentSpec {
  AgentLevel level = AgentLevel::Zero;
  double epsilon = 0.05;
  std::uint64_t seed = 0;
  KnowledgeMode knowledge = KnowledgeMode::TrueValues;
};

// Work accounting for the cost-ordering comparison: every payoff-table read
// made while choosing an action.
struct DecisionStats {
  std::size_t payoff_lookups = 0;
};

// Per-action empirical reward record; all a 0-level agent ever sees.
struct ActionRewardHistory {
  std::vector<double> sum;
  std::vector<int> count;

  explicit ActionRewardHistory(int num_actions)
      : sum(static_cast<std::size_t>(num_actions), 0.0),
        count(static_cast<std::size_t>(num_actions), 0) {}

  void add(int action, double reward) {
    sum[static_cast<std::size_t>(action)] += reward;
    count[static_cast<std::size_t>(action)] += 1;
  }
  int num_actions() const { return static_cast<int>(sum.size()); }
};

// Epsilon-greedy over empirical mean rewards; unvisited actions are tried
// first (lowest index), ties break to the lowest index.
int act_level0(const ActionRewardHistory& history, double epsilon, std::mt19937_64& rng,
               DecisionStats* stats = nullptr);

// Frequency models of each opponent from the public history (uniform prior
// while empty), then a best response using the agent's own payoffs.
int act_level1(const Game& game, int player, const std::vector<PureProfile>& history,
               double epsilon, std::mt19937_64& rng, DecisionStats* stats = nullptr);

// Predicts every opponent as a deterministic 1-level agent (reconstructing
// the models they would hold from the same public history), then best
// responds to the predicted joint action. `knowledge` carries the payoff
// functions attributed to the opponents.
int act_level2(const Game& knowledge, int player, const std::vector<PureProfile>& history,
               double epsilon, std::mt19937_64& rng, DecisionStats* stats = nullptr);

// The game a 2-level agent reasons with: the true game, or one where every
// opponent's payoffs are the agent's own with the two roles swapped.
Game assumed_game(const Game& game, int player, KnowledgeMode mode);

struct SocietyTrace {
  std::vector<AgentSpec> roster;
  int steps = 0;
  std::uint64_t seed = 0;
  bool matching = false;

  std::vector<PureProfile> actions;           // [step][agent]
  std::vector<std::vector<double>> payoffs;   // [step][agent]
  std::vector<std::vector<int>> partners;     // matching mode: [step][agent]

  std::vector<double> cumulative_utility;     // per agent
  std::vector<double> mean_utility;           // per agent
  std::vector<double> windowed_mean_utility;  // per agent, trailing window
  int window = 0;

  std::vector<DecisionStats> stats;           // per agent, summed over steps
};

// Repeated simultaneous play, one agent per game role. Every agent sees the
// public history of realized actions and its own rewards.
SocietyTrace run_society(const Game& game, const std::vector<AgentSpec>& roster,
                         int steps, std::uint64_t seed);

// Random pairwise matching on a symmetric game (replicator-style pairing):
// all agents act simultaneously each step, then pairs resolve payoffs.
// Level-1/2 agents model the population of co-players. Roster size must be
// even and >= 2.
SocietyTrace run_society_matching(const SymmetricGame& sym,
                                  const std::vector<AgentSpec>& roster, int steps,
                                  std::uint64_t seed);

// Trace CSV: step, action per agent, reward per agent.
void write_society_trace_csv(std::ostream& out,
                             const std::vector<std::vector<std::string>>& action_names,
                             const SocietyTrace& trace);

// Summary CSV: agent, level, mean utility, variance.
void write_society_summary_csv(std::ostream& out, const SocietyTrace& trace);

}  // namespace magt
