#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace magt {

// Per-agent learning parameters: change rate c (probability an incorrect
// mapping changes), learning rate l (probability it changes to the correct
// action), retention rate r (probability a correct mapping is kept).
// l <= c always.
struct AgentRates {
  int action_count = 2;
  double change_rate = 0.0;
  double learning_rate = 0.0;
  double retention_rate = 1.0;
};

// System parameters: one AgentRates per agent and a volatility source,
// either a constant v per agent or an impact matrix. impact[j][i] is the
// probability that a change in agent j's decision function moves agent i's
// target. When both are supplied the impact matrix wins.
struct ClriParams {
  std::vector<AgentRates> agents;
  std::optional<std::vector<double>> volatility_const;     // per agent
  std::optional<std::vector<std::vector<double>>> impact;  // [j][i]

  int num_agents() const { return static_cast<int>(agents.size()); }
  void validate() const;
};

// A concrete world: states with probabilities, plus each agent's decision
// and target functions.
struct ClriWorld {
  std::vector<double> state_probs;
  std::vector<std::vector<int>> decision;  // [agent][state]
  std::vector<std::vector<int>> target;    // [agent][state]

  void validate(const ClriParams& params) const;
};

// Probability of a wrong action: sum_w D(w) * [decision(w) != target(w)].
double error(const ClriWorld& world, int agent);

// Volatility from impacts: v_i = 1 - prod_{j != i} (1 - impact[j][i] *
// change_probs[j]).
std::vector<double> volatility(const ClriParams& params,
                               const std::vector<double>& change_probs);

struct ErrorTrajectory {
  std::vector<std::vector<double>> error;  // [agent][step], step 0 = e0
  int clamped_steps = 0;                   // iterates pulled back into [0,1]
};

// Iterates the expected-error difference equation from e0. With an impact
// matrix, per-step volatilities come from the agents' predicted decision
// change probabilities e*c + (1-e)*(1-r).
ErrorTrajectory clri_predict(const ClriParams& params, const std::vector<double>& e0,
                             int steps);

struct ClriSimConfig {
  int num_states = 20;
  std::vector<double> state_probs;  // empty = uniform
  int steps = 50;
  int trials = 1000;
  std::uint64_t seed = 0;
  double initial_error = 1.0;  // per-state mismatch probability at t=0
  int threads = 1;
};

struct ClriSimResult {
  std::vector<std::vector<double>> mean_error;     // [agent][step]
  std::vector<std::vector<double>> ci_half_width;  // 1.96 * stderr
  std::vector<double> mean_change_freq;            // per agent, decision changes
  std::vector<double> mean_volatility;             // per agent, applied target moves
};

// Monte-Carlo generative model. Per step, per agent, per state w:
//   wrong mapping:  learns (prob l), churns to a random wrong action
//                   (prob c-l), else keeps;
//   right mapping:  kept with prob r, else moves to a random wrong action.
// Then each agent's target moves per state with probability v_i (constant,
// or Eq.-of-impact volatility from the measured change frequencies) to a
// uniformly random different action. Trials use split seeds and merge
// deterministically by trial index.
ClriSimResult clri_simulate(const ClriParams& params, const ClriSimConfig& config);

struct ClriFit {
  double retention_rate = 0.0;
  double learning_rate = 0.0;
  double volatility = 0.0;  // the value assumed during the fit
  double residual = 0.0;    // RMS residual of the linear recurrence
  bool underdetermined = false;
};

// Least-squares fit of the linear recurrence e' = alpha + beta * e to an
// observed trajectory, mapped back to (r, l) for a given volatility
// (default 0) with c fixed to the supplied value or c = l.
ClriFit fit_clri(const std::vector<double>& trajectory, int action_count,
                 std::optional<double> change_rate = std::nullopt,
                 double assumed_volatility = 0.0);

}  // namespace magt
