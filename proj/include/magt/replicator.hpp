#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "magt/game.hpp"

namespace magt {

// Counts of agents per strategy in a homogeneous population playing a
// symmetric game. Shares are derived; verdicts use shares only.
struct Population {
  std::vector<double> counts;

  explicit Population(std::vector<double> counts_in);

  std::vector<double> shares() const;
  double total() const;
};

// Per-strategy expected utility against the current population mixture:
// u(s) = sum_s' theta(s') * u(s, s').
std::vector<double> strategy_fitness(const SymmetricGame& sym, const Population& pop);

// One step of the discrete replicator map: count'(s) = count(s) * (1 + u(s)).
// Throws when a required growth factor 1 + u(s) is negative; rescale payoffs
// (rescale_payoffs) in that case.
Population replicator_step(const SymmetricGame& sym, const Population& pop);

struct ExtinctionEvent {
  int strategy = 0;
  int step = 0;
};

struct ReplicatorStatus {
  enum class Kind { Steady, BudgetExhausted, Extinction };
  Kind kind = Kind::BudgetExhausted;
  std::vector<double> shares;        // Steady
  ExtinctionEvent extinction;        // Extinction (only with stop_on_extinction)
};

struct ReplicatorTrace {
  std::vector<std::vector<double>> shares;   // per step, incl. initial state
  std::vector<std::vector<double>> fitness;  // per step
  std::vector<ExtinctionEvent> extinctions;
  ReplicatorStatus status;
};

struct ReplicatorConfig {
  int budget = 1000;
  double eps = 1e-8;             // steady-state tolerance on share changes
  int confirm_steps = 10;        // consecutive small-change steps required
  double extinction_threshold = 1e-12;
  bool stop_on_extinction = false;
};

ReplicatorTrace run_replicator(const SymmetricGame& sym, const Population& initial,
                               const ReplicatorConfig& config);

struct StabilityTrial {
  std::vector<double> perturbed;
  double max_distance = 0.0;    // max share distance from candidate on the path
  double final_distance = 0.0;  // distance at budget
  bool returned = false;
};

struct StabilityReport {
  bool stable = false;
  std::vector<StabilityTrial> trials;
};

// Perturbs the candidate shares by a random simplex displacement of
// magnitude epsilon_p (possibly re-introducing extinct strategies), runs the
// dynamics, and reports whether every trajectory is back within epsilon_p/2
// of the candidate by the budget. The candidate must already be steady.
StabilityReport stability_probe(const SymmetricGame& sym,
                                const std::vector<double>& candidate_shares,
                                double epsilon_p, int trials, std::uint64_t seed,
                                const ReplicatorConfig& config = {});

// Trace CSV: step, share per strategy, fitness per strategy.
void write_replicator_trace_csv(std::ostream& out, const SymmetricGame& sym,
                                const ReplicatorTrace& trace);

// Probe CSV: trial, max distance, returned.
void write_stability_report_csv(std::ostream& out, const StabilityReport& report);

std::string replicator_status_line(const SymmetricGame& sym, const ReplicatorStatus& status);

}  // namespace magt
