#include "magt/fictitious_play.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "magt/csv.hpp"
#include "magt/equilibria.hpp"
#include "magt/rng.hpp"

namespace magt {

BeliefState BeliefState::Uniform(const Game& game, int agent, double initial_weight) {
  game.check_player(agent);
  if (initial_weight <= 0.0) {
    throw std::invalid_argument("initial belief weight must be positive");
  }
  BeliefState state;
  state.owner = agent;
  state.weights.resize(static_cast<std::size_t>(game.num_players()));
  for (int j = 0; j < game.num_players(); ++j) {
    if (j == agent) continue;
    state.weights[static_cast<std::size_t>(j)].assign(
        static_cast<std::size_t>(game.num_actions(j)), initial_weight);
  }
  return state;
}

void BeliefState::validate(const Game& game) const {
  game.check_player(owner);
  if (weights.size() != static_cast<std::size_t>(game.num_players())) {
    throw std::invalid_argument("belief state has wrong number of opponent models");
  }
  for (int j = 0; j < game.num_players(); ++j) {
    const auto& w = weights[static_cast<std::size_t>(j)];
    if (j == owner) {
      if (!w.empty()) throw std::invalid_argument("belief state models its own agent");
      continue;
    }
    if (w.size() != static_cast<std::size_t>(game.num_actions(j))) {
      throw std::invalid_argument("belief weight vector size mismatch for opponent " +
                                  game.player_name(j));
    }
    double total = 0.0;
    for (double x : w) {
      if (x < 0.0) throw std::invalid_argument("belief weights must be nonnegative");
      total += x;
    }
    if (total <= 0.0) {
      throw std::invalid_argument("belief state has zero total weight for opponent " +
                                  game.player_name(j));
    }
  }
}

BeliefState update_weights(const BeliefState& beliefs, const PureProfile& observed) {
  if (observed.size() != beliefs.weights.size()) {
    throw std::invalid_argument("observed profile length mismatch");
  }
  BeliefState next = beliefs;
  for (std::size_t j = 0; j < next.weights.size(); ++j) {
    if (static_cast<int>(j) == next.owner) continue;
    auto& w = next.weights[j];
    int a = observed[j];
    if (a < 0 || static_cast<std::size_t>(a) >= w.size()) {
      throw std::invalid_argument("observed action out of range for opponent " +
                                  std::to_string(j));
    }
    w[static_cast<std::size_t>(a)] += 1.0;
  }
  return next;
}

MixedStrategy opponent_distribution(const BeliefState& beliefs, int opponent) {
  if (opponent < 0 || static_cast<std::size_t>(opponent) >= beliefs.weights.size() ||
      opponent == beliefs.owner) {
    throw std::invalid_argument("no model for opponent " + std::to_string(opponent));
  }
  const auto& w = beliefs.weights[static_cast<std::size_t>(opponent)];
  double total = 0.0;
  for (double x : w) total += x;
  if (total <= 0.0) {
    throw std::invalid_argument("zero total weight for opponent " +
                                std::to_string(opponent));
  }
  std::vector<double> probs(w.size());
  for (std::size_t a = 0; a < w.size(); ++a) probs[a] = w[a] / total;
  return MixedStrategy(std::move(probs));
}

PureProfile fp_step(const Game& game, const std::vector<BeliefState>& beliefs,
                    TieRule tie_rule, std::mt19937_64* rng) {
  if (beliefs.size() != static_cast<std::size_t>(game.num_players())) {
    throw std::invalid_argument("one belief state required per agent");
  }
  PureProfile joint(static_cast<std::size_t>(game.num_players()), 0);
  for (int i = 0; i < game.num_players(); ++i) {
    const BeliefState& b = beliefs[static_cast<std::size_t>(i)];
    if (b.owner != i) throw std::invalid_argument("belief state owner mismatch");
    b.validate(game);

    MixedProfile others;
    others.strategies.reserve(static_cast<std::size_t>(game.num_players()));
    for (int j = 0; j < game.num_players(); ++j) {
      if (j == i) {
        others.strategies.push_back(MixedStrategy::Uniform(game.num_actions(j)));
      } else {
        others.strategies.push_back(opponent_distribution(b, j));
      }
    }
    BestResponse br = best_response(game, i, others);
    if (tie_rule == TieRule::LowestIndex || br.actions.size() == 1) {
      joint[static_cast<std::size_t>(i)] = br.actions.front();
    } else {
      if (rng == nullptr) {
        throw std::invalid_argument("uniform-random tie rule needs an RNG");
      }
      std::uniform_int_distribution<std::size_t> pick(0, br.actions.size() - 1);
      joint[static_cast<std::size_t>(i)] = br.actions[pick(*rng)];
    }
  }
  return joint;
}

namespace {

bool beliefs_concentrated(const Game& game, const std::vector<BeliefState>& beliefs,
                          const PureProfile& profile, double threshold) {
  for (int i = 0; i < game.num_players(); ++i) {
    for (int j = 0; j < game.num_players(); ++j) {
      if (j == i) continue;
      MixedStrategy dist = opponent_distribution(beliefs[static_cast<std::size_t>(i)], j);
      if (dist.prob(profile[static_cast<std::size_t>(j)]) < threshold) return false;
    }
  }
  return true;
}

}  // namespace

FpTrace run_fp(const Game& game, std::vector<BeliefState> beliefs, const FpConfig& config) {
  if (config.budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (config.cycle_window < 2) throw std::invalid_argument("cycle window must be >= 2");
  if (config.convergence_window < 2) {
    throw std::invalid_argument("convergence window must be >= 2");
  }
  if (config.belief_concentration < 0.0 || config.belief_concentration > 1.0) {
    throw std::invalid_argument("belief concentration must lie in [0,1]");
  }

  std::mt19937_64 rng = make_rng(config.seed);
  FpTrace trace;
  trace.steps.reserve(static_cast<std::size_t>(config.budget));

  int identical_run = 0;
  for (int t = 0; t < config.budget; ++t) {
    PureProfile joint = fp_step(game, beliefs, config.tie_rule, &rng);

    FpStepRecord record;
    record.t = t;
    record.actions = joint;
    record.beliefs = beliefs;
    std::span<const double> u = game.utility(joint);
    record.payoffs.assign(u.begin(), u.end());
    trace.steps.push_back(std::move(record));

    for (auto& b : beliefs) b = update_weights(b, joint);

    if (trace.steps.size() >= 2 &&
        trace.steps[trace.steps.size() - 2].actions == joint) {
      ++identical_run;
    } else {
      identical_run = 1;
    }
    if (identical_run >= config.convergence_window &&
        beliefs_concentrated(game, beliefs, joint, config.belief_concentration)) {
      trace.status.kind = FpStatus::Kind::Converged;
      trace.status.profile = joint;
      return trace;
    }
  }

  // Budget exhausted: look for a periodic pattern in the trailing window.
  const int window = std::min<int>(config.cycle_window, static_cast<int>(trace.steps.size()));
  if (window >= 2) {
    const std::size_t end = trace.steps.size();
    for (int period = 2; period <= window / 2; ++period) {
      bool periodic = true;
      for (int k = 0; k < window - period; ++k) {
        if (trace.steps[end - static_cast<std::size_t>(window) + static_cast<std::size_t>(k)].actions !=
            trace.steps[end - static_cast<std::size_t>(window) + static_cast<std::size_t>(k + period)].actions) {
          periodic = false;
          break;
        }
      }
      if (periodic) {
        trace.status.kind = FpStatus::Kind::Cycle;
        trace.status.period = period;
        for (int k = 0; k < period; ++k) {
          trace.status.cycle_profiles.push_back(
              trace.steps[end - static_cast<std::size_t>(period) + static_cast<std::size_t>(k)].actions);
        }
        return trace;
      }
    }
  }

  trace.status.kind = FpStatus::Kind::BudgetExhausted;
  return trace;
}

std::string fp_status_line(const Game& game, const FpStatus& status) {
  auto profile_name = [&](const PureProfile& p) {
    std::string s = "(";
    for (int i = 0; i < game.num_players(); ++i) {
      if (i) s += ",";
      s += game.action_name(i, p[static_cast<std::size_t>(i)]);
    }
    s += ")";
    return s;
  };
  switch (status.kind) {
    case FpStatus::Kind::Converged:
      return "converged profile=" + profile_name(status.profile);
    case FpStatus::Kind::Cycle: {
      std::string s = "cycle period=" + std::to_string(status.period) + " profiles=";
      for (std::size_t k = 0; k < status.cycle_profiles.size(); ++k) {
        if (k) s += ",";
        s += profile_name(status.cycle_profiles[k]);
      }
      return s;
    }
    case FpStatus::Kind::BudgetExhausted:
      return "budget_exhausted";
  }
  return "";
}

void write_fp_trace_csv(std::ostream& out, const Game& game, const FpTrace& trace) {
  CsvWriter csv(out);
  std::vector<std::string> header{"t"};
  for (int i = 0; i < game.num_players(); ++i) {
    header.push_back("action_" + game.player_name(i));
  }
  for (int i = 0; i < game.num_players(); ++i) {
    for (int j = 0; j < game.num_players(); ++j) {
      if (j == i) continue;
      for (int a = 0; a < game.num_actions(j); ++a) {
        header.push_back("belief_" + game.player_name(i) + "_" + game.player_name(j) +
                         "_" + game.action_name(j, a));
      }
    }
  }
  for (int i = 0; i < game.num_players(); ++i) {
    header.push_back("payoff_" + game.player_name(i));
  }
  csv.write_row(header);

  for (const FpStepRecord& step : trace.steps) {
    std::vector<std::string> row{std::to_string(step.t)};
    for (int i = 0; i < game.num_players(); ++i) {
      row.push_back(game.action_name(i, step.actions[static_cast<std::size_t>(i)]));
    }
    for (int i = 0; i < game.num_players(); ++i) {
      for (int j = 0; j < game.num_players(); ++j) {
        if (j == i) continue;
        MixedStrategy dist =
            opponent_distribution(step.beliefs[static_cast<std::size_t>(i)], j);
        for (int a = 0; a < game.num_actions(j); ++a) {
          row.push_back(CsvWriter::format(dist.prob(a)));
        }
      }
    }
    for (double u : step.payoffs) row.push_back(CsvWriter::format(u));
    csv.write_row(row);
  }

  std::vector<std::string> footer(header.size());
  footer[0] = "#status";
  footer[1] = fp_status_line(game, trace.status);
  csv.write_row(footer);
}

}  // namespace magt
