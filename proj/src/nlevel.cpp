#include "magt/nlevel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "magt/csv.hpp"
#include "magt/errors.hpp"
#include "magt/rng.hpp"

namespace magt {

namespace {

bool explore(double epsilon, std::mt19937_64& rng) {
  if (epsilon <= 0.0) return false;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return unit(rng) < epsilon;
}

int uniform_action(int num_actions, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, num_actions - 1);
  return pick(rng);
}

// Opponent action counts from the public history, excluding `player`'s own
// column. counts[j] is empty for j == player.
std::vector<std::vector<double>> opponent_counts(int num_players,
                                                 const std::vector<int>& action_counts,
                                                 const std::vector<PureProfile>& history,
                                                 int player) {
  std::vector<std::vector<double>> counts(static_cast<std::size_t>(num_players));
  for (int j = 0; j < num_players; ++j) {
    if (j == player) continue;
    counts[static_cast<std::size_t>(j)].assign(
        static_cast<std::size_t>(action_counts[static_cast<std::size_t>(j)]), 0.0);
  }
  for (const PureProfile& profile : history) {
    for (int j = 0; j < num_players; ++j) {
      if (j == player) continue;
      counts[static_cast<std::size_t>(j)][static_cast<std::size_t>(
          profile[static_cast<std::size_t>(j)])] += 1.0;
    }
  }
  return counts;
}

std::vector<double> to_distribution(const std::vector<double>& counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  if (total <= 0.0) {
    return std::vector<double>(counts.size(), 1.0 / static_cast<double>(counts.size()));
  }
  std::vector<double> probs(counts.size());
  for (std::size_t a = 0; a < counts.size(); ++a) probs[a] = counts[a] / total;
  return probs;
}

// Deterministic best response of `player` against independent opponent
// distributions; ties to the lowest index. Counts payoff reads in `stats`.
int greedy_response(const Game& game, int player,
                    const std::vector<std::vector<double>>& opponent_probs,
                    DecisionStats* stats) {
  const int n = game.num_players();
  std::vector<double> values(static_cast<std::size_t>(game.num_actions(player)), 0.0);

  PureProfile profile(static_cast<std::size_t>(n), 0);
  std::vector<int> cursor(static_cast<std::size_t>(n), 0);
  while (true) {
    double weight = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == player) continue;
      profile[static_cast<std::size_t>(j)] = cursor[static_cast<std::size_t>(j)];
      weight *= opponent_probs[static_cast<std::size_t>(j)]
                              [static_cast<std::size_t>(cursor[static_cast<std::size_t>(j)])];
    }
    if (weight > 0.0) {
      for (int a = 0; a < game.num_actions(player); ++a) {
        profile[static_cast<std::size_t>(player)] = a;
        values[static_cast<std::size_t>(a)] += weight * game.utility(profile, player);
        if (stats) ++stats->payoff_lookups;
      }
    }
    int j = n - 1;
    for (; j >= 0; --j) {
      if (j == player) continue;
      auto& c = cursor[static_cast<std::size_t>(j)];
      if (++c < game.num_actions(j)) break;
      c = 0;
    }
    if (j < 0) break;
  }

  int best = 0;
  for (int a = 1; a < game.num_actions(player); ++a) {
    if (values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(best)] + 1e-9) {
      best = a;
    }
  }
  return best;
}

}  // namespace

int act_level0(const ActionRewardHistory& history, double epsilon, std::mt19937_64& rng,
               DecisionStats* stats) {
  (void)stats;  // a 0-level agent reads no payoff tables
  const int n = history.num_actions();
  if (n < 1) throw std::invalid_argument("level-0 agent needs at least one action");
  if (explore(epsilon, rng)) return uniform_action(n, rng);

  int best = -1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a) {
    // Unvisited actions rank above everything: forced initial exploration.
    double value = history.count[static_cast<std::size_t>(a)] == 0
                       ? std::numeric_limits<double>::infinity()
                       : history.sum[static_cast<std::size_t>(a)] /
                             history.count[static_cast<std::size_t>(a)];
    if (value > best_value) {
      best_value = value;
      best = a;
    }
  }
  return best;
}

int act_level1(const Game& game, int player, const std::vector<PureProfile>& history,
               double epsilon, std::mt19937_64& rng, DecisionStats* stats) {
  game.check_player(player);
  if (explore(epsilon, rng)) return uniform_action(game.num_actions(player), rng);

  std::vector<int> action_counts(static_cast<std::size_t>(game.num_players()));
  for (int j = 0; j < game.num_players(); ++j) {
    action_counts[static_cast<std::size_t>(j)] = game.num_actions(j);
  }
  auto counts = opponent_counts(game.num_players(), action_counts, history, player);
  std::vector<std::vector<double>> probs(counts.size());
  for (int j = 0; j < game.num_players(); ++j) {
    if (j == player) continue;
    probs[static_cast<std::size_t>(j)] = to_distribution(counts[static_cast<std::size_t>(j)]);
  }
  return greedy_response(game, player, probs, stats);
}

int act_level2(const Game& knowledge, int player, const std::vector<PureProfile>& history,
               double epsilon, std::mt19937_64& rng, DecisionStats* stats) {
  knowledge.check_player(player);
  if (explore(epsilon, rng)) return uniform_action(knowledge.num_actions(player), rng);

  std::vector<int> action_counts(static_cast<std::size_t>(knowledge.num_players()));
  for (int j = 0; j < knowledge.num_players(); ++j) {
    action_counts[static_cast<std::size_t>(j)] = knowledge.num_actions(j);
  }

  // Each opponent j is simulated as a deterministic 1-level agent holding
  // the frequency models j would have built from the same public history.
  std::vector<std::vector<double>> predicted(static_cast<std::size_t>(knowledge.num_players()));
  for (int j = 0; j < knowledge.num_players(); ++j) {
    if (j == player) continue;
    auto counts_j = opponent_counts(knowledge.num_players(), action_counts, history, j);
    std::vector<std::vector<double>> probs_j(counts_j.size());
    for (int k = 0; k < knowledge.num_players(); ++k) {
      if (k == j) continue;
      probs_j[static_cast<std::size_t>(k)] =
          to_distribution(counts_j[static_cast<std::size_t>(k)]);
    }
    int action_j = greedy_response(knowledge, j, probs_j, stats);
    std::vector<double> point(static_cast<std::size_t>(knowledge.num_actions(j)), 0.0);
    point[static_cast<std::size_t>(action_j)] = 1.0;
    predicted[static_cast<std::size_t>(j)] = std::move(point);
  }
  return greedy_response(knowledge, player, predicted, stats);
}

Game assumed_game(const Game& game, int player, KnowledgeMode mode) {
  game.check_player(player);
  if (mode == KnowledgeMode::TrueValues) return game;

  // Mirror: opponent j's payoff at s is the agent's own payoff with the two
  // roles swapped. Requires matching action counts.
  for (int j = 0; j < game.num_players(); ++j) {
    if (game.num_actions(j) != game.num_actions(player)) {
      throw ConfigError("assume-symmetric knowledge needs equal action counts");
    }
  }
  std::vector<double> payoffs(game.num_profiles() * static_cast<std::size_t>(game.num_players()));
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
    PureProfile profile = game.profile_at(idx);
    for (int j = 0; j < game.num_players(); ++j) {
      double u;
      if (j == player) {
        u = game.utility(profile, player);
      } else {
        PureProfile swapped = profile;
        std::swap(swapped[static_cast<std::size_t>(player)],
                  swapped[static_cast<std::size_t>(j)]);
        u = game.utility(swapped, player);
      }
      payoffs[idx * static_cast<std::size_t>(game.num_players()) +
              static_cast<std::size_t>(j)] = u;
    }
  }
  std::vector<std::vector<std::string>> actions;
  for (int j = 0; j < game.num_players(); ++j) actions.push_back(game.action_names(j));
  return Game(game.player_names(), std::move(actions), std::move(payoffs));
}

namespace {

std::uint64_t agent_seed(std::uint64_t master, std::size_t index, const AgentSpec& spec) {
  return splitmix64(split_seed(master, index) ^ spec.seed);
}

void finalize_trace(SocietyTrace& trace) {
  const std::size_t agents = trace.roster.size();
  trace.cumulative_utility.assign(agents, 0.0);
  trace.mean_utility.assign(agents, 0.0);
  trace.windowed_mean_utility.assign(agents, 0.0);
  trace.window = std::min<int>(100, trace.steps);
  for (const auto& step_payoffs : trace.payoffs) {
    for (std::size_t i = 0; i < agents; ++i) {
      trace.cumulative_utility[i] += step_payoffs[i];
    }
  }
  if (trace.steps > 0) {
    for (std::size_t i = 0; i < agents; ++i) {
      trace.mean_utility[i] = trace.cumulative_utility[i] / trace.steps;
    }
    for (int t = trace.steps - trace.window; t < trace.steps; ++t) {
      for (std::size_t i = 0; i < agents; ++i) {
        trace.windowed_mean_utility[i] += trace.payoffs[static_cast<std::size_t>(t)][i];
      }
    }
    if (trace.window > 0) {
      for (std::size_t i = 0; i < agents; ++i) {
        trace.windowed_mean_utility[i] /= trace.window;
      }
    }
  }
}

}  // namespace

SocietyTrace run_society(const Game& game, const std::vector<AgentSpec>& roster,
                         int steps, std::uint64_t seed) {
  if (roster.size() != static_cast<std::size_t>(game.num_players())) {
    throw ConfigError("roster size " + std::to_string(roster.size()) +
                      " does not match player count " + std::to_string(game.num_players()));
  }
  if (steps < 1) throw ConfigError("society needs steps >= 1");

  const std::size_t agents = roster.size();
  SocietyTrace trace;
  trace.roster = roster;
  trace.steps = steps;
  trace.seed = seed;
  trace.matching = false;
  trace.stats.assign(agents, DecisionStats{});

  std::vector<std::mt19937_64> rngs;
  std::vector<ActionRewardHistory> rewards;
  std::vector<Game> knowledge;
  rngs.reserve(agents);
  rewards.reserve(agents);
  knowledge.reserve(agents);
  for (std::size_t i = 0; i < agents; ++i) {
    rngs.push_back(make_rng(agent_seed(seed, i, roster[i])));
    rewards.emplace_back(game.num_actions(static_cast<int>(i)));
    knowledge.push_back(roster[i].level == AgentLevel::Two
                            ? assumed_game(game, static_cast<int>(i), roster[i].knowledge)
                            : game);
  }

  std::vector<PureProfile> history;
  history.reserve(static_cast<std::size_t>(steps));

  for (int t = 0; t < steps; ++t) {
    PureProfile joint(agents, 0);
    for (std::size_t i = 0; i < agents; ++i) {
      const AgentSpec& spec = roster[i];
      int action = 0;
      switch (spec.level) {
        case AgentLevel::Zero:
          action = act_level0(rewards[i], spec.epsilon, rngs[i], &trace.stats[i]);
          break;
        case AgentLevel::One:
          action = act_level1(game, static_cast<int>(i), history, spec.epsilon, rngs[i],
                              &trace.stats[i]);
          break;
        case AgentLevel::Two:
          action = act_level2(knowledge[i], static_cast<int>(i), history, spec.epsilon,
                              rngs[i], &trace.stats[i]);
          break;
      }
      joint[i] = action;
    }

    std::span<const double> u = game.utility(joint);
    trace.actions.push_back(joint);
    trace.payoffs.emplace_back(u.begin(), u.end());
    for (std::size_t i = 0; i < agents; ++i) rewards[i].add(joint[i], u[i]);
    history.push_back(joint);
  }

  finalize_trace(trace);
  return trace;
}

namespace {

// Population-model decision rules for the matching society. The public
// history holds every agent's action per step; co-players are modeled in
// aggregate because the next partner is drawn at random.

std::vector<double> population_distribution(const std::vector<std::vector<int>>& actions,
                                            std::size_t viewer, int num_actions) {
  std::vector<double> counts(static_cast<std::size_t>(num_actions), 0.0);
  for (const auto& step : actions) {
    for (std::size_t j = 0; j < step.size(); ++j) {
      if (j == viewer) continue;
      counts[static_cast<std::size_t>(step[j])] += 1.0;
    }
  }
  return to_distribution(counts);
}

int greedy_symmetric(const SymmetricGame& sym, const std::vector<double>& partner_probs,
                     DecisionStats* stats) {
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < sym.num_actions(); ++a) {
    double value = 0.0;
    for (int b = 0; b < sym.num_actions(); ++b) {
      if (partner_probs[static_cast<std::size_t>(b)] == 0.0) continue;
      value += partner_probs[static_cast<std::size_t>(b)] * sym.payoff(a, b);
      if (stats) ++stats->payoff_lookups;
    }
    if (value > best_value + 1e-9) {
      best_value = value;
      best = a;
    }
  }
  return best;
}

}  // namespace

SocietyTrace run_society_matching(const SymmetricGame& sym,
                                  const std::vector<AgentSpec>& roster, int steps,
                                  std::uint64_t seed) {
  if (roster.size() < 2 || roster.size() % 2 != 0) {
    throw ConfigError("matching mode needs an even roster of >= 2 agents");
  }
  if (steps < 1) throw ConfigError("society needs steps >= 1");

  const std::size_t agents = roster.size();
  SocietyTrace trace;
  trace.roster = roster;
  trace.steps = steps;
  trace.seed = seed;
  trace.matching = true;
  trace.stats.assign(agents, DecisionStats{});

  std::mt19937_64 match_rng = make_rng(split_seed(seed, 0xfeedULL));
  std::vector<std::mt19937_64> rngs;
  std::vector<ActionRewardHistory> rewards;
  rngs.reserve(agents);
  rewards.reserve(agents);
  for (std::size_t i = 0; i < agents; ++i) {
    rngs.push_back(make_rng(agent_seed(seed, i, roster[i])));
    rewards.emplace_back(sym.num_actions());
  }

  std::vector<std::vector<int>> public_actions;  // [step][agent]

  for (int t = 0; t < steps; ++t) {
    // Everyone commits an action against the anonymous population, then
    // random pairs resolve payoffs.
    std::vector<int> chosen(agents, 0);
    for (std::size_t i = 0; i < agents; ++i) {
      const AgentSpec& spec = roster[i];
      switch (spec.level) {
        case AgentLevel::Zero:
          chosen[i] = act_level0(rewards[i], spec.epsilon, rngs[i], &trace.stats[i]);
          break;
        case AgentLevel::One: {
          if (explore(spec.epsilon, rngs[i])) {
            chosen[i] = uniform_action(sym.num_actions(), rngs[i]);
          } else {
            chosen[i] = greedy_symmetric(
                sym, population_distribution(public_actions, i, sym.num_actions()),
                &trace.stats[i]);
          }
          break;
        }
        case AgentLevel::Two: {
          if (explore(spec.epsilon, rngs[i])) {
            chosen[i] = uniform_action(sym.num_actions(), rngs[i]);
            break;
          }
          // Partner is uniform over the other agents; predict each one as a
          // deterministic 1-level population modeler.
          std::vector<double> partner_probs(static_cast<std::size_t>(sym.num_actions()), 0.0);
          for (std::size_t j = 0; j < agents; ++j) {
            if (j == i) continue;
            int predicted = greedy_symmetric(
                sym, population_distribution(public_actions, j, sym.num_actions()),
                &trace.stats[i]);
            partner_probs[static_cast<std::size_t>(predicted)] +=
                1.0 / static_cast<double>(agents - 1);
          }
          chosen[i] = greedy_symmetric(sym, partner_probs, &trace.stats[i]);
          break;
        }
      }
    }

    std::vector<std::size_t> order(agents);
    for (std::size_t i = 0; i < agents; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), match_rng);

    std::vector<int> partner(agents, -1);
    std::vector<double> payoffs(agents, 0.0);
    for (std::size_t k = 0; k + 1 < agents; k += 2) {
      std::size_t a = order[k], b = order[k + 1];
      partner[a] = static_cast<int>(b);
      partner[b] = static_cast<int>(a);
      payoffs[a] = sym.payoff(chosen[a], chosen[b]);
      payoffs[b] = sym.payoff(chosen[b], chosen[a]);
    }

    trace.actions.push_back(PureProfile(chosen.begin(), chosen.end()));
    trace.payoffs.push_back(payoffs);
    trace.partners.push_back(partner);
    for (std::size_t i = 0; i < agents; ++i) rewards[i].add(chosen[i], payoffs[i]);
    public_actions.push_back(chosen);
  }

  finalize_trace(trace);
  return trace;
}

void write_society_trace_csv(std::ostream& out,
                             const std::vector<std::vector<std::string>>& action_names,
                             const SocietyTrace& trace) {
  CsvWriter csv(out);
  const std::size_t agents = trace.roster.size();
  std::vector<std::string> header{"step"};
  for (std::size_t i = 0; i < agents; ++i) header.push_back("action_agent" + std::to_string(i));
  for (std::size_t i = 0; i < agents; ++i) header.push_back("reward_agent" + std::to_string(i));
  if (trace.matching) {
    for (std::size_t i = 0; i < agents; ++i) header.push_back("partner_agent" + std::to_string(i));
  }
  csv.write_row(header);

  for (int t = 0; t < trace.steps; ++t) {
    std::vector<std::string> row{std::to_string(t)};
    for (std::size_t i = 0; i < agents; ++i) {
      int a = trace.actions[static_cast<std::size_t>(t)][i];
      row.push_back(action_names[i][static_cast<std::size_t>(a)]);
    }
    for (std::size_t i = 0; i < agents; ++i) {
      row.push_back(CsvWriter::format(trace.payoffs[static_cast<std::size_t>(t)][i]));
    }
    if (trace.matching) {
      for (std::size_t i = 0; i < agents; ++i) {
        row.push_back(std::to_string(trace.partners[static_cast<std::size_t>(t)][i]));
      }
    }
    csv.write_row(row);
  }
}

void write_society_summary_csv(std::ostream& out, const SocietyTrace& trace) {
  CsvWriter csv(out);
  csv.write_row({"agent", "level", "mean_utility", "variance"});
  const std::size_t agents = trace.roster.size();
  for (std::size_t i = 0; i < agents; ++i) {
    double mean = trace.mean_utility[i];
    double var = 0.0;
    for (int t = 0; t < trace.steps; ++t) {
      double d = trace.payoffs[static_cast<std::size_t>(t)][i] - mean;
      var += d * d;
    }
    if (trace.steps > 1) var /= trace.steps - 1;
    csv.write_row({std::to_string(i),
                   std::to_string(static_cast<int>(trace.roster[i].level)),
                   CsvWriter::format(mean), CsvWriter::format(var)});
  }
}

}  // namespace magt
