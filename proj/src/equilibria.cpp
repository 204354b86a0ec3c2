#include "magt/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "magt/errors.hpp"
#include "magt/linear.hpp"

namespace magt {

namespace {

constexpr double kTieTol = 1e-9;

// All pure profiles of the opponents of `player`, restricted to `surviving`,
// as full-length profiles with the player's own slot left at 0.
std::vector<PureProfile> opponent_profiles(const Game& game, int player,
                                           const std::vector<std::vector<int>>& surviving) {
  std::vector<PureProfile> out;
  PureProfile current(static_cast<std::size_t>(game.num_players()), 0);
  std::vector<std::size_t> cursor(static_cast<std::size_t>(game.num_players()), 0);
  while (true) {
    for (int j = 0; j < game.num_players(); ++j) {
      if (j == player) continue;
      current[static_cast<std::size_t>(j)] =
          surviving[static_cast<std::size_t>(j)][cursor[static_cast<std::size_t>(j)]];
    }
    out.push_back(current);
    int j = game.num_players() - 1;
    for (; j >= 0; --j) {
      if (j == player) continue;
      auto& c = cursor[static_cast<std::size_t>(j)];
      if (++c < surviving[static_cast<std::size_t>(j)].size()) break;
      c = 0;
    }
    if (j < 0) break;
  }
  return out;
}

std::vector<std::vector<int>> full_surviving(const Game& game) {
  std::vector<std::vector<int>> surviving(static_cast<std::size_t>(game.num_players()));
  for (int i = 0; i < game.num_players(); ++i) {
    for (int a = 0; a < game.num_actions(i); ++a) {
      surviving[static_cast<std::size_t>(i)].push_back(a);
    }
  }
  return surviving;
}

}  // namespace

std::optional<MixedStrategy> is_dominated(const Game& game, int player, int action,
                                          DominanceMode mode,
                                          const std::vector<std::vector<int>>& surviving) {
  game.check_player(player);
  const auto& own = surviving[static_cast<std::size_t>(player)];
  if (own.empty()) throw std::invalid_argument("empty surviving set for player");
  if (std::find(own.begin(), own.end(), action) == own.end()) {
    throw std::invalid_argument("action not in surviving set");
  }

  std::vector<int> others_actions;
  for (int a : own) {
    if (a != action) others_actions.push_back(a);
  }
  if (others_actions.empty()) return std::nullopt;

  const std::vector<PureProfile> opponents = opponent_profiles(game, player, surviving);
  const int k = static_cast<int>(others_actions.size());
  const int p = static_cast<int>(opponents.size());

  // gap[k][p]: payoff advantage of candidate dominator row k over `action`
  // against opponent profile p.
  std::vector<double> gap(static_cast<std::size_t>(k) * p, 0.0);
  double max_abs = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < p; ++j) {
      PureProfile prof = opponents[static_cast<std::size_t>(j)];
      prof[static_cast<std::size_t>(player)] = others_actions[static_cast<std::size_t>(i)];
      double u_alt = game.utility(prof, player);
      prof[static_cast<std::size_t>(player)] = action;
      double u_act = game.utility(prof, player);
      double g = u_alt - u_act;
      gap[static_cast<std::size_t>(i) * p + static_cast<std::size_t>(j)] = g;
      max_abs = std::max(max_abs, std::abs(g));
    }
  }

  std::vector<double> sigma;
  if (mode == DominanceMode::Strict) {
    // max-min gap over the simplex == value of the zero-sum game with matrix
    // `gap`. Shift positive, then solve the standard dual LP:
    //   max sum(y)  s.t.  gap_shifted^T has rows: sum_j gap'[i][j] y_j <= 1.
    // Value = 1/sum(y*); the mixing weights are the constraint duals.
    const double shift = max_abs + 1.0;
    std::vector<double> a(static_cast<std::size_t>(k) * p);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < p; ++j) {
        a[static_cast<std::size_t>(i) * p + static_cast<std::size_t>(j)] =
            gap[static_cast<std::size_t>(i) * p + static_cast<std::size_t>(j)] + shift;
      }
    }
    SimplexResult lp = simplex_max(std::vector<double>(static_cast<std::size_t>(p), 1.0),
                                   a, std::vector<double>(static_cast<std::size_t>(k), 1.0),
                                   k, p);
    if (lp.status != SimplexResult::Status::Optimal || lp.value <= 0.0) return std::nullopt;
    const double value = 1.0 / lp.value - shift;
    if (value <= kTieTol) return std::nullopt;
    double total = 0.0;
    for (double d : lp.dual) total += d;
    if (total <= 0.0) return std::nullopt;
    sigma.assign(lp.dual.begin(), lp.dual.end());
    for (double& s : sigma) s /= total;
  } else {
    // Weak dominance: find x >= 0 in the cone {gap^T x >= 0} maximizing the
    // total gap, with sum(x) <= 1. A positive optimum yields a mixture with
    // all gaps >= 0 and at least one strictly positive.
    const int n = k;
    const int m = p + 1;
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < p; ++j) {
        c[static_cast<std::size_t>(i)] +=
            gap[static_cast<std::size_t>(i) * p + static_cast<std::size_t>(j)];
      }
    }
    std::vector<double> a(static_cast<std::size_t>(m) * n, 0.0);
    for (int j = 0; j < p; ++j) {
      for (int i = 0; i < k; ++i) {
        a[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)] =
            -gap[static_cast<std::size_t>(i) * p + static_cast<std::size_t>(j)];
      }
    }
    for (int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(p) * n + static_cast<std::size_t>(i)] = 1.0;
    }
    std::vector<double> b(static_cast<std::size_t>(m), 0.0);
    b[static_cast<std::size_t>(p)] = 1.0;
    SimplexResult lp = simplex_max(c, a, b, m, n);
    if (lp.status != SimplexResult::Status::Optimal || lp.value <= kTieTol) {
      return std::nullopt;
    }
    double total = 0.0;
    for (double x : lp.x) total += x;
    if (total <= 0.0) return std::nullopt;
    sigma.assign(lp.x.begin(), lp.x.end());
    for (double& s : sigma) s /= total;
  }

  std::vector<double> probs(static_cast<std::size_t>(game.num_actions(player)), 0.0);
  for (int i = 0; i < k; ++i) {
    probs[static_cast<std::size_t>(others_actions[static_cast<std::size_t>(i)])] =
        std::max(0.0, sigma[static_cast<std::size_t>(i)]);
  }
  double total = 0.0;
  for (double q : probs) total += q;
  for (double& q : probs) q /= total;
  return MixedStrategy(std::move(probs));
}

ReducedGame iterated_dominance(const Game& game, DominanceMode mode) {
  ReducedGame result;
  result.original = &game;
  result.mode = mode;
  result.order_dependent = (mode == DominanceMode::Weak);
  result.surviving = full_surviving(game);

  for (int round = 0;; ++round) {
    std::vector<EliminationRecord> removed;
    for (int i = 0; i < game.num_players(); ++i) {
      if (result.surviving[static_cast<std::size_t>(i)].size() <= 1) continue;
      for (int a : result.surviving[static_cast<std::size_t>(i)]) {
        auto dominator = is_dominated(game, i, a, mode, result.surviving);
        if (dominator) {
          removed.push_back({i, a, std::move(*dominator), mode, round});
        }
      }
    }
    if (removed.empty()) break;
    for (const auto& rec : removed) {
      auto& surv = result.surviving[static_cast<std::size_t>(rec.player)];
      surv.erase(std::remove(surv.begin(), surv.end(), rec.action), surv.end());
      result.log.push_back(rec);
    }
    for (const auto& surv : result.surviving) {
      if (surv.empty()) {
        throw std::logic_error("iterated dominance emptied a player's action set");
      }
    }
  }
  return result;
}

BestResponse best_response(const Game& game, int player, const MixedProfile& others) {
  game.check_player(player);
  const auto surviving = full_surviving(game);
  const std::vector<PureProfile> opponents = opponent_profiles(game, player, surviving);

  BestResponse br;
  std::vector<double> values(static_cast<std::size_t>(game.num_actions(player)), 0.0);
  for (const PureProfile& base : opponents) {
    double weight = 1.0;
    for (int j = 0; j < game.num_players() && weight != 0.0; ++j) {
      if (j == player) continue;
      weight *= others.at(j).prob(base[static_cast<std::size_t>(j)]);
    }
    if (weight == 0.0) continue;
    PureProfile prof = base;
    for (int a = 0; a < game.num_actions(player); ++a) {
      prof[static_cast<std::size_t>(player)] = a;
      values[static_cast<std::size_t>(a)] += weight * game.utility(prof, player);
    }
  }

  double best = values[0];
  for (double v : values) best = std::max(best, v);
  for (int a = 0; a < game.num_actions(player); ++a) {
    if (values[static_cast<std::size_t>(a)] >= best - kTieTol) br.actions.push_back(a);
  }
  br.value = best;
  return br;
}

NashResult verify_nash(const Game& game, const MixedProfile& profile, double tolerance) {
  if (tolerance < 0.0) throw std::invalid_argument("tolerance must be >= 0");
  NashResult result{profile, false, true, true, 0.0};
  for (int i = 0; i < game.num_players(); ++i) {
    BestResponse br = best_response(game, i, profile);
    double eu = expected_utility(game, profile, i);
    result.regret = std::max(result.regret, br.value - eu);

    if (!profile.at(i).is_pure()) result.pure = false;
    std::vector<int> supp = profile.at(i).support();
    bool strict_i = br.actions.size() == 1 && supp.size() == 1 && br.actions[0] == supp[0];
    if (!strict_i) result.strict = false;
  }
  result.regret = std::max(result.regret, 0.0);
  result.equilibrium = result.regret <= tolerance;
  if (!result.equilibrium) result.strict = false;
  return result;
}

namespace {

// Mix over `support` (for the opponent of `player`) that makes `player`
// indifferent across `own_support`, or nullopt. Full-length probability
// vector for the opponent.
std::optional<std::vector<double>> indifference_mix(const Game& game, int player,
                                                    const std::vector<int>& own_support,
                                                    const std::vector<int>& opp_support) {
  const int opponent = 1 - player;
  const int rows = static_cast<int>(own_support.size());
  const int cols = static_cast<int>(opp_support.size());

  auto u = [&](int own_action, int opp_action) {
    PureProfile prof(2);
    prof[static_cast<std::size_t>(player)] = own_action;
    prof[static_cast<std::size_t>(opponent)] = opp_action;
    return game.utility(prof, player);
  };

  // (rows-1) indifference equations plus normalization.
  const int m = rows;
  std::vector<double> a(static_cast<std::size_t>(m) * cols, 0.0);
  std::vector<double> b(static_cast<std::size_t>(m), 0.0);
  for (int r = 1; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      a[static_cast<std::size_t>(r - 1) * cols + static_cast<std::size_t>(c)] =
          u(own_support[0], opp_support[static_cast<std::size_t>(c)]) -
          u(own_support[static_cast<std::size_t>(r)], opp_support[static_cast<std::size_t>(c)]);
    }
  }
  for (int c = 0; c < cols; ++c) {
    a[static_cast<std::size_t>(m - 1) * cols + static_cast<std::size_t>(c)] = 1.0;
  }
  b[static_cast<std::size_t>(m - 1)] = 1.0;

  std::optional<std::vector<double>> x;
  if (m == cols) {
    x = solve_linear(a, b, cols);
  } else {
    x = solve_least_squares(a, b, m, cols);
  }
  if (!x) return std::nullopt;

  // Residual check (catches inconsistent least-squares systems).
  for (int r = 0; r < m; ++r) {
    double lhs = 0.0;
    for (int c = 0; c < cols; ++c) {
      lhs += a[static_cast<std::size_t>(r) * cols + static_cast<std::size_t>(c)] *
             (*x)[static_cast<std::size_t>(c)];
    }
    if (std::abs(lhs - b[static_cast<std::size_t>(r)]) > 1e-9) return std::nullopt;
  }

  std::vector<double> probs(static_cast<std::size_t>(game.num_actions(opponent)), 0.0);
  for (int c = 0; c < cols; ++c) {
    double q = (*x)[static_cast<std::size_t>(c)];
    if (q < -kTieTol) return std::nullopt;
    probs[static_cast<std::size_t>(opp_support[static_cast<std::size_t>(c)])] =
        std::max(q, 0.0);
  }
  double total = 0.0;
  for (double q : probs) total += q;
  if (total <= 0.0) return std::nullopt;
  for (double& q : probs) q /= total;
  return probs;
}

std::vector<std::vector<int>> all_supports(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int a = 0; a < n; ++a) {
      if (mask & (1u << a)) s.push_back(a);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

}  // namespace

std::vector<NashResult> enumerate_nash_2p(const Game& game, int action_cap) {
  if (game.num_players() != 2) {
    throw UnsupportedError("Nash enumeration supports exactly 2 players, got " +
                           std::to_string(game.num_players()));
  }
  if (game.num_actions(0) > action_cap || game.num_actions(1) > action_cap) {
    throw UnsupportedError("action count exceeds enumeration cap of " +
                           std::to_string(action_cap));
  }

  const auto supports0 = all_supports(game.num_actions(0));
  const auto supports1 = all_supports(game.num_actions(1));

  std::vector<NashResult> found;
  auto duplicate = [&](const MixedProfile& p) {
    for (const NashResult& r : found) {
      double dist = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (int a = 0; a < game.num_actions(i); ++a) {
          dist = std::max(dist, std::abs(r.profile.at(i).prob(a) - p.at(i).prob(a)));
        }
      }
      if (dist < 1e-7) return true;
    }
    return false;
  };

  for (const auto& s0 : supports0) {
    for (const auto& s1 : supports1) {
      // Player 1's mix x (over s0) solves player 2's indifference on s1;
      // player 2's mix y (over s1) solves player 1's indifference on s0.
      auto x = indifference_mix(game, 1, s1, s0);
      if (!x) continue;
      auto y = indifference_mix(game, 0, s0, s1);
      if (!y) continue;

      MixedProfile profile{{MixedStrategy(*x), MixedStrategy(*y)}};
      // Support consistency: the solved mixes must not have drifted off the
      // candidate supports.
      bool support_ok = true;
      for (int a = 0; a < game.num_actions(0) && support_ok; ++a) {
        bool in_support = std::find(s0.begin(), s0.end(), a) != s0.end();
        if (!in_support && profile.at(0).prob(a) > kTieTol) support_ok = false;
      }
      for (int a = 0; a < game.num_actions(1) && support_ok; ++a) {
        bool in_support = std::find(s1.begin(), s1.end(), a) != s1.end();
        if (!in_support && profile.at(1).prob(a) > kTieTol) support_ok = false;
      }
      if (!support_ok) continue;

      NashResult result = verify_nash(game, profile, kTieTol);
      if (!result.equilibrium) continue;
      if (!duplicate(profile)) found.push_back(std::move(result));
    }
  }
  return found;
}

double expected_payoff(const SymmetricGame& sym, const MixedStrategy& own,
                       const MixedStrategy& other) {
  if (own.num_actions() != sym.num_actions() || other.num_actions() != sym.num_actions()) {
    throw std::invalid_argument("strategy size does not match symmetric game");
  }
  double total = 0.0;
  for (int s = 0; s < sym.num_actions(); ++s) {
    if (own.prob(s) == 0.0) continue;
    double inner = 0.0;
    for (int t = 0; t < sym.num_actions(); ++t) {
      inner += other.prob(t) * sym.payoff(s, t);
    }
    total += own.prob(s) * inner;
  }
  return total;
}

namespace {

// Enumerate compositions of `resolution` into `parts` nonnegative integers,
// lexicographically; calls fn with the shares vector.
template <typename Fn>
void for_each_grid_point(int parts, int resolution, Fn&& fn) {
  std::vector<int> counts(static_cast<std::size_t>(parts), 0);
  std::vector<double> shares(static_cast<std::size_t>(parts), 0.0);
  // Iterative odometer over the first parts-1 coordinates.
  std::vector<int> cursor(static_cast<std::size_t>(parts - 1), 0);
  while (true) {
    int used = 0;
    bool valid = true;
    for (std::size_t i = 0; i < cursor.size(); ++i) {
      used += cursor[i];
      if (used > resolution) { valid = false; break; }
    }
    if (valid) {
      for (std::size_t i = 0; i < cursor.size(); ++i) {
        counts[i] = cursor[i];
      }
      counts[static_cast<std::size_t>(parts - 1)] = resolution - used;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        shares[i] = static_cast<double>(counts[i]) / resolution;
      }
      fn(shares);
    }
    if (cursor.empty()) return;
    std::size_t j = cursor.size();
    while (j > 0) {
      --j;
      if (++cursor[j] <= resolution) break;
      cursor[j] = 0;
      if (j == 0) return;
    }
  }
}

}  // namespace

EssVerdict check_ess(const SymmetricGame& sym, const MixedStrategy& candidate,
                     int resolution) {
  if (resolution < 1) throw std::invalid_argument("invader grid resolution must be >= 1");
  if (candidate.num_actions() != sym.num_actions()) {
    throw std::invalid_argument("candidate strategy size does not match game");
  }

  EssVerdict verdict{candidate, false, false, std::nullopt};
  const double self_payoff = expected_payoff(sym, candidate, candidate);

  // Nash check: the candidate must be a best response to itself.
  verdict.is_nash = true;
  for (int s = 0; s < sym.num_actions(); ++s) {
    MixedStrategy pure = MixedStrategy::Pure(s, sym.num_actions());
    if (expected_payoff(sym, pure, candidate) > self_payoff + kTieTol) {
      verdict.is_nash = false;
      verdict.witness = pure;
      break;
    }
  }
  if (!verdict.is_nash) return verdict;

  auto beats_invader = [&](const MixedStrategy& invader) {
    double invader_vs_candidate = expected_payoff(sym, invader, candidate);
    double diff = self_payoff - invader_vs_candidate;
    if (diff > kTieTol) return true;
    if (diff < -kTieTol) return false;  // cannot happen once is_nash holds
    double candidate_vs_invader = expected_payoff(sym, candidate, invader);
    double invader_vs_invader = expected_payoff(sym, invader, invader);
    return candidate_vs_invader > invader_vs_invader + kTieTol;
  };

  auto same_as_candidate = [&](const MixedStrategy& other) {
    for (int s = 0; s < sym.num_actions(); ++s) {
      if (std::abs(other.prob(s) - candidate.prob(s)) > kTieTol) return false;
    }
    return true;
  };

  // Pure invaders first, then the simplex grid.
  for (int s = 0; s < sym.num_actions(); ++s) {
    MixedStrategy invader = MixedStrategy::Pure(s, sym.num_actions());
    if (same_as_candidate(invader)) continue;
    if (!beats_invader(invader)) {
      verdict.witness = invader;
      return verdict;
    }
  }
  bool defeated = false;
  for_each_grid_point(sym.num_actions(), resolution, [&](const std::vector<double>& shares) {
    if (defeated) return;
    MixedStrategy invader{std::vector<double>(shares)};
    if (same_as_candidate(invader)) return;
    if (!beats_invader(invader)) {
      verdict.witness = invader;
      defeated = true;
    }
  });
  if (defeated) return verdict;

  verdict.is_ess = true;
  return verdict;
}

}  // namespace magt
