#include "magt/clri.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "magt/rng.hpp"

namespace magt {

void ClriParams::validate() const {
  if (agents.empty()) throw std::invalid_argument("CLRI system needs at least one agent");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const AgentRates& a = agents[i];
    if (a.action_count < 2) {
      throw std::invalid_argument("agent " + std::to_string(i) + " needs |A| >= 2");
    }
    auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in_unit(a.change_rate) || !in_unit(a.learning_rate) || !in_unit(a.retention_rate)) {
      throw std::invalid_argument("agent " + std::to_string(i) +
                                  " rates must lie in [0,1]");
    }
    if (a.learning_rate > a.change_rate) {
      throw std::invalid_argument("agent " + std::to_string(i) +
                                  " violates l <= c (learning rate exceeds change rate)");
    }
  }
  if (volatility_const) {
    if (volatility_const->size() != agents.size()) {
      throw std::invalid_argument("volatility vector must have one entry per agent");
    }
    for (double v : *volatility_const) {
      if (v < 0.0 || v > 1.0) throw std::invalid_argument("volatility must lie in [0,1]");
    }
  }
  if (impact) {
    if (impact->size() != agents.size()) {
      throw std::invalid_argument("impact matrix must be N x N");
    }
    for (const auto& row : *impact) {
      if (row.size() != agents.size()) {
        throw std::invalid_argument("impact matrix must be N x N");
      }
      for (double x : row) {
        if (x < 0.0 || x > 1.0) throw std::invalid_argument("impacts must lie in [0,1]");
      }
    }
  }
  if (!volatility_const && !impact) {
    throw std::invalid_argument("CLRI parameters need a volatility or an impact matrix");
  }
}

void ClriWorld::validate(const ClriParams& params) const {
  if (state_probs.empty()) throw std::invalid_argument("world needs at least one state");
  double total = 0.0;
  for (double p : state_probs) {
    if (p < 0.0) throw std::invalid_argument("state probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("state probabilities must sum to 1");
  }
  if (decision.size() != params.agents.size() || target.size() != params.agents.size()) {
    throw std::invalid_argument("world needs one decision and target function per agent");
  }
  for (std::size_t i = 0; i < params.agents.size(); ++i) {
    if (decision[i].size() != state_probs.size() || target[i].size() != state_probs.size()) {
      throw std::invalid_argument("decision/target function size mismatch");
    }
    for (std::size_t w = 0; w < state_probs.size(); ++w) {
      int k = params.agents[i].action_count;
      if (decision[i][w] < 0 || decision[i][w] >= k || target[i][w] < 0 || target[i][w] >= k) {
        throw std::invalid_argument("decision/target maps to an invalid action");
      }
    }
  }
}

double error(const ClriWorld& world, int agent) {
  if (agent < 0 || static_cast<std::size_t>(agent) >= world.decision.size()) {
    throw std::invalid_argument("agent index out of range");
  }
  double e = 0.0;
  for (std::size_t w = 0; w < world.state_probs.size(); ++w) {
    if (world.decision[static_cast<std::size_t>(agent)][w] !=
        world.target[static_cast<std::size_t>(agent)][w]) {
      e += world.state_probs[w];
    }
  }
  return e;
}

std::vector<double> volatility(const ClriParams& params,
                               const std::vector<double>& change_probs) {
  if (!params.impact) {
    throw std::invalid_argument("volatility from impact needs an impact matrix");
  }
  if (change_probs.size() != params.agents.size()) {
    throw std::invalid_argument("one change probability required per agent");
  }
  for (double p : change_probs) {
    if (p < 0.0 || p > 1.0) {
      throw std::invalid_argument("change probabilities must lie in [0,1]");
    }
  }
  const auto& impact = *params.impact;
  std::vector<double> v(params.agents.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    double survive = 1.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j == i) continue;
      survive *= 1.0 - impact[j][i] * change_probs[j];
    }
    v[i] = 1.0 - survive;
  }
  return v;
}

namespace {

std::vector<double> step_volatilities(const ClriParams& params,
                                      const std::vector<double>& change_probs) {
  if (params.impact) return volatility(params, change_probs);
  return *params.volatility_const;
}

double predicted_change_prob(const AgentRates& a, double e) {
  // Incorrect mappings change with probability c, correct ones with 1-r.
  return e * a.change_rate + (1.0 - e) * (1.0 - a.retention_rate);
}

}  // namespace

ErrorTrajectory clri_predict(const ClriParams& params, const std::vector<double>& e0,
                             int steps) {
  params.validate();
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (e0.size() != params.agents.size()) {
    throw std::invalid_argument("one initial error required per agent");
  }
  for (double e : e0) {
    if (e < 0.0 || e > 1.0) throw std::invalid_argument("initial error must lie in [0,1]");
  }

  const std::size_t n = params.agents.size();
  ErrorTrajectory traj;
  traj.error.assign(n, {});
  std::vector<double> e = e0;
  for (std::size_t i = 0; i < n; ++i) traj.error[i].push_back(e[i]);

  for (int t = 0; t < steps; ++t) {
    std::vector<double> change(n);
    for (std::size_t i = 0; i < n; ++i) {
      change[i] = predicted_change_prob(params.agents[i], e[i]);
    }
    const std::vector<double> v = step_volatilities(params, change);

    for (std::size_t i = 0; i < n; ++i) {
      const AgentRates& a = params.agents[i];
      const double k = static_cast<double>(a.action_count);
      const double r = a.retention_rate, l = a.learning_rate, c = a.change_rate;
      double next = 1.0 - r + v[i] * ((k * r - 1.0) / (k - 1.0)) +
                    e[i] * (r - l + v[i] * ((k * (l - r) + l - c) / (k - 1.0)));
      if (next < 0.0 || next > 1.0) {
        if (next < -1e-12 || next > 1.0 + 1e-12) ++traj.clamped_steps;
        next = std::clamp(next, 0.0, 1.0);
      }
      e[i] = next;
      traj.error[i].push_back(next);
    }
  }
  return traj;
}

namespace {

struct TrialResult {
  std::vector<double> error;        // [agent * (steps+1) + step]
  std::vector<double> change_freq;  // per agent, mean over steps
  std::vector<double> applied_vol;  // per agent, mean over steps
};

TrialResult run_trial(const ClriParams& params, const ClriSimConfig& config,
                      const std::vector<double>& probs, std::uint64_t trial_seed) {
  const std::size_t n = params.agents.size();
  const std::size_t states = probs.size();
  std::mt19937_64 rng = make_rng(trial_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto random_other = [&](int current, int action_count) {
    std::uniform_int_distribution<int> pick(0, action_count - 2);
    int a = pick(rng);
    return a >= current ? a + 1 : a;
  };

  std::vector<std::vector<int>> target(n), decision(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int k = params.agents[i].action_count;
    target[i].resize(states);
    decision[i].resize(states);
    std::uniform_int_distribution<int> any(0, k - 1);
    for (std::size_t w = 0; w < states; ++w) {
      target[i][w] = any(rng);
      if (unit(rng) < config.initial_error) {
        decision[i][w] = random_other(target[i][w], k);
      } else {
        decision[i][w] = target[i][w];
      }
    }
  }

  auto measure_error = [&](std::size_t i) {
    double e = 0.0;
    for (std::size_t w = 0; w < states; ++w) {
      if (decision[i][w] != target[i][w]) e += probs[w];
    }
    return e;
  };

  TrialResult result;
  result.error.assign(n * static_cast<std::size_t>(config.steps + 1), 0.0);
  result.change_freq.assign(n, 0.0);
  result.applied_vol.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    result.error[i * static_cast<std::size_t>(config.steps + 1)] = measure_error(i);
  }

  for (int t = 0; t < config.steps; ++t) {
    // Learning phase: decisions move toward the current targets.
    std::vector<double> change(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const AgentRates& a = params.agents[i];
      for (std::size_t w = 0; w < states; ++w) {
        const int old_action = decision[i][w];
        if (decision[i][w] != target[i][w]) {
          double u = unit(rng);
          if (u < a.learning_rate) {
            decision[i][w] = target[i][w];
          } else if (u < a.change_rate) {
            decision[i][w] = random_other(target[i][w], a.action_count);
          }
        } else {
          if (unit(rng) >= a.retention_rate) {
            decision[i][w] = random_other(target[i][w], a.action_count);
          }
        }
        if (decision[i][w] != old_action) change[i] += probs[w];
      }
      result.change_freq[i] += change[i];
    }

    // Target phase: moves driven by constant volatility or by the other
    // agents' measured change frequencies through the impact matrix.
    const std::vector<double> v = step_volatilities(params, change);
    for (std::size_t i = 0; i < n; ++i) {
      result.applied_vol[i] += v[i];
      if (v[i] <= 0.0) continue;
      for (std::size_t w = 0; w < states; ++w) {
        if (unit(rng) < v[i]) {
          target[i][w] = random_other(target[i][w], params.agents[i].action_count);
        }
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      result.error[i * static_cast<std::size_t>(config.steps + 1) +
                   static_cast<std::size_t>(t + 1)] = measure_error(i);
    }
  }

  if (config.steps > 0) {
    for (std::size_t i = 0; i < n; ++i) {
      result.change_freq[i] /= config.steps;
      result.applied_vol[i] /= config.steps;
    }
  }
  return result;
}

}  // namespace

ClriSimResult clri_simulate(const ClriParams& params, const ClriSimConfig& config) {
  params.validate();
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (config.steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (config.num_states < 1) throw std::invalid_argument("need at least one world state");
  if (config.initial_error < 0.0 || config.initial_error > 1.0) {
    throw std::invalid_argument("initial error must lie in [0,1]");
  }

  std::vector<double> probs = config.state_probs;
  if (probs.empty()) {
    probs.assign(static_cast<std::size_t>(config.num_states),
                 1.0 / config.num_states);
  } else {
    if (probs.size() != static_cast<std::size_t>(config.num_states)) {
      throw std::invalid_argument("state probability vector size mismatch");
    }
    double total = 0.0;
    for (double p : probs) {
      if (p < 0.0) throw std::invalid_argument("state probabilities must be nonnegative");
      total += p;
    }
    if (total <= 0.0) throw std::invalid_argument("state probabilities must not all be 0");
    for (double& p : probs) p /= total;
  }

  const std::size_t n = params.agents.size();
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  std::vector<TrialResult> results(trials);

  const int threads = std::max(1, std::min<int>(config.threads, config.trials));
  if (threads == 1) {
    for (std::size_t trial = 0; trial < trials; ++trial) {
      results[trial] = run_trial(params, config, probs, split_seed(config.seed, trial));
    }
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (trials + static_cast<std::size_t>(threads) - 1) /
                        static_cast<std::size_t>(threads);
    for (int w = 0; w < threads; ++w) {
      std::size_t begin = static_cast<std::size_t>(w) * chunk;
      std::size_t end = std::min(trials, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end]() {
        for (std::size_t trial = begin; trial < end; ++trial) {
          results[trial] = run_trial(params, config, probs, split_seed(config.seed, trial));
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Merge in trial order so the output is independent of the thread count.
  ClriSimResult out;
  out.mean_error.assign(n, std::vector<double>(static_cast<std::size_t>(config.steps + 1), 0.0));
  out.ci_half_width.assign(n, std::vector<double>(static_cast<std::size_t>(config.steps + 1), 0.0));
  out.mean_change_freq.assign(n, 0.0);
  out.mean_volatility.assign(n, 0.0);

  std::vector<std::vector<double>> sum(n, std::vector<double>(static_cast<std::size_t>(config.steps + 1), 0.0));
  std::vector<std::vector<double>> sum_sq(n, std::vector<double>(static_cast<std::size_t>(config.steps + 1), 0.0));
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const TrialResult& r = results[trial];
    for (std::size_t i = 0; i < n; ++i) {
      for (int t = 0; t <= config.steps; ++t) {
        double e = r.error[i * static_cast<std::size_t>(config.steps + 1) +
                           static_cast<std::size_t>(t)];
        sum[i][static_cast<std::size_t>(t)] += e;
        sum_sq[i][static_cast<std::size_t>(t)] += e * e;
      }
      out.mean_change_freq[i] += r.change_freq[i];
      out.mean_volatility[i] += r.applied_vol[i];
    }
  }

  const double m = static_cast<double>(trials);
  for (std::size_t i = 0; i < n; ++i) {
    out.mean_change_freq[i] /= m;
    out.mean_volatility[i] /= m;
    for (int t = 0; t <= config.steps; ++t) {
      double mean = sum[i][static_cast<std::size_t>(t)] / m;
      out.mean_error[i][static_cast<std::size_t>(t)] = mean;
      if (trials > 1) {
        double var = (sum_sq[i][static_cast<std::size_t>(t)] - m * mean * mean) / (m - 1.0);
        var = std::max(var, 0.0);
        out.ci_half_width[i][static_cast<std::size_t>(t)] = 1.96 * std::sqrt(var / m);
      }
    }
  }
  return out;
}

ClriFit fit_clri(const std::vector<double>& trajectory, int action_count,
                 std::optional<double> change_rate, double assumed_volatility) {
  if (trajectory.size() < 3) {
    throw std::invalid_argument("fit needs a trajectory of length >= 3");
  }
  if (action_count < 2) throw std::invalid_argument("fit needs |A| >= 2");
  if (assumed_volatility < 0.0 || assumed_volatility > 1.0) {
    throw std::invalid_argument("assumed volatility must lie in [0,1]");
  }

  const std::size_t pairs = trajectory.size() - 1;
  ClriFit fit;
  fit.volatility = assumed_volatility;

  // Least squares for e' = alpha + beta * e.
  double s1 = static_cast<double>(pairs), sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
  for (std::size_t t = 0; t < pairs; ++t) {
    double x = trajectory[t], y = trajectory[t + 1];
    sx += x;
    sxx += x * x;
    sy += y;
    sxy += x * y;
  }
  double det = s1 * sxx - sx * sx;
  double alpha, beta;
  if (std::abs(det) < 1e-12) {
    // Constant trajectory: slope unidentifiable. Report the fixed point as a
    // pure-retention system.
    fit.underdetermined = true;
    alpha = sy / s1;
    beta = 0.0;
  } else {
    beta = (s1 * sxy - sx * sy) / det;
    alpha = (sy - beta * sx) / s1;
  }

  double rss = 0.0;
  for (std::size_t t = 0; t < pairs; ++t) {
    double resid = trajectory[t + 1] - (alpha + beta * trajectory[t]);
    rss += resid * resid;
  }
  fit.residual = std::sqrt(rss / static_cast<double>(pairs));

  const double a = static_cast<double>(action_count);
  const double k = assumed_volatility / (a - 1.0);
  const double denom_r = 1.0 - k * a;
  if (std::abs(denom_r) < 1e-12) {
    fit.underdetermined = true;
    return fit;
  }
  double r = (1.0 - k - alpha) / denom_r;
  double l;
  if (change_rate) {
    double denom_l = 1.0 - k * (a + 1.0);
    if (std::abs(denom_l) < 1e-12) {
      fit.underdetermined = true;
      return fit;
    }
    l = (r * denom_r - k * *change_rate - beta) / denom_l;
  } else {
    l = r - beta / denom_r;  // c = l kills the (l - c) term
  }
  fit.retention_rate = std::clamp(r, 0.0, 1.0);
  fit.learning_rate = std::clamp(l, 0.0, 1.0);
  return fit;
}

}  // namespace magt
