#include "magt/replicator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "magt/csv.hpp"
#include "magt/rng.hpp"

namespace magt {

Population::Population(std::vector<double> counts_in) : counts(std::move(counts_in)) {
  if (counts.empty()) throw std::invalid_argument("population needs at least one strategy");
  double total = 0.0;
  for (double c : counts) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw std::invalid_argument("population counts must be nonnegative and finite");
    }
    total += c;
  }
  if (total <= 0.0) throw std::invalid_argument("population must have a positive total");
}

std::vector<double> Population::shares() const {
  double t = total();
  std::vector<double> out(counts.size());
  for (std::size_t s = 0; s < counts.size(); ++s) out[s] = counts[s] / t;
  return out;
}

double Population::total() const {
  double t = 0.0;
  for (double c : counts) t += c;
  return t;
}

std::vector<double> strategy_fitness(const SymmetricGame& sym, const Population& pop) {
  if (pop.counts.size() != static_cast<std::size_t>(sym.num_actions())) {
    throw std::invalid_argument("population size does not match strategy count");
  }
  std::vector<double> theta = pop.shares();
  std::vector<double> fitness(theta.size(), 0.0);
  for (int s = 0; s < sym.num_actions(); ++s) {
    double u = 0.0;
    for (int t = 0; t < sym.num_actions(); ++t) {
      u += theta[static_cast<std::size_t>(t)] * sym.payoff(s, t);
    }
    fitness[static_cast<std::size_t>(s)] = u;
  }
  return fitness;
}

Population replicator_step(const SymmetricGame& sym, const Population& pop) {
  std::vector<double> fitness = strategy_fitness(sym, pop);
  std::vector<double> next(pop.counts.size());
  for (std::size_t s = 0; s < pop.counts.size(); ++s) {
    double factor = 1.0 + fitness[s];
    if (pop.counts[s] > 0.0 && factor < 0.0) {
      throw std::domain_error(
          "replicator growth factor 1+u is negative for strategy " +
          sym.action_name(static_cast<int>(s)) +
          "; rescale payoffs (e.g. rescale_payoffs) so 1+u >= 0");
    }
    next[s] = pop.counts[s] > 0.0 ? pop.counts[s] * factor : 0.0;
  }
  return Population(std::move(next));
}

ReplicatorTrace run_replicator(const SymmetricGame& sym, const Population& initial,
                               const ReplicatorConfig& config) {
  if (config.budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (config.eps <= 0.0) throw std::invalid_argument("steady-state tolerance must be > 0");

  ReplicatorTrace trace;
  Population pop = initial;
  trace.shares.push_back(pop.shares());
  trace.fitness.push_back(strategy_fitness(sym, pop));

  int calm_steps = 0;
  for (int step = 1; step <= config.budget; ++step) {
    Population next = replicator_step(sym, pop);
    // Keep the total bounded; shares are invariant to count scale and raw
    // counts overflow double range on long runs.
    if (next.total() > 1e100 || next.total() < 1e-100) {
      next = Population(next.shares());
    }

    // Extinction control: clamp vanishing shares to zero so they cannot
    // linger as denormals.
    std::vector<double> next_shares = next.shares();
    for (std::size_t s = 0; s < next.counts.size(); ++s) {
      if (next.counts[s] > 0.0 && next_shares[s] < config.extinction_threshold) {
        next.counts[s] = 0.0;
        trace.extinctions.push_back({static_cast<int>(s), step});
      }
    }
    next_shares = next.shares();

    double change = 0.0;
    const std::vector<double>& prev_shares = trace.shares.back();
    for (std::size_t s = 0; s < next_shares.size(); ++s) {
      change = std::max(change, std::abs(next_shares[s] - prev_shares[s]));
    }

    pop = std::move(next);
    trace.shares.push_back(next_shares);
    trace.fitness.push_back(strategy_fitness(sym, pop));

    if (!trace.extinctions.empty() &&
        trace.extinctions.back().step == step && config.stop_on_extinction) {
      trace.status.kind = ReplicatorStatus::Kind::Extinction;
      trace.status.extinction = trace.extinctions.back();
      return trace;
    }

    calm_steps = change < config.eps ? calm_steps + 1 : 0;
    if (calm_steps >= config.confirm_steps) {
      trace.status.kind = ReplicatorStatus::Kind::Steady;
      trace.status.shares = next_shares;
      return trace;
    }
  }

  trace.status.kind = ReplicatorStatus::Kind::BudgetExhausted;
  return trace;
}

namespace {

double share_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) d = std::max(d, std::abs(a[s] - b[s]));
  return d;
}

}  // namespace

StabilityReport stability_probe(const SymmetricGame& sym,
                                const std::vector<double>& candidate_shares,
                                double epsilon_p, int trials, std::uint64_t seed,
                                const ReplicatorConfig& config) {
  if (trials < 1) throw std::invalid_argument("stability probe needs >= 1 trial");
  if (!(epsilon_p > 0.0) || epsilon_p > 0.5) {
    throw std::invalid_argument("perturbation magnitude must be in (0, 0.5]");
  }
  Population candidate{std::vector<double>(candidate_shares)};
  std::vector<double> normalized = candidate.shares();

  // Precondition: the candidate must already be a steady state.
  {
    Population stepped = replicator_step(sym, candidate);
    if (share_distance(stepped.shares(), normalized) > config.eps) {
      throw std::invalid_argument("stability probe candidate is not a steady state");
    }
  }

  const std::size_t n = normalized.size();
  StabilityReport report;
  report.stable = true;
  std::mt19937_64 rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (int trial = 0; trial < trials; ++trial) {
    // Random zero-sum displacement of L2 magnitude epsilon_p; flipped or
    // resampled until the perturbed point stays on the simplex. This can add
    // mass to extinct strategies, which is the point of the probe.
    std::vector<double> perturbed(n);
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
      std::vector<double> d(n);
      double mean = 0.0;
      for (std::size_t s = 0; s < n; ++s) {
        d[s] = gauss(rng);
        mean += d[s];
      }
      mean /= static_cast<double>(n);
      double norm = 0.0;
      for (std::size_t s = 0; s < n; ++s) {
        d[s] -= mean;
        norm += d[s] * d[s];
      }
      norm = std::sqrt(norm);
      if (norm < 1e-12) continue;
      for (int sign = 0; sign < 2 && !found; ++sign) {
        bool ok = true;
        for (std::size_t s = 0; s < n; ++s) {
          perturbed[s] = normalized[s] + (sign ? -1.0 : 1.0) * epsilon_p * d[s] / norm;
          if (perturbed[s] < 0.0) { ok = false; break; }
        }
        if (ok) found = true;
      }
    }
    if (!found) throw std::runtime_error("could not sample a valid perturbation");
    double total = 0.0;
    for (double p : perturbed) total += p;
    for (double& p : perturbed) p /= total;

    StabilityTrial t;
    t.perturbed = perturbed;
    Population pop{std::vector<double>(perturbed)};
    t.max_distance = share_distance(pop.shares(), normalized);
    for (int step = 0; step < config.budget; ++step) {
      // Work on shares directly; the share dynamics are invariant to count
      // scale and raw counts would overflow over long probes.
      pop = Population(replicator_step(sym, pop).shares());
      t.max_distance = std::max(t.max_distance, share_distance(pop.shares(), normalized));
    }
    t.final_distance = share_distance(pop.shares(), normalized);
    t.returned = t.final_distance <= epsilon_p / 2.0;
    if (!t.returned) report.stable = false;
    report.trials.push_back(std::move(t));
  }
  return report;
}

void write_replicator_trace_csv(std::ostream& out, const SymmetricGame& sym,
                                const ReplicatorTrace& trace) {
  CsvWriter csv(out);
  std::vector<std::string> header{"step"};
  for (int s = 0; s < sym.num_actions(); ++s) header.push_back("share_" + sym.action_name(s));
  for (int s = 0; s < sym.num_actions(); ++s) header.push_back("fitness_" + sym.action_name(s));
  csv.write_row(header);
  for (std::size_t step = 0; step < trace.shares.size(); ++step) {
    std::vector<std::string> row{std::to_string(step)};
    for (double x : trace.shares[step]) row.push_back(CsvWriter::format(x));
    for (double x : trace.fitness[step]) row.push_back(CsvWriter::format(x));
    csv.write_row(row);
  }
  std::vector<std::string> footer(header.size());
  footer[0] = "#status";
  footer[1] = replicator_status_line(sym, trace.status);
  csv.write_row(footer);
}

void write_stability_report_csv(std::ostream& out, const StabilityReport& report) {
  CsvWriter csv(out);
  csv.write_row({"trial", "max_distance", "returned"});
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const StabilityTrial& t = report.trials[i];
    csv.write_row({std::to_string(i), CsvWriter::format(t.max_distance),
                   t.returned ? "true" : "false"});
  }
}

std::string replicator_status_line(const SymmetricGame& sym,
                                   const ReplicatorStatus& status) {
  switch (status.kind) {
    case ReplicatorStatus::Kind::Steady: {
      std::string s = "steady shares=";
      for (std::size_t i = 0; i < status.shares.size(); ++i) {
        if (i) s += ",";
        s += CsvWriter::format(status.shares[i]);
      }
      return s;
    }
    case ReplicatorStatus::Kind::Extinction:
      return "extinction strategy=" + sym.action_name(status.extinction.strategy) +
             " step=" + std::to_string(status.extinction.step);
    case ReplicatorStatus::Kind::BudgetExhausted:
      return "budget_exhausted";
  }
  return "";
}

}  // namespace magt
