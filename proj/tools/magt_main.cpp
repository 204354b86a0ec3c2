#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "magt/clri.hpp"
#include "magt/csv.hpp"
#include "magt/equilibria.hpp"
#include "magt/errors.hpp"
#include "magt/fictitious_play.hpp"
#include "magt/game_io.hpp"
#include "magt/nlevel.hpp"
#include "magt/replicator.hpp"
#include "magt/report.hpp"
#include "magt/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int max_threads() {
  const char* env = std::getenv("MAGT_THREADS");
  if (env == nullptr) return 1;
  int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw magt::ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw magt::ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
}

// "game" is either an inline document or a path, resolved against the
// config file's directory.
std::string game_text(const json& config, const std::string& config_path) {
  if (!config.contains("game")) throw magt::ConfigError("config needs a 'game' field");
  const json& g = config.at("game");
  if (g.is_object()) return g.dump();
  if (!g.is_string()) throw magt::ConfigError("'game' must be a path or an object");
  fs::path p = g.get<std::string>();
  if (p.is_relative()) p = fs::path(config_path).parent_path() / p;
  std::ifstream in(p);
  if (!in) throw magt::ConfigError("cannot open game file: " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string profile_string(const magt::Game& game, const magt::MixedProfile& profile) {
  std::string s;
  for (int i = 0; i < game.num_players(); ++i) {
    if (i) s += ";";
    s += "[";
    for (int a = 0; a < game.num_actions(i); ++a) {
      if (a) s += ",";
      s += magt::CsvWriter::format(profile.at(i).prob(a));
    }
    s += "]";
  }
  return s;
}

std::string strategy_string(const magt::MixedStrategy& strategy) {
  std::string s = "[";
  for (int a = 0; a < strategy.num_actions(); ++a) {
    if (a) s += ",";
    s += magt::CsvWriter::format(strategy.prob(a));
  }
  return s + "]";
}

void ensure_out_dir(const std::string& out_dir) {
  if (!out_dir.empty()) fs::create_directories(out_dir);
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(const std::string& game_path, const std::string& mode_name,
              double tolerance, int cap, int ess_resolution, bool skip_nash,
              bool force_symmetric, const std::string& out_dir) {
  std::ifstream in(game_path);
  if (!in) throw magt::ConfigError("cannot open game file: " + game_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const bool symmetric_doc = magt::is_symmetric_document(text);
  if (force_symmetric && !symmetric_doc) {
    throw magt::ConfigError("--symmetric given but the document is not a symmetric game");
  }
  magt::Game game = magt::load_game(text);

  magt::DominanceMode mode = magt::DominanceMode::Strict;
  if (mode_name == "weak") mode = magt::DominanceMode::Weak;
  else if (mode_name != "strict") throw magt::ConfigError("mode must be strict or weak");

  ensure_out_dir(out_dir);
  const fs::path out(out_dir.empty() ? "." : out_dir);

  magt::ReducedGame reduced = magt::iterated_dominance(game, mode);
  {
    std::ostringstream csv_text;
    magt::CsvWriter csv(csv_text);
    csv.write_row({"player", "action", "step", "mode", "dominator"});
    for (const auto& rec : reduced.log) {
      csv.write_row({game.player_name(rec.player),
                     game.action_name(rec.player, rec.action), std::to_string(rec.round),
                     rec.mode == magt::DominanceMode::Strict ? "strict" : "weak",
                     strategy_string(rec.dominator)});
    }
    magt::write_file_atomic((out / "dominance.csv").string(), csv_text.str());
  }

  std::cout << "dominance (" << mode_name << "): " << reduced.log.size()
            << " elimination(s)";
  if (reduced.order_dependent) std::cout << " [weak mode: order dependent]";
  std::cout << "\n";
  std::cout << "surviving:";
  for (int i = 0; i < game.num_players(); ++i) {
    std::cout << " " << game.player_name(i) << "={";
    const auto& surv = reduced.surviving[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < surv.size(); ++k) {
      if (k) std::cout << ",";
      std::cout << game.action_name(i, surv[k]);
    }
    std::cout << "}";
  }
  std::cout << "\n";

  json report;
  report["dominance"] = json::array();
  for (const auto& rec : reduced.log) {
    report["dominance"].push_back(
        {{"player", game.player_name(rec.player)},
         {"action", game.action_name(rec.player, rec.action)},
         {"step", rec.round},
         {"mode", rec.mode == magt::DominanceMode::Strict ? "strict" : "weak"}});
  }

  std::vector<magt::NashResult> equilibria;
  if (!skip_nash) {
    equilibria = magt::enumerate_nash_2p(game, cap);  // throws UnsupportedError on N>2
    std::ostringstream csv_text;
    magt::CsvWriter csv(csv_text);
    csv.write_row({"profile", "regret", "kind", "strict"});
    for (const auto& eq : equilibria) {
      csv.write_row({profile_string(game, eq.profile), magt::CsvWriter::format(eq.regret),
                     eq.pure ? "pure" : "mixed", eq.strict ? "true" : "false"});
    }
    magt::write_file_atomic((out / "nash.csv").string(), csv_text.str());

    std::cout << "nash equilibria: " << equilibria.size() << "\n";
    report["nash"] = json::array();
    for (const auto& eq : equilibria) {
      std::cout << "  " << profile_string(game, eq.profile)
                << (eq.pure ? " pure" : " mixed") << (eq.strict ? " strict" : "")
                << " regret=" << magt::CsvWriter::format(eq.regret) << "\n";
      json j;
      j["profile"] = json::array();
      for (int i = 0; i < game.num_players(); ++i) {
        j["profile"].push_back(eq.profile.at(i).probs());
      }
      j["regret"] = eq.regret;
      j["kind"] = eq.pure ? "pure" : "mixed";
      j["strict"] = eq.strict;
      report["nash"].push_back(j);
    }

    if (symmetric_doc) {
      magt::SymmetricGame sym = magt::load_symmetric_game(text);
      std::ostringstream ess_text;
      magt::CsvWriter csv2(ess_text);
      csv2.write_row({"strategy", "is_nash", "is_ess", "witness"});
      report["ess"] = json::array();
      for (const auto& eq : equilibria) {
        // ESS candidates are the symmetric equilibria.
        bool symmetric_eq = true;
        for (int a = 0; a < game.num_actions(0); ++a) {
          if (std::abs(eq.profile.at(0).prob(a) - eq.profile.at(1).prob(a)) > tolerance + 1e-9) {
            symmetric_eq = false;
            break;
          }
        }
        if (!symmetric_eq) continue;
        magt::EssVerdict verdict = magt::check_ess(sym, eq.profile.at(0), ess_resolution);
        csv2.write_row({strategy_string(verdict.strategy),
                        verdict.is_nash ? "true" : "false",
                        verdict.is_ess ? "true" : "false",
                        verdict.witness ? strategy_string(*verdict.witness) : ""});
        std::cout << "  ess " << strategy_string(verdict.strategy) << " -> "
                  << (verdict.is_ess ? "ESS" : "not ESS") << "\n";
        report["ess"].push_back({{"strategy", verdict.strategy.probs()},
                                 {"is_nash", verdict.is_nash},
                                 {"is_ess", verdict.is_ess}});
      }
      magt::write_file_atomic((out / "ess.csv").string(), ess_text.str());
    }
  }

  magt::write_file_atomic((out / "solve_report.json").string(), report.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// simulate fp

magt::TieRule parse_tie_rule(const std::string& name) {
  if (name == "lowest_index") return magt::TieRule::LowestIndex;
  if (name == "uniform_random") return magt::TieRule::UniformRandom;
  throw magt::ConfigError("tie_rule must be lowest_index or uniform_random");
}

std::vector<double> parse_weights(const json& j, const magt::Game& game, int opponent) {
  std::vector<double> w(static_cast<std::size_t>(game.num_actions(opponent)), 0.0);
  if (j.is_array()) {
    if (j.size() != w.size()) throw magt::ConfigError("weight vector length mismatch");
    for (std::size_t a = 0; a < w.size(); ++a) w[a] = j[a].get<double>();
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      int a = game.action_index(opponent, it.key());
      if (a < 0) throw magt::ConfigError("unknown action '" + it.key() + "' in weights");
      w[static_cast<std::size_t>(a)] = it.value().get<double>();
    }
  } else {
    throw magt::ConfigError("weights must be an array or an object");
  }
  return w;
}

int cmd_simulate_fp(const json& config, const std::string& config_path,
                    const std::string& out_dir) {
  magt::Game game = magt::load_game(game_text(config, config_path));

  magt::FpConfig fp;
  fp.budget = config.value("budget", 100);
  fp.cycle_window = config.value("cycle_window", 20);
  fp.convergence_window = config.value("convergence_window", 10);
  fp.tie_rule = parse_tie_rule(config.value("tie_rule", std::string("lowest_index")));
  fp.seed = config.value("seed", 0ULL);

  double default_weight = 1.0;
  if (config.contains("initial_weights")) {
    default_weight = config.at("initial_weights").value("default", 1.0);
  }
  std::vector<magt::BeliefState> beliefs;
  for (int i = 0; i < game.num_players(); ++i) {
    beliefs.push_back(magt::BeliefState::Uniform(game, i, default_weight));
  }
  if (config.contains("initial_weights") &&
      config.at("initial_weights").contains("overrides")) {
    for (const json& o : config.at("initial_weights").at("overrides")) {
      int agent = o.at("agent").get<int>();
      int opponent = o.at("opponent").get<int>();
      game.check_player(agent);
      game.check_player(opponent);
      if (agent == opponent) throw magt::ConfigError("agent cannot model itself");
      beliefs[static_cast<std::size_t>(agent)]
          .weights[static_cast<std::size_t>(opponent)] =
          parse_weights(o.at("weights"), game, opponent);
    }
  }

  magt::FpTrace trace = magt::run_fp(game, std::move(beliefs), fp);

  ensure_out_dir(out_dir);
  const fs::path out(out_dir.empty() ? "." : out_dir);
  const std::string prefix = config.value("out_prefix", std::string("fp"));
  std::ostringstream csv_text;
  magt::write_fp_trace_csv(csv_text, game, trace);
  magt::write_file_atomic((out / (prefix + "_trace.csv")).string(), csv_text.str());

  const std::string status = magt::fp_status_line(game, trace.status);
  magt::write_file_atomic((out / (prefix + "_status.txt")).string(), status + "\n");
  std::cout << status << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// simulate replicator

int cmd_simulate_replicator(const json& config, const std::string& config_path,
                            const std::string& out_dir) {
  magt::SymmetricGame sym = magt::load_symmetric_game(game_text(config, config_path));

  std::vector<double> counts(static_cast<std::size_t>(sym.num_actions()), 0.0);
  if (!config.contains("initial_counts")) {
    throw magt::ConfigError("config needs 'initial_counts'");
  }
  const json& init = config.at("initial_counts");
  if (init.is_array()) {
    if (init.size() != counts.size()) {
      throw magt::ConfigError("initial_counts length mismatch");
    }
    for (std::size_t s = 0; s < counts.size(); ++s) counts[s] = init[s].get<double>();
  } else if (init.is_object()) {
    for (auto it = init.begin(); it != init.end(); ++it) {
      int s = sym.action_index(it.key());
      if (s < 0) throw magt::ConfigError("unknown strategy '" + it.key() + "'");
      counts[static_cast<std::size_t>(s)] = it.value().get<double>();
    }
  } else {
    throw magt::ConfigError("initial_counts must be an array or an object");
  }

  magt::ReplicatorConfig rc;
  rc.budget = config.value("budget", 1000);
  rc.eps = config.value("eps", 1e-8);
  rc.confirm_steps = config.value("confirm_steps", 10);
  rc.stop_on_extinction = config.value("stop_on_extinction", false);

  magt::ReplicatorTrace trace = magt::run_replicator(sym, magt::Population(counts), rc);

  ensure_out_dir(out_dir);
  const fs::path out(out_dir.empty() ? "." : out_dir);
  const std::string prefix = config.value("out_prefix", std::string("replicator"));
  std::ostringstream csv_text;
  magt::write_replicator_trace_csv(csv_text, sym, trace);
  magt::write_file_atomic((out / (prefix + "_trace.csv")).string(), csv_text.str());

  const std::string status = magt::replicator_status_line(sym, trace.status);
  magt::write_file_atomic((out / (prefix + "_status.txt")).string(), status + "\n");
  std::cout << status << "\n";

  if (config.contains("probe")) {
    const json& p = config.at("probe");
    std::vector<double> candidate;
    for (const json& v : p.at("candidate")) candidate.push_back(v.get<double>());
    magt::ReplicatorConfig probe_rc = rc;
    probe_rc.budget = p.value("budget", rc.budget);
    magt::StabilityReport probe = magt::stability_probe(
        sym, candidate, p.value("epsilon", 0.01), p.value("trials", 10),
        p.value("seed", 0ULL), probe_rc);
    std::ostringstream probe_text;
    magt::write_stability_report_csv(probe_text, probe);
    magt::write_file_atomic((out / (prefix + "_probe.csv")).string(), probe_text.str());
    std::cout << "stability_probe " << (probe.stable ? "stable" : "unstable") << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate clri

int cmd_simulate_clri(const json& config, const std::string& out_dir) {
  magt::ClriParams params;
  if (!config.contains("agents") || !config.at("agents").is_array()) {
    throw magt::ConfigError("config needs an 'agents' array");
  }
  for (const json& a : config.at("agents")) {
    magt::AgentRates rates;
    rates.action_count = a.at("actions").get<int>();
    rates.change_rate = a.at("c").get<double>();
    rates.learning_rate = a.at("l").get<double>();
    rates.retention_rate = a.at("r").get<double>();
    params.agents.push_back(rates);
  }
  if (config.contains("impact")) {
    std::vector<std::vector<double>> impact;
    for (const json& row : config.at("impact")) {
      impact.push_back(row.get<std::vector<double>>());
    }
    params.impact = std::move(impact);
  }
  if (config.contains("volatility")) {
    const json& v = config.at("volatility");
    if (v.is_number()) {
      params.volatility_const =
          std::vector<double>(params.agents.size(), v.get<double>());
    } else {
      params.volatility_const = v.get<std::vector<double>>();
    }
  }
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw magt::ConfigError(e.what());
  }

  magt::ClriSimConfig sim;
  sim.num_states = config.value("world_states", 20);
  if (config.contains("state_probs")) {
    sim.state_probs = config.at("state_probs").get<std::vector<double>>();
  }
  sim.steps = config.value("steps", 50);
  sim.trials = config.value("trials", 1000);
  sim.seed = config.value("seed", 0ULL);
  sim.initial_error = config.value("initial_error", 1.0);
  sim.threads = max_threads();

  magt::ClriSimResult result = magt::clri_simulate(params, sim);
  magt::ErrorTrajectory predicted = magt::clri_predict(
      params, std::vector<double>(params.agents.size(), sim.initial_error), sim.steps);

  ensure_out_dir(out_dir);
  const fs::path out(out_dir.empty() ? "." : out_dir);
  const std::string prefix = config.value("out_prefix", std::string("clri"));

  std::ostringstream csv_text;
  magt::CsvWriter csv(csv_text);
  std::vector<std::string> header{"step"};
  for (int i = 0; i < params.num_agents(); ++i) {
    header.push_back("predicted_" + std::to_string(i));
    header.push_back("empirical_" + std::to_string(i));
    header.push_back("ci_" + std::to_string(i));
  }
  csv.write_row(header);
  for (int t = 0; t <= sim.steps; ++t) {
    std::vector<std::string> row{std::to_string(t)};
    for (int i = 0; i < params.num_agents(); ++i) {
      row.push_back(magt::CsvWriter::format(
          predicted.error[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]));
      row.push_back(magt::CsvWriter::format(
          result.mean_error[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]));
      row.push_back(magt::CsvWriter::format(
          result.ci_half_width[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]));
    }
    csv.write_row(row);
  }
  magt::write_file_atomic((out / (prefix + "_trace.csv")).string(), csv_text.str());

  for (int i = 0; i < params.num_agents(); ++i) {
    std::cout << "agent " << i << ": final predicted="
              << magt::CsvWriter::format(predicted.error[static_cast<std::size_t>(i)].back())
              << " empirical="
              << magt::CsvWriter::format(result.mean_error[static_cast<std::size_t>(i)].back())
              << " ci="
              << magt::CsvWriter::format(result.ci_half_width[static_cast<std::size_t>(i)].back())
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate society

magt::AgentSpec parse_agent_spec(const json& j) {
  magt::AgentSpec spec;
  int level = j.at("level").get<int>();
  if (level < 0 || level > 2) throw magt::ConfigError("agent level must be 0, 1 or 2");
  spec.level = static_cast<magt::AgentLevel>(level);
  spec.epsilon = j.value("epsilon", 0.05);
  if (spec.epsilon < 0.0 || spec.epsilon > 1.0) {
    throw magt::ConfigError("epsilon must lie in [0,1]");
  }
  spec.seed = j.value("seed", 0ULL);
  std::string knowledge = j.value("knowledge", std::string("true"));
  if (knowledge == "true") spec.knowledge = magt::KnowledgeMode::TrueValues;
  else if (knowledge == "mirror") spec.knowledge = magt::KnowledgeMode::AssumeSymmetric;
  else throw magt::ConfigError("knowledge must be 'true' or 'mirror'");
  return spec;
}

int cmd_simulate_society(const json& config, const std::string& config_path,
                         const std::string& out_dir, int runs) {
  if (!config.contains("roster") || !config.at("roster").is_array()) {
    throw magt::ConfigError("config needs a 'roster' array");
  }
  std::vector<magt::AgentSpec> roster;
  for (const json& j : config.at("roster")) roster.push_back(parse_agent_spec(j));

  const std::string text = game_text(config, config_path);
  const std::string mode = config.value("mode", std::string("roles"));
  const int steps = config.value("steps", 1000);
  const std::uint64_t seed = config.value("seed", 0ULL);

  ensure_out_dir(out_dir);
  const fs::path out(out_dir.empty() ? "." : out_dir);
  const std::string prefix = config.value("out_prefix", std::string("society"));

  auto run_one = [&](std::uint64_t run_seed) {
    if (mode == "matching") {
      magt::SymmetricGame sym = magt::load_symmetric_game(text);
      return std::pair<magt::SocietyTrace, std::vector<std::vector<std::string>>>(
          magt::run_society_matching(sym, roster, steps, run_seed),
          std::vector<std::vector<std::string>>(roster.size(), sym.action_names()));
    }
    if (mode != "roles") throw magt::ConfigError("mode must be 'roles' or 'matching'");
    magt::Game game = magt::load_game(text);
    std::vector<std::vector<std::string>> names;
    for (int i = 0; i < game.num_players(); ++i) names.push_back(game.action_names(i));
    return std::pair<magt::SocietyTrace, std::vector<std::vector<std::string>>>(
        magt::run_society(game, roster, steps, run_seed), std::move(names));
  };

  for (int run = 0; run < runs; ++run) {
    const std::uint64_t run_seed = runs == 1 ? seed : magt::split_seed(seed, static_cast<std::uint64_t>(run));
    auto [trace, names] = run_one(run_seed);

    const std::string stem =
        runs == 1 ? prefix : prefix + "_run" + std::to_string(run);
    std::ostringstream trace_text;
    magt::write_society_trace_csv(trace_text, names, trace);
    magt::write_file_atomic((out / (stem + "_trace.csv")).string(), trace_text.str());
    std::ostringstream summary_text;
    magt::write_society_summary_csv(summary_text, trace);
    magt::write_file_atomic((out / (stem + "_summary.csv")).string(), summary_text.str());

    std::cout << stem << ": mean utility";
    for (std::size_t i = 0; i < roster.size(); ++i) {
      std::cout << " agent" << i << "(L" << static_cast<int>(roster[i].level)
                << ")=" << magt::CsvWriter::format(trace.mean_utility[i]);
    }
    std::cout << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// report

int cmd_report(const std::vector<std::string>& paths, const std::string& group_by,
               const std::string& out_file) {
  magt::ReportOptions options;
  options.group_by = group_by;
  magt::ReportResult result = magt::aggregate_traces(paths, options);
  std::cout << result.table_text();
  magt::write_file_atomic(out_file, result.gnuplot_data());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magt: normal-form game solvers and learning-dynamics simulators"};
  app.require_subcommand(1);

  // solve
  std::string game_path, mode = "strict", out_dir;
  double tolerance = 1e-9;
  int cap = 8, ess_resolution = 100;
  bool skip_nash = false, force_symmetric = false;
  CLI::App* solve = app.add_subcommand("solve", "dominance, Nash and ESS analysis");
  solve->add_option("game", game_path, "game file (JSON)")->required();
  solve->add_option("--mode", mode, "dominance mode: strict|weak");
  solve->add_option("--tolerance", tolerance, "equilibrium verification tolerance");
  solve->add_option("--cap", cap, "max actions per player for Nash enumeration");
  solve->add_option("--ess-resolution", ess_resolution, "invader grid resolution");
  solve->add_flag("--skip-nash", skip_nash, "dominance only (for >2-player games)");
  solve->add_flag("--symmetric", force_symmetric, "require a symmetric game document");
  solve->add_option("--out", out_dir, "output directory");

  // simulate
  CLI::App* simulate = app.add_subcommand("simulate", "run a learning dynamics");
  simulate->require_subcommand(1);
  std::string sim_config_path, sim_out_dir;
  int society_runs = 1;
  CLI::App* sim_fp = simulate->add_subcommand("fp", "fictitious play");
  CLI::App* sim_repl = simulate->add_subcommand("replicator", "replicator dynamics");
  CLI::App* sim_clri = simulate->add_subcommand("clri", "CLRI prediction vs simulation");
  CLI::App* sim_soc = simulate->add_subcommand("society", "n-level agent society");
  for (CLI::App* sub : {sim_fp, sim_repl, sim_clri, sim_soc}) {
    sub->add_option("config", sim_config_path, "config file (JSON)")->required();
    sub->add_option("--out", sim_out_dir, "output directory");
  }
  sim_soc->add_option("--runs", society_runs, "seed-split batch size");

  // report
  std::vector<std::string> report_paths;
  std::string group_by, report_out = "report.dat";
  CLI::App* report = app.add_subcommand("report", "aggregate trace files");
  report->add_option("traces", report_paths, "trace CSV files");
  report->add_option("--group-by", group_by, "group rows by this column");
  report->add_option("--out", report_out, "gnuplot data output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(game_path, mode, tolerance, cap, ess_resolution, skip_nash,
                       force_symmetric, out_dir);
    }
    if (simulate->parsed()) {
      json config = load_json_file(sim_config_path);
      if (sim_fp->parsed()) return cmd_simulate_fp(config, sim_config_path, sim_out_dir);
      if (sim_repl->parsed()) {
        return cmd_simulate_replicator(config, sim_config_path, sim_out_dir);
      }
      if (sim_clri->parsed()) return cmd_simulate_clri(config, sim_out_dir);
      if (sim_soc->parsed()) {
        return cmd_simulate_society(config, sim_config_path, sim_out_dir, society_runs);
      }
    }
    if (report->parsed()) return cmd_report(report_paths, group_by, report_out);
  } catch (const magt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const magt::UnsupportedError& e) {
    std::cerr << "unsupported instance: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
