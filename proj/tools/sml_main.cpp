// sml -- command-line driver: LP solving, policy simulation, type
// classification, and the built-in experiment suites.
//
// Exit codes: 0 success, 1 experiment/computation failure, 2 usage or I/O
// error. All stdout output is deterministic for a fixed seed and config;
// timings go to stderr.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "sml/builtins.hpp"
#include "sml/experiments.hpp"
#include "sml/format.hpp"
#include "sml/instance.hpp"
#include "sml/lp.hpp"
#include "sml/simulator.hpp"

namespace {

struct Options {
  std::string instance;
  int n = 50;
  std::string benchmark = "online";
  std::vector<std::string> policies;
  double epsilon = 0.05, epsilon_prime = 0.05;
  double horizon = 1e4, burnin = -1.0;
  int reps = 1;
  std::uint64_t seed = 7;
  std::string out;
  double lp_tol = 1e-7;
  std::string solution_path;
  bool canonical = false;
  std::string suite = "all";
};

sml::BuiltinExample resolve_instance(const Options& o) {
  if (sml::is_builtin_name(o.instance)) return sml::example_instance(o.instance, o.n);
  return {sml::load_instance(o.instance), std::nullopt};
}

sml::LpSolution resolve_solution(const Options& o, const sml::BuiltinExample& ex,
                                 sml::Benchmark benchmark) {
  if (!o.solution_path.empty()) return sml::load_solution(ex.instance, o.solution_path);
  if (o.canonical) {
    if (!ex.canonical)
      throw std::invalid_argument("no canonical solution for this instance; drop --canonical");
    return *ex.canonical;
  }
  sml::SolveOptions opts;
  opts.cut_tol = o.lp_tol;
  return sml::solve_tlp(ex.instance, benchmark, opts);
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir + "/" + name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + dir + "/" + name);
  f << content;
}

int cmd_solve(const Options& o) {
  sml::BuiltinExample ex = resolve_instance(o);
  sml::Benchmark bench = sml::parse_benchmark(o.benchmark);
  sml::SolveOptions opts;
  opts.cut_tol = o.lp_tol;
  sml::SolveInfo info;
  sml::LpSolution sol = sml::solve_tlp(ex.instance, bench, opts, &info);
  std::cout << "benchmark=" << sml::to_string(bench) << " objective=" << sml::fmt9(sol.objective)
            << " cuts=" << info.cuts.size() << " rounds=" << info.rounds << "\n";
  std::cerr << "solve time: " << sml::fmt9(info.seconds) << "s\n";
  if (!o.out.empty())
    write_file(o.out, "solution.json", sml::solution_to_json(ex.instance, sol).dump(2) + "\n");
  return 0;
}

int cmd_simulate(const Options& o) {
  sml::BuiltinExample ex = resolve_instance(o);
  const sml::ProblemInstance& inst = ex.instance;
  sml::Benchmark bench = sml::parse_benchmark(o.benchmark);
  if (o.reps < 1) throw std::invalid_argument("--reps must be >= 1");

  std::vector<std::pair<sml::PolicyKind, sml::Policy>> runs;
  for (const std::string& name : o.policies.empty() ? std::vector<std::string>{"correlated"}
                                                    : o.policies) {
    if (name == "correlated") {
      sml::LpSolution sol = resolve_solution(o, ex, bench);
      runs.emplace_back(sml::PolicyKind::CORRELATED_PROPOSALS,
                        sml::Policy::correlated(sml::proposal_probabilities(inst, sol)));
    } else if (name == "balanced-greedy") {
      runs.emplace_back(sml::PolicyKind::BALANCED_GREEDY, sml::Policy::balanced_greedy());
    } else if (name == "greedy") {
      runs.emplace_back(sml::PolicyKind::GREEDY_MAX_REWARD, sml::Policy::greedy_max_reward());
    } else if (name == "no-match") {
      runs.emplace_back(sml::PolicyKind::NO_MATCH, sml::Policy::no_match());
    } else {
      throw std::invalid_argument("unknown policy: " + name);
    }
  }

  std::string csv = sml::sim_csv_header() + "\n";
  for (auto& [kind, policy] : runs) {
    std::vector<sml::SimEstimate> reps(o.reps);
    sml::parallel_for(o.reps, sml::resolve_threads(0), [&](int r) {
      sml::SimParams params;
      params.horizon = o.horizon;
      params.burn_in = o.burnin;
      params.seed = sml::derive_seed(o.seed, static_cast<std::uint64_t>(r));
      reps[r] = sml::simulate(inst, policy, params);
    });
    for (int r = 0; r < o.reps; ++r) csv += sml::sim_csv_row(kind, reps[r], r) + "\n";
  }
  std::cout << csv;
  if (!o.out.empty()) write_file(o.out, "simulate.csv", csv);
  return 0;
}

int cmd_classify(const Options& o) {
  sml::BuiltinExample ex = resolve_instance(o);
  sml::LpSolution sol = resolve_solution(o, ex, sml::Benchmark::ONLINE);
  sml::Classification cls =
      sml::classify(ex.instance, sol, o.epsilon, o.epsilon_prime);
  std::string csv = "type_id,verdict,r_threshold,gain_share\n";
  for (int j = 0; j < ex.instance.n_online(); ++j) {
    const auto& tc = cls.per_type[j];
    csv += std::to_string(j);
    csv += std::string(",") + sml::to_string(tc.verdict);
    csv += "," + sml::fmt9(tc.r_threshold);
    csv += "," + sml::fmt9(tc.gain_share) + "\n";
  }
  std::cout << csv;
  std::cout << (sml::is_vwhc(cls) ? "vwhc=true\n" : "vwhc=false\n");
  if (!o.out.empty()) write_file(o.out, "classify.csv", csv);
  return 0;
}

int cmd_experiment(const Options& o) {
  sml::ExperimentOptions opts;
  opts.seed = o.seed;
  std::vector<sml::CriterionResult> results = sml::run_suite(o.suite, opts);
  std::string report = sml::format_results(results);
  std::cout << report;
  for (const auto& r : results)
    std::cerr << "# criterion " << r.id << " " << r.name << ": " << sml::fmt9(r.seconds)
              << "s\n";
  if (!o.out.empty()) write_file(o.out, "experiment.txt", report);
  return sml::all_pass(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stationary online matching: LP bounds, policies, simulation"};
  app.require_subcommand(1);
  Options o;

  auto add_instance_flags = [&](CLI::App* c) {
    c->add_option("--instance", o.instance, "instance JSON path or builtin {b1,b2,b3}")
        ->required();
    c->add_option("--n", o.n, "builtin size parameter (default 50)");
  };
  auto add_solution_flags = [&](CLI::App* c) {
    c->add_option("--solution", o.solution_path, "load LP solution JSON instead of solving");
    c->add_flag("--canonical", o.canonical, "use the builtin's canonical solution");
    c->add_option("--lp-tol", o.lp_tol, "cutting-plane violation tolerance (default 1e-7)");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the LP relaxation, print the objective");
  add_instance_flags(solve);
  solve->add_option("--benchmark", o.benchmark, "online|offline (default online)");
  solve->add_option("--lp-tol", o.lp_tol, "cutting-plane violation tolerance (default 1e-7)");
  solve->add_option("--out", o.out, "directory for solution.json");

  CLI::App* sim = app.add_subcommand("simulate", "simulate policies, print CSV estimates");
  add_instance_flags(sim);
  add_solution_flags(sim);
  sim->add_option("--benchmark", o.benchmark, "solution benchmark for correlated proposals");
  sim->add_option("--policy", o.policies,
                  "correlated|balanced-greedy|greedy|no-match (repeatable)");
  sim->add_option("--horizon", o.horizon, "simulated time span (default 1e4)");
  sim->add_option("--burnin", o.burnin, "warm-up span excluded from stats (default 20%)");
  sim->add_option("--reps", o.reps, "independent replications (default 1)");
  sim->add_option("--seed", o.seed, "base seed; replication r uses a derived stream");
  sim->add_option("--out", o.out, "directory for simulate.csv");

  CLI::App* cls = app.add_subcommand("classify", "classify online types, report VWHC verdict");
  add_instance_flags(cls);
  add_solution_flags(cls);
  cls->add_option("--epsilon", o.epsilon, "hardness tolerance in (0, 0.1), default 0.05");
  cls->add_option("--epsilon-prime", o.epsilon_prime,
                  "proposal floor tolerance in (0, 0.1), default 0.05");
  cls->add_option("--out", o.out, "directory for classify.csv");

  CLI::App* exp = app.add_subcommand("experiment", "run a validation suite");
  exp->add_option("suite", o.suite,
                  "approx|competitive|weak-chains|ablation-b1|example-b2|example-b3|all");
  exp->add_option("--seed", o.seed, "base seed for the suite");
  exp->add_option("--out", o.out, "directory for experiment.txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(o);
    if (sim->parsed()) return cmd_simulate(o);
    if (cls->parsed()) return cmd_classify(o);
    return cmd_experiment(o);
  } catch (const sml::NonconvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
