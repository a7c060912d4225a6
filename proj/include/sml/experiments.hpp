#pragma once
// experiments.hpp -- the validation suite behind `sml experiment`: thirteen
// numbered checks covering the separation oracle, the sampler, the LP
// solver, the closed-form bounds, and the simulation targets. Each check
// returns a PASS/FAIL record with the measured values; suites group them for
// the CLI.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sml/analytics.hpp"
#include "sml/builtins.hpp"
#include "sml/format.hpp"
#include "sml/instance.hpp"
#include "sml/lp.hpp"
#include "sml/pivotal.hpp"
#include "sml/rng.hpp"
#include "sml/simulator.hpp"

namespace sml {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

struct ExperimentOptions {
  std::uint64_t seed = 7;
  int threads = 0;  // 0 -> resolve_threads()
};

// Flow / PASTA / availability bookkeeping across the policy simulations of
// the statistical checks (criterion 12 aggregates it).
struct ConsistencyLog {
  int runs = 0;
  int flow_checked = 0, flow_failed = 0;
  int pasta_checked = 0, pasta_failed = 0;
  int avail_checked = 0, avail_failed = 0;
  double worst_flow_z = 0.0, worst_pasta_z = 0.0, worst_avail_z = 0.0;
  std::vector<std::string> failures;

  void add(const ProblemInstance& inst, const SimEstimate& est, const std::string& context) {
    ++runs;
    const double guard = 1e-9;
    for (int i = 0; i < inst.n_offline(); ++i) {
      double diff = std::abs(est.flow_rate[i] - inst.offline[i].lambda);
      double ci = est.flow_rate_ci[i];
      ++flow_checked;
      worst_flow_z = std::max(worst_flow_z, diff / std::max(ci, guard));
      if (diff > 3 * ci + guard) {
        ++flow_failed;
        failures.push_back(context + ": flow offline " + std::to_string(i) + " diff=" +
                           fmt9(diff) + " ci=" + fmt9(ci));
      }
    }
    for (int j = 0; j < inst.n_online(); ++j) {
      if (!(est.online_arrival_rate[j] > 0)) continue;
      // PASTA: matched fraction times gamma against the batch-means match
      // rate; arrival noise enters through the shared counts.
      double phat = est.per_online_match_prob[j];
      double diff = std::abs(phat * inst.online[j].gamma - est.online_match_rate[j]);
      double ci = std::sqrt(est.pasta_ci[j] * est.pasta_ci[j] +
                            phat * phat * est.online_arrival_rate_ci[j] *
                                est.online_arrival_rate_ci[j]);
      ++pasta_checked;
      worst_pasta_z = std::max(worst_pasta_z, diff / std::max(ci, guard));
      if (diff > 3 * ci + guard) {
        ++pasta_failed;
        failures.push_back(context + ": pasta online " + std::to_string(j) + " diff=" +
                           fmt9(diff) + " ci=" + fmt9(ci));
      }
      std::vector<int> nbr;
      for (int k : inst.online_adj(j)) nbr.push_back(inst.edges[k].i);
      if (nbr.empty()) continue;
      double excess = est.online_match_rate[j] -
                      inst.online[j].gamma * availability_upper_bound(inst, nbr);
      double aci = est.online_match_rate_ci[j];
      ++avail_checked;
      worst_avail_z = std::max(worst_avail_z, excess / std::max(aci, guard));
      if (excess > 3 * aci + guard) {
        ++avail_failed;
        failures.push_back(context + ": availability online " + std::to_string(j) +
                           " excess=" + fmt9(excess) + " ci=" + fmt9(aci));
      }
    }
  }
  bool all_pass() const {
    return runs > 0 && flow_failed == 0 && pasta_failed == 0 && avail_failed == 0;
  }
};

namespace detail {

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

inline ProblemInstance single_online_instance(RngStream& rng, int max_offline) {
  ProblemInstance inst;
  int nI = 1 + rng.uniform_int(max_offline);
  for (int i = 0; i < nI; ++i)
    inst.offline.push_back({i, rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0), Section::NONE});
  inst.online.push_back({0, rng.uniform(0.2, 3.0)});
  for (int i = 0; i < nI; ++i) inst.edges.push_back({i, 0, 1.0});
  inst.finalize();
  return inst;
}

// Random full-bipartite ensemble shared by the approximation and competitive
// checks (sizes <= 8, rates in [0.2, 3], rewards in [0, 10]).
inline std::vector<ProblemInstance> random_ensemble(std::uint64_t seed, int count) {
  RngStream rng(seed);
  std::vector<ProblemInstance> out;
  for (int t = 0; t < count; ++t) {
    ProblemInstance inst;
    int nI = 1 + rng.uniform_int(8), nJ = 1 + rng.uniform_int(8);
    for (int i = 0; i < nI; ++i)
      inst.offline.push_back({i, rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0), Section::NONE});
    for (int j = 0; j < nJ; ++j) inst.online.push_back({j, rng.uniform(0.2, 3.0)});
    for (int i = 0; i < nI; ++i)
      for (int j = 0; j < nJ; ++j) inst.edges.push_back({i, j, rng.uniform(0.0, 10.0)});
    inst.finalize();
    out.push_back(std::move(inst));
  }
  return out;
}

inline std::string pass_word(bool b) { return b ? "[PASS]" : "[FAIL]"; }

}  // namespace detail

// 1. The prefix separation oracle finds the exact maximum-violation subset
// (brute force over all 2^|I| subsets on random data).
inline CriterionResult criterion_oracle_exactness(const ExperimentOptions& opts) {
  detail::Stopwatch sw;
  RngStream rng(derive_seed(opts.seed, 101));
  double worst = 0.0;
  int checked = 0;
  bool ok = true;
  for (int t = 0; t < 200 && ok; ++t) {
    ProblemInstance inst = detail::single_online_instance(rng, 12);
    const int nI = inst.n_offline();
    std::vector<double> x(inst.n_edges());
    for (int k = 0; k < inst.n_edges(); ++k)
      x[k] = rng.uniform01() * inst.offline[inst.edges[k].i].lambda;
    auto res = separation_oracle(inst, x, 0, -1e300);
    double brute = -1e300;
    std::vector<int> H;
    for (unsigned mask = 1; mask < (1u << nI); ++mask) {
      H.clear();
      double sx = 0.0;
      for (int i = 0; i < nI; ++i)
        if (mask & (1u << i)) {
          H.push_back(i);
          sx += x[inst.edge_index(i, 0)];
        }
      brute = std::max(brute, sx - subset_cap(inst, 0, H));
    }
    ++checked;
    double diff = res ? std::abs(res->violation - brute) : 1.0;
    worst = std::max(worst, diff);
    if (diff > 1e-10) ok = false;
  }
  double sec = sw.seconds();
  std::string details = "pairs=" + std::to_string(checked) + " worst_gap=" + fmt9(worst) +
                        " (tol 1e-10, limit 10s)";
  if (sec >= 10.0) details += " time_exceeded";
  return {1, "separation-oracle-exactness", ok && sec < 10.0, details, sec};
}

// 2. Pivotal sampling: exact marginals, prefix-hit probabilities min(1, S_k),
// and the hard cardinality cap, over 50 random marginal vectors.
inline CriterionResult criterion_pivotal_properties(const ExperimentOptions& opts) {
  detail::Stopwatch sw;
  RngStream rng(derive_seed(opts.seed, 102));
  const int N = 100000;
  bool ok = true;
  double worst_z = 0.0;
  int card_violations = 0;
  for (int t = 0; t < 50 && ok; ++t) {
    int len = 1 + rng.uniform_int(8);
    std::vector<double> m(len);
    for (double& v : m) {
      double u = rng.uniform01();
      v = u < 0.15 ? 0.0 : (u < 0.25 ? 1.0 : rng.uniform01());
    }
    pivotal::detail::CompensatedSum total;
    std::vector<double> prefix(len);
    for (int k = 0; k < len; ++k) {
      total.add(m[k]);
      prefix[k] = std::min(1.0, std::max(0.0, total.value()));
    }
    const int cap = static_cast<int>(std::ceil(std::max(0.0, total.value())));
    std::vector<long long> sel(len, 0), hit(len, 0);
    for (int d = 0; d < N; ++d) {
      auto S = pivotal::sample(m, rng);
      if (static_cast<int>(S.size()) > cap) ++card_violations;
      int first = len;
      for (int k : S) {
        ++sel[k];
        first = std::min(first, k);
      }
      for (int k = first; k < len; ++k) ++hit[k];
    }
    for (int k = 0; k < len && ok; ++k) {
      auto check = [&](double freq, double target) {
        if (target <= 0.0 || target >= 1.0) {
          if (freq != target) ok = false;
          return;
        }
        double se = std::sqrt(target * (1 - target) / N);
        worst_z = std::max(worst_z, std::abs(freq - target) / se);
        if (std::abs(freq - target) > 4 * se) ok = false;
      };
      check(static_cast<double>(sel[k]) / N, m[k]);
      check(static_cast<double>(hit[k]) / N, prefix[k]);
    }
    if (card_violations > 0) ok = false;
  }
  double sec = sw.seconds();
  std::string details = "vectors=50 draws=1e5 worst_z=" + fmt9(worst_z) +
                        " (4 SE allowed) cardinality_violations=" +
                        std::to_string(card_violations) + " (limit 30s)";
  if (sec >= 30.0) details += " time_exceeded";
  return {2, "pivotal-sampling-properties", ok && sec < 30.0, details, sec};
}

// 3. Unmatched queues are Poisson in stationarity: TV distance of the
// simulated occupancy of a lambda=2, mu=1 queue to Pois(2).
inline CriterionResult criterion_birth_death_stationarity(const ExperimentOptions& opts) {
  detail::Stopwatch sw;
  ProblemInstance inst;
  inst.offline.push_back({0, 2.0, 1.0, Section::NONE});
  inst.finalize();
  SimParams params;
  params.horizon = 1e5;
  params.seed = derive_seed(opts.seed, 103);
  SimEstimate est = simulate(inst, Policy::no_match(), params);
  std::vector<double> pmf = PoissonPmf{2.0}.truncated();
  double tv = 0.0, mass = 0.0;
  size_t len = std::max(pmf.size(), est.queue_occupancy0.size());
  for (size_t k = 0; k < len; ++k) {
    double p = k < pmf.size() ? pmf[k] : 0.0;
    double q = k < est.queue_occupancy0.size() ? est.queue_occupancy0[k] : 0.0;
    tv += std::abs(p - q);
    mass += p;
  }
  tv = 0.5 * (tv + (1.0 - mass));
  bool ok = tv <= 0.02;
  return {3, "birth-death-stationarity", ok,
          "tv_distance=" + fmt9(tv) + " (tol 0.02) events=" + std::to_string(est.events),
          sw.seconds()};
}

// 4. Hand-solved 1x1 LP objectives: 0.5 (rate-constrained) and 1-1/e
// (availability-constrained).
inline CriterionResult criterion_lp_hand_solves(const ExperimentOptions&) {
  detail::Stopwatch sw;
  ProblemInstance inst;
  inst.offline.push_back({0, 1.0, 1.0, Section::NONE});
  inst.online.push_back({0, 1.0});
  inst.edges.push_back({0, 0, 1.0});
  inst.finalize();
  double on = solve_tlp(inst, Benchmark::ONLINE).objective;
  double off = solve_tlp(inst, Benchmark::OFFLINE).objective;
  double target_off = -std::expm1(-1.0);
  bool ok = std::abs(on - 0.5) <= 1e-6 && std::abs(off - target_off) <= 1e-6;
  return {4, "lp-hand-solves", ok,
          "online=" + fmt9(on) + " (target 0.5) offline=" + fmt9(off) + " (target " +
              fmt9(target_off) + ", tol 1e-6)",
          sw.seconds()};
}

// 5. Dropping the subset family (keeping singletons and the plain
// neighborhood cap) inflates the first built-in example's objective by
// about 1/(1-1/e).
inline CriterionResult criterion_ablation_b1(const ExperimentOptions&) {
  detail::Stopwatch sw;
  ProblemInstance inst = example_instance("b1", 50).instance;
  double full = solve_tlp(inst, Benchmark::ONLINE).objective;
  double abl = solve_tlp_ablated(inst).objective;
  double ratio = abl / full;
  double target = 1.0 / -std::expm1(-1.0) - 0.02;
  double sec = sw.seconds();
  bool ok = ratio >= target && sec < 5.0;
  std::string details = "full=" + fmt9(full) + " ablated=" + fmt9(abl) + " ratio=" +
                        fmt9(ratio) + " (need >= " + fmt9(target) + ", limit 5s)";
  if (sec >= 5.0) details += " time_exceeded";
  return {5, "tightening-ablation", ok, details, sec};
}

namespace detail {

// Shared engine for the two ratio criteria: simulate correlated proposals
// driven by `benchmark` solutions over the random ensemble and compare the
// reward rate against `factor` times the LP objective minus 3 CIs.
inline CriterionResult ratio_criterion(int id, const std::string& name, Benchmark benchmark,
                                       double factor, const ExperimentOptions& opts,
                                       std::uint64_t stream, ConsistencyLog* log) {
  Stopwatch sw;
  auto ensemble = random_ensemble(derive_seed(opts.seed, 106), 20);
  bool ok = true;
  double worst_margin = 1e300;
  int worst_idx = -1;
  for (size_t t = 0; t < ensemble.size(); ++t) {
    const ProblemInstance& inst = ensemble[t];
    LpSolution sol = solve_tlp(inst, benchmark);
    Policy policy = Policy::correlated(proposal_probabilities(inst, sol));
    SimParams params;
    params.horizon = 2e4 / inst.min_rate();
    params.seed = derive_seed(opts.seed, stream + t);
    RatioEstimate est = estimate_ratio(inst, policy, sol, 10, params, opts.threads);
    double margin = est.mean_reward_rate - (factor * sol.objective - 3 * est.reward_rate_ci);
    if (margin < worst_margin) {
      worst_margin = margin;
      worst_idx = static_cast<int>(t);
    }
    if (margin < 0) ok = false;
    if (log)
      for (size_t r = 0; r < est.reps.size(); ++r)
        log->add(inst, est.reps[r], name + " instance " + std::to_string(t) + " rep " +
                                        std::to_string(r));
  }
  return {id, name, ok,
          "instances=20 reps=10 factor=" + fmt9(factor) + " worst_margin=" + fmt9(worst_margin) +
              " (instance " + std::to_string(worst_idx) + ", need >= 0)",
          sw.seconds()};
}

}  // namespace detail

// 6. Correlated proposals driven by rate-constrained solutions earn at least
// (1-1/e) of the LP objective (minus 3 CIs) across the random ensemble.
inline CriterionResult criterion_approx_bound(const ExperimentOptions& opts,
                                              ConsistencyLog* log) {
  return detail::ratio_criterion(6, "approximation-bound", Benchmark::ONLINE, -std::expm1(-1.0),
                                 opts, 200, log);
}

// 7. Against the offline relaxation the same engine with availability-based
// proposals clears 1-1/sqrt(e).
inline CriterionResult criterion_competitive_bound(const ExperimentOptions& opts,
                                                   ConsistencyLog* log) {
  return detail::ratio_criterion(7, "competitive-bound", Benchmark::OFFLINE,
                                 -std::expm1(-0.5), opts, 300, log);
}

// 8. Closed-form empty probability of the independent chains on the second
// built-in example's canonical solution is 1/e up to o(1).
inline CriterionResult criterion_b2_analytic(const ExperimentOptions&) {
  detail::Stopwatch sw;
  BuiltinExample ex = example_instance("b2", 100);
  double v = indep_chain_empty_probability(ex.instance, *ex.canonical, 0);
  double sec = sw.seconds();
  double target = std::exp(-1.0);
  bool ok = std::abs(v - target) <= 0.01 && sec < 1e-3;
  std::string details =
      "value=" + fmt9(v) + " target=" + fmt9(target) + " (tol 0.01, limit 1ms)";
  if (sec >= 1e-3) details += " time_exceeded";
  return {8, "independent-chain-analytic", ok, details, sec};
}

// 9. Third built-in example, canonical solution: correlated proposals match
// the unit-reward type with probability near 1-(1-1/n)^n, while greedy with
// the zero-reward edges filtered gets close to 1.
inline CriterionResult criterion_b3_behavior(const ExperimentOptions& opts,
                                             ConsistencyLog* log) {
  detail::Stopwatch sw;
  const int n = 50;
  BuiltinExample ex = example_instance("b3", n);
  const ProblemInstance& inst = ex.instance;
  Policy alg1 = Policy::correlated(proposal_probabilities(inst, *ex.canonical));
  Policy pruned = Policy::greedy_max_reward();
  std::vector<char> keep(inst.n_edges());
  for (int k = 0; k < inst.n_edges(); ++k) keep[k] = inst.edges[k].r > 0;
  pruned.edge_filter = keep;

  SimParams pa;
  pa.horizon = 6000;
  pa.seed = derive_seed(opts.seed, 109);
  SimParams pb = pa;
  pb.seed = derive_seed(opts.seed, 110);
  SimEstimate ea, eb;
  parallel_for(2, resolve_threads(opts.threads), [&](int w) {
    if (w == 0)
      ea = simulate(inst, alg1, pa);
    else
      eb = simulate(inst, pruned, pb);
  });
  double target = 1.0 - std::pow(1.0 - 1.0 / n, n);
  double pa_prob = ea.per_online_match_prob[n];
  double pb_prob = eb.per_online_match_prob[n];
  bool ok = std::abs(pa_prob - target) <= 0.03 && pb_prob >= 0.95;
  if (log) {
    log->add(inst, ea, "b3 correlated");
    log->add(inst, eb, "b3 pruned greedy");
  }
  return {9, "zero-reward-congestion", ok,
          "correlated_match_prob=" + fmt9(pa_prob) + " (target " + fmt9(target) +
              " +- 0.03) pruned_greedy=" + fmt9(pb_prob) + " (need >= 0.95)",
          sw.seconds()};
}

namespace detail {

// The transformed high-connectivity instance used by the weak-chain checks:
// second built-in example at n=100, solver solution, default epsilons.
inline TransformedInstance weak_chain_witness() {
  ProblemInstance inst = example_instance("b2", 100).instance;
  LpSolution sol = solve_tlp(inst, Benchmark::ONLINE);
  return instance_transformation(inst, sol, 0.05, 0.05);
}

}  // namespace detail

// 10. Weakly correlated chains on the transformed witness: simulated
// Pr[TE_j] agrees with the closed form (which sits at e^{-1/2}), and the
// all-empty probability stays strictly below 1/e.
inline CriterionResult criterion_weak_chains(const ExperimentOptions& opts) {
  detail::Stopwatch sw;
  TransformedInstance t = detail::weak_chain_witness();
  double closed = weak_chain_te_probability(t, 0);
  SimParams params;
  params.horizon = 2e5;
  params.seed = derive_seed(opts.seed, 111);
  WeakChainEstimate est = simulate_weak_chains(t.instance, params);
  double te = est.te_prob[0], ci = est.te_ci[0];
  double empty = est.all_empty_prob[0];
  double ref = std::exp(-0.5), cap = std::exp(-1.0) - 0.005;
  bool ok = std::abs(te - closed) <= 3 * ci + 1e-9 && std::abs(te - ref) <= 0.05 &&
            empty < cap;
  return {10, "weakly-correlated-chains", ok,
          "te_sim=" + fmt9(te) + " ci=" + fmt9(ci) + " closed_form=" + fmt9(closed) +
              " (ref " + fmt9(ref) + ", tol 0.05) all_empty=" + fmt9(empty) + " (need < " +
              fmt9(cap) + ")",
          sw.seconds()};
}

// 11. Balanced greedy queues dominate the weak chains at the mean level,
// per offline copy, on the same witness and seeds.
inline CriterionResult criterion_dominance(const ExperimentOptions& opts, ConsistencyLog* log) {
  detail::Stopwatch sw;
  TransformedInstance t = detail::weak_chain_witness();
  SimParams params;
  params.horizon = 2e5;
  params.seed = derive_seed(opts.seed, 112);
  SimEstimate bg;
  WeakChainEstimate wc;
  parallel_for(2, resolve_threads(opts.threads), [&](int w) {
    if (w == 0)
      bg = simulate(t.instance, Policy::balanced_greedy(), params);
    else
      wc = simulate_weak_chains(t.instance, params);
  });
  double worst = 1e300;
  int worst_i = -1;
  for (int i = 0; i < t.instance.n_offline(); ++i) {
    double joint = std::sqrt(bg.mean_queue_ci[i] * bg.mean_queue_ci[i] +
                             wc.mean_queue_ci[i] * wc.mean_queue_ci[i]);
    double margin = bg.mean_queue[i] - (wc.mean_queue[i] - 3 * joint);
    if (margin < worst) {
      worst = margin;
      worst_i = i;
    }
  }
  if (log) log->add(t.instance, bg, "balanced greedy on witness");
  bool ok = worst >= 0;
  return {11, "dominance-mean-queues", ok,
          "types=" + std::to_string(t.instance.n_offline()) + " worst_margin=" + fmt9(worst) +
              " (type " + std::to_string(worst_i) + ", need >= 0)",
          sw.seconds()};
}

// 12. Flow conservation, PASTA consistency, and the availability cap across
// every policy simulation logged by the statistical checks.
inline CriterionResult criterion_consistency(const ConsistencyLog& log) {
  std::string details = "runs=" + std::to_string(log.runs) +
                        " flow=" + std::to_string(log.flow_checked - log.flow_failed) + "/" +
                        std::to_string(log.flow_checked) +
                        " pasta=" + std::to_string(log.pasta_checked - log.pasta_failed) + "/" +
                        std::to_string(log.pasta_checked) +
                        " availability=" + std::to_string(log.avail_checked - log.avail_failed) +
                        "/" + std::to_string(log.avail_checked) +
                        " worst_z flow/pasta/avail=" + fmt9(log.worst_flow_z) + "/" +
                        fmt9(log.worst_pasta_z) + "/" + fmt9(log.worst_avail_z) + " (3 allowed)";
  if (!log.failures.empty()) details += " first_failure{" + log.failures.front() + "}";
  return {12, "flow-pasta-consistency", log.all_pass(), details, 0.0};
}

// 13. The transformed-solution inequalities hold on both transformation
// witnesses (third example's canonical solution and the weak-chain witness).
inline CriterionResult criterion_transform_inequalities(const ExperimentOptions&) {
  detail::Stopwatch sw;
  BuiltinExample b3 = example_instance("b3", 50);
  TransformedInstance t3 = instance_transformation(b3.instance, *b3.canonical, 0.05, 0.05);
  std::vector<std::string> v3 = check_transformed(t3);
  TransformedInstance t2 = detail::weak_chain_witness();
  std::vector<std::string> v2 = check_transformed(t2);
  bool ok = v3.empty() && v2.empty();
  std::string details = "witnesses=2 violations=" + std::to_string(v3.size() + v2.size());
  if (!v3.empty()) details += " first{" + v3.front() + "}";
  else if (!v2.empty()) details += " first{" + v2.front() + "}";
  return {13, "transformation-inequalities", ok, details, sw.seconds()};
}

// ---------------------------------------------------------------------------
// Suites.

inline std::vector<std::string> suite_names() {
  return {"approx", "competitive", "weak-chains", "ablation-b1", "example-b2", "example-b3",
          "all"};
}

inline std::vector<CriterionResult> run_all(const ExperimentOptions& opts) {
  ConsistencyLog log;
  std::vector<CriterionResult> out;
  out.push_back(criterion_oracle_exactness(opts));
  out.push_back(criterion_pivotal_properties(opts));
  out.push_back(criterion_birth_death_stationarity(opts));
  out.push_back(criterion_lp_hand_solves(opts));
  out.push_back(criterion_ablation_b1(opts));
  out.push_back(criterion_approx_bound(opts, &log));
  out.push_back(criterion_competitive_bound(opts, &log));
  out.push_back(criterion_b2_analytic(opts));
  out.push_back(criterion_b3_behavior(opts, &log));
  out.push_back(criterion_weak_chains(opts));
  out.push_back(criterion_dominance(opts, &log));
  out.push_back(criterion_consistency(log));
  out.push_back(criterion_transform_inequalities(opts));
  return out;
}

inline std::vector<CriterionResult> run_suite(const std::string& name,
                                              const ExperimentOptions& opts) {
  if (name == "all") return run_all(opts);
  ConsistencyLog log;
  std::vector<CriterionResult> out;
  if (name == "approx") {
    out.push_back(criterion_approx_bound(opts, &log));
    out.push_back(criterion_consistency(log));
  } else if (name == "competitive") {
    out.push_back(criterion_competitive_bound(opts, &log));
    out.push_back(criterion_consistency(log));
  } else if (name == "weak-chains") {
    out.push_back(criterion_weak_chains(opts));
    out.push_back(criterion_dominance(opts, &log));
    out.push_back(criterion_consistency(log));
    out.push_back(criterion_transform_inequalities(opts));
  } else if (name == "ablation-b1") {
    out.push_back(criterion_ablation_b1(opts));
  } else if (name == "example-b2") {
    out.push_back(criterion_b2_analytic(opts));
  } else if (name == "example-b3") {
    out.push_back(criterion_b3_behavior(opts, &log));
    out.push_back(criterion_consistency(log));
  } else {
    throw std::invalid_argument("unknown experiment suite: " + name);
  }
  return out;
}

inline bool all_pass(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

inline std::string format_results(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const auto& r : results)
    out += detail::pass_word(r.pass) + (" criterion " + std::to_string(r.id)) + " " + r.name +
           ": " + r.details + "\n";
  return out;
}

}  // namespace sml
