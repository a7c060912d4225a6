#pragma once
// analytics.hpp -- closed-form bounds, online-type classification, the
// hard-instance transformation, and weakly-correlated-chain formulas.
//
// Classification (parameters epsilon, epsilon') sorts each online type into
// one of three easy cases or HARD:
//   case 1: unsaturated, sum_i x_{i,j} <= (1-eps) gamma_j;
//   case 2: no reward window [w, (1+eps)w] carries a (1-eps) share of the
//           type's LP gain;
//   case 3: edges with proposal probability <= 1-eps carry at least
//           eps*gamma_j of match mass.
// HARD demands both (i) some window [r_j, (1+eps) r_j] carries a (1-eps)
// gain share and (ii) within that window, edges with proposal probability
// >= 1-eps' carry a 1-2eps' fraction of gamma_j. A type matching neither a
// case nor the HARD definition is reported HARD with a diagnostic flag.
//
// The transformation keeps only HARD online types, drops edges outside the
// reward window or below the proposal-probability floor, splits every
// offline type into balanced TOP/BOT halves, and halves the LP solution.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sml/instance.hpp"
#include "sml/lp.hpp"

namespace sml {

// ---------------------------------------------------------------------------
// Birth-death stationary distribution: constant birth rate lambda, death rate
// k*mu in state k, i.e. Poisson(lambda/mu) in equilibrium.

struct PoissonPmf {
  double rate = 0.0;
  double pmf(int k) const {
    if (k < 0) return 0.0;
    return std::exp(k * std::log(rate) - rate - std::lgamma(k + 1.0));
  }
  double mean() const { return rate; }
  // Shortest prefix 0..K whose mass is >= 1 - tail_eps.
  std::vector<double> truncated(double tail_eps = 1e-12) const {
    std::vector<double> out;
    double acc = 0.0, p = std::exp(-rate);
    for (int k = 0; acc < 1.0 - tail_eps && k < 100000000; ++k) {
      out.push_back(p);
      acc += p;
      p *= rate / (k + 1);
    }
    return out;
  }
};

inline PoissonPmf birth_death_stationary(double lambda, double mu) {
  if (!(lambda > 0) || !(mu > 0))
    throw std::invalid_argument("birth_death_stationary: rates must be > 0");
  return PoissonPmf{lambda / mu};
}

// ---------------------------------------------------------------------------
// Closed-form bounds.

// Probability that some offline type in H is present in equilibrium, upper
// bounded by 1 - exp(-sum_{i in H} lambda_i/mu_i).
inline double availability_upper_bound(const ProblemInstance& inst, const std::vector<int>& H) {
  if (H.empty()) throw std::invalid_argument("availability_upper_bound: empty subset");
  double s = 0.0;
  for (int i : H) {
    if (i < 0 || i >= inst.n_offline())
      throw std::invalid_argument("availability_upper_bound: unknown offline id " +
                                  std::to_string(i));
    s += inst.offline[i].lambda / inst.offline[i].mu;
  }
  return -std::expm1(-std::min(s, 700.0));
}

// Lower bound on the probability that an arrival of online type j is matched
// at reward >= w under correlated proposals: 1 - exp(-sum_{r_{i,j} >= w}
// x_{i,j}/gamma_j).
inline double match_prob_lower_bound(const ProblemInstance& inst, const LpSolution& sol, int j,
                                     double w) {
  if (j < 0 || j >= inst.n_online())
    throw std::invalid_argument("match_prob_lower_bound: unknown online id " + std::to_string(j));
  double s = 0.0;
  for (int k : inst.online_adj(j))
    if (inst.edges[k].r >= w) s += sol.x_match[k] / inst.online[j].gamma;
  return -std::expm1(-std::min(s, 700.0));
}

// Lower bound on the long-run reward rate of correlated proposals driven by a
// feasible ONLINE solution: per online type, the exact piecewise integral of
// the tail bound above over reward levels. Always >= (1 - 1/e) * lp_gain up
// to rounding, with equality gap shrinking as mass concentrates.
inline double alg1_reward_lower_bound(const ProblemInstance& inst, const LpSolution& sol) {
  pivotal::detail::CompensatedSum total;
  for (int j = 0; j < inst.n_online(); ++j) {
    const auto& adj = inst.online_adj(j);
    std::vector<std::pair<double, double>> by_reward;  // (r, x/gamma), r > 0
    for (int k : adj)
      if (inst.edges[k].r > 0)
        by_reward.emplace_back(inst.edges[k].r, sol.x_match[k] / inst.online[j].gamma);
    if (by_reward.empty()) continue;
    std::sort(by_reward.begin(), by_reward.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    double s = 0.0, per_arrival = 0.0;
    for (size_t k = 0; k < by_reward.size(); ++k) {
      s += by_reward[k].second;
      while (k + 1 < by_reward.size() && by_reward[k + 1].first == by_reward[k].first)
        s += by_reward[++k].second;
      double next_level = k + 1 < by_reward.size() ? by_reward[k + 1].first : 0.0;
      per_arrival += (by_reward[k].first - next_level) * -std::expm1(-std::min(s, 700.0));
    }
    total.add(inst.online[j].gamma * per_arrival);
  }
  return total.value();
}

// Stationary probability that every queue in j's neighborhood is empty when
// each evolves as an independent birth-death chain with arrival rate x_{i,a}
// and per-item departure rate mu_i: exp(-sum_{i in N_j} x_{i,a}/mu_i).
inline double indep_chain_empty_probability(const ProblemInstance& inst, const LpSolution& sol,
                                            int j) {
  if (j < 0 || j >= inst.n_online())
    throw std::invalid_argument("indep_chain_empty_probability: unknown online id " +
                                std::to_string(j));
  double s = 0.0;
  for (int k : inst.online_adj(j)) {
    int i = inst.edges[k].i;
    s += sol.x_abandon[i] / inst.offline[i].mu;
  }
  return std::exp(-std::min(s, 700.0));
}

// ---------------------------------------------------------------------------
// Classification.

enum class Verdict { EASY_CASE1, EASY_CASE2, EASY_CASE3, HARD };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::EASY_CASE1: return "EASY_CASE1";
    case Verdict::EASY_CASE2: return "EASY_CASE2";
    case Verdict::EASY_CASE3: return "EASY_CASE3";
    default: return "HARD";
  }
}

struct TypeClassification {
  Verdict verdict = Verdict::EASY_CASE1;
  bool def_condition_i = false;   // some reward window carries a (1-eps) gain share
  bool def_condition_ii = false;  // window mass sits on proposal prob >= 1-eps'
  bool flagged = false;           // HARD by fallthrough, not by definition
  double r_threshold = 0.0;       // base of the best reward window
  double gain = 0.0;              // LP gain of this online type
  double gain_share = 0.0;        // gain / total LP gain (0 when total is 0)
};

struct Classification {
  double epsilon = 0.05, epsilon_prime = 0.05;
  std::vector<TypeClassification> per_type;
};

namespace detail {

inline void check_epsilon(double eps, const char* what) {
  if (!(eps > 0.0 && eps < 0.1))
    throw std::invalid_argument(std::string(what) + " must lie in (0, 0.1), got " +
                                std::to_string(eps));
}

// Window membership r in [w, (1+eps) w], with 1-ulp-scale slack at the upper
// boundary because candidates of the form r/(1+eps) reconstruct r inexactly.
inline bool in_reward_window(double r, double w, double eps) {
  return r >= w && r <= w * (1 + eps) * (1 + 1e-12);
}

}  // namespace detail

// Classifies every online type against a feasible ONLINE solution.
inline Classification classify(const ProblemInstance& inst, const LpSolution& sol,
                               double epsilon = 0.05, double epsilon_prime = 0.05) {
  detail::check_epsilon(epsilon, "epsilon");
  detail::check_epsilon(epsilon_prime, "epsilon_prime");
  if (sol.benchmark != Benchmark::ONLINE)
    throw std::invalid_argument("classify: requires an ONLINE-benchmark solution");
  const ProposalMatrix prop = proposal_probabilities(inst, sol);
  Classification out;
  out.epsilon = epsilon;
  out.epsilon_prime = epsilon_prime;
  out.per_type.resize(inst.n_online());

  double total_gain = lp_gain(inst, sol);
  for (int j = 0; j < inst.n_online(); ++j) {
    TypeClassification& tc = out.per_type[j];
    const auto& adj = inst.online_adj(j);
    const double gamma = inst.online[j].gamma;

    pivotal::detail::CompensatedSum gain_sum, mass_sum;
    for (int k : adj) {
      gain_sum.add(inst.edges[k].r * sol.x_match[k]);
      mass_sum.add(sol.x_match[k]);
    }
    tc.gain = gain_sum.value();
    tc.gain_share = total_gain > 0 ? tc.gain / total_gain : 0.0;

    // Candidate window bases: 0, every edge reward, and every reward shifted
    // down by (1+eps). The windowed gain, as a function of the base w, only
    // changes at these points, so the maximum over all w is attained here.
    std::vector<double> candidates{0.0};
    for (int k : adj)
      if (inst.edges[k].r > 0) {
        candidates.push_back(inst.edges[k].r);
        candidates.push_back(inst.edges[k].r / (1 + epsilon));
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    double best_windowed = -1.0, best_w = 0.0;
    for (double w : candidates) {
      pivotal::detail::CompensatedSum ws;
      for (int k : adj)
        if (detail::in_reward_window(inst.edges[k].r, w, epsilon))
          ws.add(inst.edges[k].r * sol.x_match[k]);
      if (ws.value() > best_windowed) {  // ties keep the smallest base
        best_windowed = ws.value();
        best_w = w;
      }
    }
    tc.r_threshold = best_w;
    tc.def_condition_i = best_windowed >= (1 - epsilon) * tc.gain;

    double window_high_p_mass = 0.0;
    for (int k : adj)
      if (detail::in_reward_window(inst.edges[k].r, best_w, epsilon) &&
          prop.p[k] >= 1 - epsilon_prime)
        window_high_p_mass += sol.x_match[k];
    tc.def_condition_ii = window_high_p_mass / gamma >= 1 - 2 * epsilon_prime;

    const bool case1 = mass_sum.value() <= (1 - epsilon) * gamma;
    const bool case2 = best_windowed < (1 - epsilon) * tc.gain;
    double low_p_mass = 0.0;
    for (int k : adj)
      if (prop.p[k] <= 1 - epsilon) low_p_mass += sol.x_match[k];
    const bool case3 = low_p_mass >= epsilon * gamma;

    if (tc.def_condition_i && tc.def_condition_ii) {
      tc.verdict = Verdict::HARD;
    } else if (case1) {
      tc.verdict = Verdict::EASY_CASE1;
    } else if (case2) {
      tc.verdict = Verdict::EASY_CASE2;
    } else if (case3) {
      tc.verdict = Verdict::EASY_CASE3;
    } else {
      tc.verdict = Verdict::HARD;  // no guarantee applies; surfaced for diagnosis
      tc.flagged = true;
    }
  }
  return out;
}

// Vast-weakly-hard check: non-HARD online types carry less than an epsilon
// share of the total LP gain.
inline bool is_vwhc(const Classification& cls) {
  double total = 0.0, easy = 0.0;
  for (const auto& tc : cls.per_type) {
    total += tc.gain;
    if (tc.verdict != Verdict::HARD) easy += tc.gain;
  }
  return easy < cls.epsilon * total;
}

// ---------------------------------------------------------------------------
// Instance transformation.

struct TransformedInstance {
  ProblemInstance instance;  // TOP/BOT labeled; HARD online types only, reindexed
  LpSolution sol;            // halved solution on the surviving split edges
  double dropped_gain = 0.0;
  std::vector<int> online_orig_ids;   // transformed j -> original online id
  std::vector<double> r_threshold;    // per transformed j
  std::vector<double> gamma_support;  // per split offline copy: total gamma over the
                                      // ORIGINAL solution-support neighborhood
  double epsilon = 0.05, epsilon_prime = 0.05;
};

// Keeps HARD online types only; per kept type drops edges outside
// [r_j, (1+eps) r_j] or with proposal probability below 1-eps'; then splits
// offline types into TOP/BOT halves and halves the solution. Abandonment
// rates are kept (halved) as-is, so flow conservation becomes an upper bound
// on the transformed instance. Errors if classification leaves nothing.
inline TransformedInstance instance_transformation(const ProblemInstance& inst,
                                                   const LpSolution& sol, double epsilon = 0.05,
                                                   double epsilon_prime = 0.05) {
  const Classification cls = classify(inst, sol, epsilon, epsilon_prime);
  const ProposalMatrix prop = proposal_probabilities(inst, sol);

  TransformedInstance out;
  out.epsilon = epsilon;
  out.epsilon_prime = epsilon_prime;

  ProblemInstance pruned;
  pruned.offline = inst.offline;
  pruned.offline_names = inst.offline_names;
  std::vector<double> kept_x;  // parallel to pruned.edges, original (unhalved) rates
  for (int j = 0; j < inst.n_online(); ++j) {
    if (cls.per_type[j].verdict != Verdict::HARD) continue;
    int new_j = pruned.n_online();
    pruned.online.push_back({new_j, inst.online[j].gamma});
    pruned.online_names.push_back(inst.online_names[j]);
    out.online_orig_ids.push_back(j);
    out.r_threshold.push_back(cls.per_type[j].r_threshold);
    for (int k : inst.online_adj(j)) {
      const Edge& e = inst.edges[k];
      if (!detail::in_reward_window(e.r, cls.per_type[j].r_threshold, epsilon)) continue;
      if (prop.p[k] < 1 - epsilon_prime) continue;
      pruned.edges.push_back({e.i, new_j, e.r});
      kept_x.push_back(sol.x_match[k]);
    }
  }
  if (pruned.online.empty())
    throw std::domain_error("instance transformation removed every online type");
  pivotal::detail::CompensatedSum kept_gain;
  for (size_t k = 0; k < kept_x.size(); ++k) kept_gain.add(pruned.edges[k].r * kept_x[k]);
  out.dropped_gain = lp_gain(inst, sol) - kept_gain.value();

  // Total gamma over each original offline type's solution-support
  // neighborhood; the transformed-instance inequalities are stated against
  // this pre-removal quantity.
  std::vector<double> support_gamma(inst.n_offline(), 0.0);
  for (int i = 0; i < inst.n_offline(); ++i) {
    std::set<int> support;
    for (int k : inst.offline_adj(i))
      if (sol.x_match[k] > 0) support.insert(inst.edges[k].j);
    for (int j : support) support_gamma[i] += inst.online[j].gamma;
  }

  // Edge order before finalize() is (j, then i); remember each edge's pair so
  // the split instance's reindexed edges can be matched back.
  std::vector<std::pair<std::pair<int, int>, double>> pruned_edge_x;
  for (size_t k = 0; k < kept_x.size(); ++k)
    pruned_edge_x.push_back({{pruned.edges[k].i, pruned.edges[k].j}, kept_x[k]});

  pruned.finalize();
  out.instance = top_bot_split(pruned);

  const int n = inst.n_offline();
  out.sol.benchmark = sol.benchmark;
  out.sol.x_match.assign(out.instance.n_edges(), 0.0);
  out.sol.x_abandon.assign(out.instance.n_offline(), 0.0);
  out.gamma_support.assign(out.instance.n_offline(), 0.0);
  for (int copy = 0; copy < out.instance.n_offline(); ++copy) {
    int orig_i = copy % n;
    out.sol.x_abandon[copy] = sol.x_abandon[orig_i] / 2;
    out.gamma_support[copy] = support_gamma[orig_i];
  }
  for (const auto& [pair_ij, x] : pruned_edge_x) {
    for (int pass = 0; pass < 2; ++pass) {
      int k = out.instance.edge_index(pass * n + pair_ij.first, pair_ij.second);
      if (k < 0) throw std::logic_error("transformation lost a split edge");
      out.sol.x_match[k] = x / 2;
    }
  }
  out.sol.objective = lp_gain(out.instance, out.sol);
  return out;
}

// Verifies the structural guarantees of a transformed instance; returns
// human-readable violations (empty = all hold).
//   abandonment balance, per online j:
//         sum_{i in N_j} x_{i,a}/mu_i in [1-eps', 1/(1-eps')]
//   match-rate band, per surviving edge:
//         (1-eps') gamma_j lambda_i / (mu_i + Gamma_i)
//         <= x_{i,j} <= gamma_j lambda_i / ((1-eps')(mu_i + Gamma_i))
//   abandonment band, per incident copy:
//         mu_i lambda_i / (mu_i + Gamma_i)
//         <= x_{i,a} <= mu_i lambda_i / ((1-eps')(mu_i + Gamma_i))
// with Gamma_i the pre-removal support gamma; plus TOP/BOT balance per j to
// 1e-12, the reward-window and proposal-floor edge properties, and halved-
// solution feasibility (flow as an upper bound).
inline std::vector<std::string> check_transformed(const TransformedInstance& t) {
  std::vector<std::string> out;
  const ProblemInstance& inst = t.instance;
  const LpSolution& sol = t.sol;
  const double ep = t.epsilon_prime;
  const double slack = 1e-12;

  for (int j = 0; j < inst.n_online(); ++j) {
    double s_abandon = 0.0, ratio_all = 0.0, ratio_top = 0.0;
    for (int k : inst.online_adj(j)) {
      int i = inst.edges[k].i;
      s_abandon += sol.x_abandon[i] / inst.offline[i].mu;
      double ratio = inst.offline[i].lambda / inst.offline[i].mu;
      ratio_all += ratio;
      if (inst.offline[i].section == Section::TOP) ratio_top += ratio;
    }
    if (!(s_abandon >= (1 - ep) - slack && s_abandon <= 1 / (1 - ep) + slack))
      out.push_back("abandonment balance failed for online " + std::to_string(j) + ": " +
                    std::to_string(s_abandon));
    if (std::abs(ratio_top - ratio_all / 2) > 1e-12)
      out.push_back("TOP/BOT balance failed for online " + std::to_string(j));
  }
  for (int k = 0; k < inst.n_edges(); ++k) {
    const Edge& e = inst.edges[k];
    const auto& o = inst.offline[e.i];
    double gamma = inst.online[e.j].gamma, G = t.gamma_support[e.i];
    double lo = (1 - ep) * gamma * o.lambda / (o.mu + G);
    double hi = gamma * o.lambda / ((1 - ep) * (o.mu + G));
    if (!(sol.x_match[k] >= lo - slack && sol.x_match[k] <= hi + slack))
      out.push_back("match-rate band failed on edge (" + std::to_string(e.i) + "," +
                    std::to_string(e.j) + "): x=" + std::to_string(sol.x_match[k]) +
                    " not in [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    double alo = o.mu * o.lambda / (o.mu + G);
    double ahi = o.mu * o.lambda / ((1 - ep) * (o.mu + G));
    if (!(sol.x_abandon[e.i] >= alo - slack && sol.x_abandon[e.i] <= ahi + slack))
      out.push_back("abandonment band failed for offline copy " + std::to_string(e.i));
    double r0 = t.r_threshold[e.j];
    if (!detail::in_reward_window(e.r, r0, t.epsilon))
      out.push_back("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                    ") survived outside its reward window");
    double denom = sol.x_abandon[e.i] / o.mu;
    double p = denom > 0 ? sol.x_match[k] / gamma / denom : (sol.x_match[k] > 0 ? 2.0 : 0.0);
    if (p < 1 - ep - 1e-9)
      out.push_back("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                    ") survived below the proposal-probability floor");
  }
  // Halved-solution feasibility: flow as an upper bound, ratio, subset family.
  for (int i = 0; i < inst.n_offline(); ++i) {
    double s = sol.x_abandon[i];
    for (int k : inst.offline_adj(i)) s += sol.x_match[k];
    if (s > inst.offline[i].lambda + 1e-9)
      out.push_back("flow upper bound violated for offline copy " + std::to_string(i));
  }
  for (int k = 0; k < inst.n_edges(); ++k) {
    const Edge& e = inst.edges[k];
    if (sol.x_match[k] / inst.online[e.j].gamma >
        sol.x_abandon[e.i] / inst.offline[e.i].mu + 1e-9)
      out.push_back("ratio constraint violated on split edge " + std::to_string(k));
  }
  for (int j = 0; j < inst.n_online(); ++j) {
    auto cut = separation_oracle(inst, sol.x_match, j, 1e-7);
    if (cut)
      out.push_back("subset constraint violated for online " + std::to_string(j) + " by " +
                    std::to_string(cut->violation));
  }
  return out;
}

// Stationary probability that every TOP queue in j's neighborhood is empty
// when TOP queues die at rate Q_i (mu_i + Gamma_i):
// prod_{i in TOP cap N_j} exp(-lambda_i / (mu_i + Gamma_i)).
inline double weak_chain_te_probability(const ProblemInstance& labeled, int j) {
  if (j < 0 || j >= labeled.n_online())
    throw std::invalid_argument("weak_chain_te_probability: unknown online id " +
                                std::to_string(j));
  double s = 0.0;
  for (int k : labeled.online_adj(j)) {
    const auto& o = labeled.offline[labeled.edges[k].i];
    if (o.section != Section::TOP) continue;
    s += o.lambda / (o.mu + labeled.gamma_around(labeled.edges[k].i));
  }
  return std::exp(-std::min(s, 700.0));
}

inline double weak_chain_te_probability(const TransformedInstance& t, int j) {
  return weak_chain_te_probability(t.instance, j);
}

// ---------------------------------------------------------------------------
// Competitive-benchmark (OFFLINE) classification variant.

enum class OfflineVerdict { OFF_LOW_P, OFF_ABUNDANT, OFF_SCARCE };

inline const char* to_string(OfflineVerdict v) {
  switch (v) {
    case OfflineVerdict::OFF_LOW_P: return "OFF_LOW_P";
    case OfflineVerdict::OFF_ABUNDANT: return "OFF_ABUNDANT";
    default: return "OFF_SCARCE";
  }
}

// A queue is abundant when its offered load lambda/mu is at least 1.
inline bool is_abundant(const OfflineType& t) { return t.lambda / t.mu >= 1.0; }

struct OfflineTypeClassification {
  OfflineVerdict verdict = OfflineVerdict::OFF_LOW_P;
  double low_p_mass = 0.0;        // match mass on proposal prob <= 1-eps edges
  double abundant_mass = 0.0;     // match mass on abundant neighbors
  double scarce_ratio_sum = 0.0;  // sum lambda/mu over scarce high-p support
  bool scarce_bound_ok = true;    // scarce_ratio_sum <= 2/(1-eps)
};

// Mirrors classify() for the OFFLINE benchmark: per online type, either
// enough mass sits on low-proposal-probability edges, or on abundant queues,
// or the remaining mass is concentrated on scarce high-probability queues
// whose total offered load is provably at most 2/(1-eps).
inline std::vector<OfflineTypeClassification> classify_offline(const ProblemInstance& inst,
                                                               const LpSolution& sol,
                                                               double epsilon = 0.05) {
  detail::check_epsilon(epsilon, "epsilon");
  if (sol.benchmark != Benchmark::OFFLINE)
    throw std::invalid_argument("classify_offline: requires an OFFLINE-benchmark solution");
  const ProposalMatrix prop = proposal_probabilities(inst, sol);
  std::vector<OfflineTypeClassification> out(inst.n_online());
  for (int j = 0; j < inst.n_online(); ++j) {
    auto& tc = out[j];
    const double gamma = inst.online[j].gamma;
    for (int k : inst.online_adj(j)) {
      int i = inst.edges[k].i;
      if (prop.p[k] <= 1 - epsilon) tc.low_p_mass += sol.x_match[k];
      if (is_abundant(inst.offline[i])) tc.abundant_mass += sol.x_match[k];
      if (!is_abundant(inst.offline[i]) && prop.p[k] >= 1 - epsilon && sol.x_match[k] > 0)
        tc.scarce_ratio_sum += inst.offline[i].lambda / inst.offline[i].mu;
    }
    tc.scarce_bound_ok = tc.scarce_ratio_sum <= 2 / (1 - epsilon);
    if (tc.low_p_mass >= epsilon * gamma)
      tc.verdict = OfflineVerdict::OFF_LOW_P;
    else if (tc.abundant_mass >= epsilon * gamma)
      tc.verdict = OfflineVerdict::OFF_ABUNDANT;
    else
      tc.verdict = OfflineVerdict::OFF_SCARCE;
  }
  return out;
}

// f(x) = x / (x + 1 - e^{-x}): ratio of a queue's offered load to its load
// plus availability. Increasing on (0, inf) with limit 1/2 as x -> 0+.
inline double presence_fraction(double x) {
  if (x < 0) throw std::invalid_argument("presence_fraction: x must be >= 0");
  if (x == 0) return 0.5;
  return x / (x - std::expm1(-x));
}

}  // namespace sml
