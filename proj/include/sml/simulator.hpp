#pragma once
// simulator.hpp -- continuous-time simulation of the stationary matching
// system and of weakly correlated TOP/BOT chains.
//
// The system state is one queue per offline type. Offline arrivals push,
// exponential patience pops, and online arrivals are matched according to a
// policy; matched items leave immediately. Event times come from competing
// exponentials (one uniform for the holding time, one for the event pick).
// Statistics are collected on [burn_in, horizon] only, split into >= 30
// equal batches whose means drive Student-t confidence intervals. Runs are
// bit-identical for a fixed seed.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sml/format.hpp"
#include "sml/instance.hpp"
#include "sml/lp.hpp"
#include "sml/pivotal.hpp"
#include "sml/rng.hpp"

namespace sml {

enum class PolicyKind { CORRELATED_PROPOSALS, BALANCED_GREEDY, GREEDY_MAX_REWARD, NO_MATCH };

inline const char* to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::CORRELATED_PROPOSALS: return "correlated";
    case PolicyKind::BALANCED_GREEDY: return "balanced-greedy";
    case PolicyKind::GREEDY_MAX_REWARD: return "greedy";
    default: return "no-match";
  }
}

struct Policy {
  PolicyKind kind = PolicyKind::NO_MATCH;
  ProposalMatrix proposals;  // required for CORRELATED_PROPOSALS
  std::optional<std::vector<char>> edge_filter;  // usable edges; nullopt = all usable

  static Policy correlated(ProposalMatrix pm) {
    Policy p;
    p.kind = PolicyKind::CORRELATED_PROPOSALS;
    p.proposals = std::move(pm);
    return p;
  }
  static Policy balanced_greedy() { return Policy{PolicyKind::BALANCED_GREEDY, {}, {}}; }
  static Policy greedy_max_reward() { return Policy{PolicyKind::GREEDY_MAX_REWARD, {}, {}}; }
  static Policy no_match() { return Policy{PolicyKind::NO_MATCH, {}, {}}; }
};

struct SimParams {
  double horizon = 1e4;
  double burn_in = -1.0;  // negative -> 20% of horizon
  std::uint64_t seed = 1;
  int batches = 32;
};

struct SimEstimate {
  double reward_rate = 0.0, reward_rate_ci = 0.0;
  std::vector<double> match_rates;    // per edge
  std::vector<double> abandon_rates;  // per offline type
  std::vector<double> mean_queue, mean_queue_ci;                // per offline type
  std::vector<double> flow_rate, flow_rate_ci;                  // abandon+match per offline
  std::vector<double> online_match_rate, online_match_rate_ci;  // per online type
  std::vector<double> online_arrival_rate, online_arrival_rate_ci;
  std::vector<double> per_online_match_prob;                    // matched arrival fraction
  std::vector<double> pasta_stat, pasta_ci;  // batch covariance of matches vs arrivals
  std::vector<double> queue_occupancy0;      // time-weighted distribution of queue 0
  double overall_match_prob = 0.0;
  double total_match_rate = 0.0, total_abandon_rate = 0.0;
  double horizon = 0.0, burn_in = 0.0;
  std::uint64_t seed = 0;
  int batches = 0;
  std::uint64_t events = 0;
};

// Two-sided 97.5% Student-t critical values; nearest lower tabulated df is
// used above 40 (conservative).
inline double t_critical_975(int df) {
  static const double table[41] = {
      0,      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179,  2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086, 2.080,
      2.074,  2.069,  2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042, 2.040, 2.037,
      2.035,  2.032,  2.030, 2.028, 2.026, 2.024, 2.023, 2.021};
  if (df < 1) throw std::invalid_argument("t_critical_975: df must be >= 1");
  if (df <= 40) return table[df];
  if (df <= 50) return 2.021;
  if (df <= 60) return 2.009;
  if (df <= 120) return 2.000;
  return 1.960;
}

namespace detail {

struct MeanCi {
  double mean = 0.0, ci = 0.0;
};

// Batch-means estimate: `per_batch` holds one rate per batch.
inline MeanCi batch_mean_ci(const std::vector<double>& per_batch) {
  const int B = static_cast<int>(per_batch.size());
  double mean = 0.0;
  for (double v : per_batch) mean += v;
  mean /= B;
  double var = 0.0;
  for (double v : per_batch) var += (v - mean) * (v - mean);
  var /= (B - 1);
  return {mean, t_critical_975(B - 1) * std::sqrt(var / B)};
}

// Adds `weight * |[a,b) ^ batch window|` to each overlapped batch slot.
inline void credit_interval(double a, double b, double weight, double* slots, double t0,
                            double batch_len, int B) {
  const double t1 = t0 + batch_len * B;
  a = std::max(a, t0);
  b = std::min(b, t1);
  while (a < b) {
    int idx = std::min(B - 1, static_cast<int>((a - t0) / batch_len));
    double end = std::min(b, t0 + (idx + 1) * batch_len);
    if (end <= a) end = b;  // FP guard: never stall
    slots[idx] += (end - a) * weight;
    a = end;
  }
}

inline int batch_index(double t, double t0, double batch_len, int B) {
  return std::min(B - 1, static_cast<int>((t - t0) / batch_len));
}

inline double resolved_burn_in(const SimParams& p) {
  return p.burn_in < 0 ? 0.2 * p.horizon : p.burn_in;
}

inline void check_params(const SimParams& p) {
  if (!(p.horizon > 0)) throw std::invalid_argument("simulate: horizon must be > 0");
  double burn = resolved_burn_in(p);
  if (!(burn >= 0 && burn < p.horizon))
    throw std::invalid_argument("simulate: burn-in must lie in [0, horizon)");
  if (p.batches < 30)
    throw std::invalid_argument("simulate: need at least 30 batches for batch-means CIs");
}

}  // namespace detail

// Simulates the matching system under `policy`. Queue-0 occupancy is always
// collected (cheap) so distribution-level checks need no special mode.
inline SimEstimate simulate(const ProblemInstance& inst, const Policy& policy,
                            const SimParams& params) {
  detail::check_params(params);
  const int I = inst.n_offline(), J = inst.n_online(), E = inst.n_edges();
  if (policy.kind == PolicyKind::CORRELATED_PROPOSALS &&
      static_cast<int>(policy.proposals.p.size()) != E)
    throw std::invalid_argument("simulate: correlated policy needs a proposal matrix "
                                "matching the instance");
  if (policy.edge_filter && static_cast<int>(policy.edge_filter->size()) != E)
    throw std::invalid_argument("simulate: edge filter does not match the instance");
  if (policy.kind == PolicyKind::BALANCED_GREEDY)
    for (const auto& o : inst.offline)
      if (o.section == Section::NONE)
        throw std::invalid_argument(
            "simulate: balanced greedy requires TOP/BOT labels on every offline type");

  auto usable = [&](int k) { return !policy.edge_filter || (*policy.edge_filter)[k] != 0; };

  // Per online type: usable edges sorted by decreasing reward, ties by
  // ascending offline id -- the proposal order and the greedy order.
  std::vector<std::vector<int>> order(J);
  for (int j = 0; j < J; ++j) {
    for (int k : inst.online_adj(j))
      if (usable(k)) {
        if (policy.kind == PolicyKind::CORRELATED_PROPOSALS && !(policy.proposals.p[k] > 0))
          continue;
        order[j].push_back(k);
      }
    std::sort(order[j].begin(), order[j].end(), [&](int a, int b) {
      if (inst.edges[a].r != inst.edges[b].r) return inst.edges[a].r > inst.edges[b].r;
      return inst.edges[a].i < inst.edges[b].i;
    });
  }
  // Balanced greedy scans TOP neighbors by ascending id, then BOT neighbors.
  std::vector<std::vector<int>> top_edges(J), bot_edges(J);
  if (policy.kind == PolicyKind::BALANCED_GREEDY)
    for (int j = 0; j < J; ++j)
      for (int k : inst.online_adj(j)) {  // already ascending by offline id
        if (!usable(k)) continue;
        (inst.offline[inst.edges[k].i].section == Section::TOP ? top_edges : bot_edges)[j]
            .push_back(k);
      }

  std::vector<double> lambda_prefix(I + 1, 0.0), gamma_prefix(J + 1, 0.0), mu(I);
  for (int i = 0; i < I; ++i) {
    lambda_prefix[i + 1] = lambda_prefix[i] + inst.offline[i].lambda;
    mu[i] = inst.offline[i].mu;
  }
  for (int j = 0; j < J; ++j) gamma_prefix[j + 1] = gamma_prefix[j] + inst.online[j].gamma;
  const double sumL = lambda_prefix[I], sumG = gamma_prefix[J];

  const double horizon = params.horizon, t0 = detail::resolved_burn_in(params);
  const int B = params.batches;
  const double bl = (horizon - t0) / B;

  std::vector<long long> Q(I, 0);
  std::vector<double> q_last(I, 0.0);
  double qmu = 0.0;
  RngStream rng(params.seed);

  std::vector<double> qint(static_cast<size_t>(B) * I, 0.0), reward_b(B, 0.0);
  std::vector<std::int64_t> flow_b(static_cast<size_t>(B) * I, 0);
  std::vector<std::int64_t> match_bj(static_cast<size_t>(B) * J, 0),
      arr_bj(static_cast<size_t>(B) * J, 0);
  std::vector<std::int64_t> match_e(E, 0), abandon_i(I, 0);
  std::vector<double> occ0;

  auto credit_q = [&](int i, double now) {
    double a = std::max(q_last[i], t0), b = std::min(now, horizon);
    if (b > a) {
      detail::credit_interval(a, b, static_cast<double>(Q[i]),
                              qint.data() + static_cast<size_t>(i) * B, t0, bl, B);
      if (i == 0) {
        size_t q = static_cast<size_t>(Q[0]);
        if (occ0.size() <= q) occ0.resize(q + 1, 0.0);
        occ0[q] += b - a;
      }
    }
    q_last[i] = now;
  };

  std::vector<double> marg;
  std::vector<int> marg_edge;
  double t = 0.0;
  std::uint64_t events = 0;

  for (;;) {
    const double R = sumL + sumG + qmu;
    if (!(R > 0) || R > 1e15) throw std::runtime_error("simulate: total event rate overflow");
    double tn = t + rng.exponential(R);
    if (tn >= horizon) break;
    t = tn;
    ++events;
    double u = rng.uniform01() * R;
    if (u < sumL) {  // offline arrival
      int i = static_cast<int>(std::upper_bound(lambda_prefix.begin() + 1, lambda_prefix.end(),
                                                u) -
                               (lambda_prefix.begin() + 1));
      if (i >= I) i = I - 1;
      credit_q(i, t);
      ++Q[i];
      qmu += mu[i];
    } else if (u < sumL + sumG) {  // online arrival
      double v = u - sumL;
      int j = static_cast<int>(std::upper_bound(gamma_prefix.begin() + 1, gamma_prefix.end(),
                                                v) -
                               (gamma_prefix.begin() + 1));
      if (j >= J) j = J - 1;
      if (t >= t0) ++arr_bj[static_cast<size_t>(detail::batch_index(t, t0, bl, B)) * J + j];
      int matched = -1;
      switch (policy.kind) {
        case PolicyKind::NO_MATCH:
          break;
        case PolicyKind::CORRELATED_PROPOSALS: {
          marg.clear();
          marg_edge.clear();
          for (int k : order[j]) {
            const double p = policy.proposals.p[k];
            for (long long c = Q[inst.edges[k].i]; c > 0; --c) {
              marg.push_back(p);
              marg_edge.push_back(k);
            }
          }
          if (!marg.empty()) {
            auto sel = pivotal::first_selected(marg, rng);
            if (sel) matched = marg_edge[*sel];
          }
          break;
        }
        case PolicyKind::GREEDY_MAX_REWARD: {
          for (int k : order[j])
            if (Q[inst.edges[k].i] > 0) {
              matched = k;
              break;
            }
          break;
        }
        case PolicyKind::BALANCED_GREEDY: {
          for (const auto* side : {&top_edges[j], &bot_edges[j]}) {
            for (int k : *side)
              if (Q[inst.edges[k].i] > 0) {
                matched = k;
                break;
              }
            if (matched >= 0) break;
          }
          break;
        }
      }
      if (matched >= 0) {
        int i = inst.edges[matched].i;
        credit_q(i, t);
        --Q[i];
        qmu -= mu[i];
        if (t >= t0) {
          int b = detail::batch_index(t, t0, bl, B);
          ++match_bj[static_cast<size_t>(b) * J + j];
          ++flow_b[static_cast<size_t>(b) * I + i];
          reward_b[b] += inst.edges[matched].r;
          ++match_e[matched];
        }
      }
    } else {  // departure (abandonment)
      double acc = u - sumL - sumG;
      int i = -1;
      for (int k2 = 0; k2 < I; ++k2) {
        double w = static_cast<double>(Q[k2]) * mu[k2];
        if (acc < w) {
          i = k2;
          break;
        }
        acc -= w;
      }
      if (i < 0) {  // FP tail: take the last nonempty queue
        for (int k2 = I - 1; k2 >= 0; --k2)
          if (Q[k2] > 0) {
            i = k2;
            break;
          }
      }
      if (i >= 0) {
        credit_q(i, t);
        --Q[i];
        qmu -= mu[i];
        if (t >= t0) {
          ++abandon_i[i];
          ++flow_b[static_cast<size_t>(detail::batch_index(t, t0, bl, B)) * I + i];
        }
      }
    }
    if ((events & 0xFFFFFull) == 0) {  // kill incremental FP drift periodically
      qmu = 0.0;
      for (int k2 = 0; k2 < I; ++k2) qmu += static_cast<double>(Q[k2]) * mu[k2];
    }
  }
  for (int i = 0; i < I; ++i) credit_q(i, horizon);

  SimEstimate est;
  est.horizon = horizon;
  est.burn_in = t0;
  est.seed = params.seed;
  est.batches = B;
  est.events = events;
  const double Tobs = horizon - t0;

  std::vector<double> tmp(B);
  for (int b = 0; b < B; ++b) tmp[b] = reward_b[b] / bl;
  auto rmc = detail::batch_mean_ci(tmp);
  est.reward_rate = rmc.mean;
  est.reward_rate_ci = rmc.ci;

  est.match_rates.resize(E);
  for (int k = 0; k < E; ++k) est.match_rates[k] = static_cast<double>(match_e[k]) / Tobs;
  est.abandon_rates.resize(I);
  est.mean_queue.resize(I);
  est.mean_queue_ci.resize(I);
  est.flow_rate.resize(I);
  est.flow_rate_ci.resize(I);
  for (int i = 0; i < I; ++i) {
    est.abandon_rates[i] = static_cast<double>(abandon_i[i]) / Tobs;
    for (int b = 0; b < B; ++b) tmp[b] = qint[static_cast<size_t>(i) * B + b] / bl;
    auto m = detail::batch_mean_ci(tmp);
    est.mean_queue[i] = m.mean;
    est.mean_queue_ci[i] = m.ci;
    for (int b = 0; b < B; ++b)
      tmp[b] = static_cast<double>(flow_b[static_cast<size_t>(b) * I + i]) / bl;
    auto f = detail::batch_mean_ci(tmp);
    est.flow_rate[i] = f.mean;
    est.flow_rate_ci[i] = f.ci;
  }
  est.online_match_rate.resize(J);
  est.online_match_rate_ci.resize(J);
  est.online_arrival_rate.resize(J);
  est.online_arrival_rate_ci.resize(J);
  est.per_online_match_prob.resize(J);
  est.pasta_stat.resize(J);
  est.pasta_ci.resize(J);
  std::int64_t tot_match = 0, tot_arr = 0;
  for (int j = 0; j < J; ++j) {
    std::int64_t mj = 0, aj = 0;
    for (int b = 0; b < B; ++b) {
      mj += match_bj[static_cast<size_t>(b) * J + j];
      aj += arr_bj[static_cast<size_t>(b) * J + j];
    }
    tot_match += mj;
    tot_arr += aj;
    for (int b = 0; b < B; ++b)
      tmp[b] = static_cast<double>(match_bj[static_cast<size_t>(b) * J + j]) / bl;
    auto m = detail::batch_mean_ci(tmp);
    est.online_match_rate[j] = m.mean;
    est.online_match_rate_ci[j] = m.ci;
    est.online_arrival_rate[j] = static_cast<double>(aj) / Tobs;
    for (int b = 0; b < B; ++b)
      tmp[b] = static_cast<double>(arr_bj[static_cast<size_t>(b) * J + j]) / bl;
    est.online_arrival_rate_ci[j] = detail::batch_mean_ci(tmp).ci;
    double phat = aj > 0 ? static_cast<double>(mj) / static_cast<double>(aj) : 0.0;
    est.per_online_match_prob[j] = phat;
    // PASTA residual: matches per batch minus phat * arrivals per batch.
    for (int b = 0; b < B; ++b)
      tmp[b] = (static_cast<double>(match_bj[static_cast<size_t>(b) * J + j]) -
                phat * static_cast<double>(arr_bj[static_cast<size_t>(b) * J + j])) /
               bl;
    auto d = detail::batch_mean_ci(tmp);
    est.pasta_stat[j] = d.mean;
    est.pasta_ci[j] = d.ci;
  }
  est.overall_match_prob = tot_arr > 0 ? static_cast<double>(tot_match) / tot_arr : 0.0;
  double tm = 0.0, ta = 0.0;
  for (int k = 0; k < E; ++k) tm += est.match_rates[k];
  for (int i = 0; i < I; ++i) ta += est.abandon_rates[i];
  est.total_match_rate = tm;
  est.total_abandon_rate = ta;

  est.queue_occupancy0.resize(occ0.size());
  for (size_t k = 0; k < occ0.size(); ++k) est.queue_occupancy0[k] = occ0[k] / Tobs;
  return est;
}

// ---------------------------------------------------------------------------
// Weakly correlated chains.

struct WeakChainEstimate {
  std::vector<double> te_prob, te_ci;                // per online type
  std::vector<double> all_empty_prob, all_empty_ci;  // per online type
  std::vector<double> mean_queue, mean_queue_ci;     // per offline copy
  double horizon = 0.0, burn_in = 0.0;
  std::uint64_t seed = 0;
  int batches = 0;
  std::uint64_t events = 0;
};

// Simulates the weakly correlated chains of a TOP/BOT-labeled instance:
// TOP queues are independent birth-death chains with per-item death rate
// mu_i + Gamma_i; BOT queues take arrivals at lambda_i, abandon at Q_i mu_i,
// and are depleted at rate sum over neighbors j with empty TOP neighborhoods
// of gamma_j while nonempty. TE_j is the event that j's TOP neighborhood is
// empty.
inline WeakChainEstimate simulate_weak_chains(const ProblemInstance& inst,
                                              const SimParams& params) {
  detail::check_params(params);
  const int I = inst.n_offline(), J = inst.n_online();
  for (const auto& o : inst.offline)
    if (o.section == Section::NONE)
      throw std::invalid_argument(
          "simulate_weak_chains: every offline type needs a TOP/BOT label");

  std::vector<double> lambda_prefix(I + 1, 0.0), death_coeff(I), gamma_top(I, 0.0);
  std::vector<char> is_top(I, 0);
  for (int i = 0; i < I; ++i) {
    lambda_prefix[i + 1] = lambda_prefix[i] + inst.offline[i].lambda;
    is_top[i] = inst.offline[i].section == Section::TOP;
    death_coeff[i] =
        is_top[i] ? inst.offline[i].mu + inst.gamma_around(i) : inst.offline[i].mu;
  }
  const double sumL = lambda_prefix[I];

  // Neighborhoods as id lists.
  std::vector<std::vector<int>> nbr_online(I);  // offline -> online ids
  std::vector<std::vector<int>> nbr_top(J), nbr_bot(J);
  for (int j = 0; j < J; ++j)
    for (int k : inst.online_adj(j)) {
      int i = inst.edges[k].i;
      (is_top[i] ? nbr_top : nbr_bot)[j].push_back(i);
      nbr_online[i].push_back(j);
    }

  const double horizon = params.horizon, t0 = detail::resolved_burn_in(params);
  const int B = params.batches;
  const double bl = (horizon - t0) / B;

  std::vector<long long> Q(I, 0);
  std::vector<double> q_last(I, 0.0);
  std::vector<int> top_nz(J, 0), all_nz(J, 0);  // nonempty TOP / all neighbors
  std::vector<double> te_last(J, 0.0), empty_last(J, 0.0);
  std::vector<double> dep(I, 0.0);  // BOT depletion rate while nonempty
  for (int j = 0; j < J; ++j)       // all queues start empty: TE_j holds
    for (int i : nbr_bot[j]) dep[i] += inst.online[j].gamma;
  double dtot = 0.0;  // total death rate over all queues

  std::vector<double> qint(static_cast<size_t>(B) * I, 0.0);
  std::vector<double> te_int(static_cast<size_t>(B) * J, 0.0),
      empty_int(static_cast<size_t>(B) * J, 0.0);

  auto credit_q = [&](int i, double now) {
    double a = std::max(q_last[i], t0), b = std::min(now, horizon);
    if (b > a)
      detail::credit_interval(a, b, static_cast<double>(Q[i]),
                              qint.data() + static_cast<size_t>(i) * B, t0, bl, B);
    q_last[i] = now;
  };
  auto credit_te = [&](int j, double now) {  // call while TE_j still holds
    double a = std::max(te_last[j], t0), b = std::min(now, horizon);
    if (b > a)
      detail::credit_interval(a, b, 1.0, te_int.data() + static_cast<size_t>(j) * B, t0, bl,
                              B);
    te_last[j] = now;
  };
  auto credit_empty = [&](int j, double now) {
    double a = std::max(empty_last[j], t0), b = std::min(now, horizon);
    if (b > a)
      detail::credit_interval(a, b, 1.0, empty_int.data() + static_cast<size_t>(j) * B, t0,
                              bl, B);
    empty_last[j] = now;
  };

  // Queue i transitions between 0 and 1 items flip neighborhood indicators.
  auto on_become_nonempty = [&](int i, double now) {
    for (int j : nbr_online[i]) {
      if (all_nz[j]++ == 0) credit_empty(j, now);
      if (is_top[i] && top_nz[j]++ == 0) {
        credit_te(j, now);  // TE_j ends now
        for (int b : nbr_bot[j]) {
          if (Q[b] > 0) dtot -= inst.online[j].gamma;
          dep[b] -= inst.online[j].gamma;
        }
      }
    }
  };
  auto on_become_empty = [&](int i, double now) {
    for (int j : nbr_online[i]) {
      if (--all_nz[j] == 0) empty_last[j] = now;
      if (is_top[i] && --top_nz[j] == 0) {
        te_last[j] = now;  // TE_j starts now
        for (int b : nbr_bot[j]) {
          dep[b] += inst.online[j].gamma;
          if (Q[b] > 0) dtot += inst.online[j].gamma;
        }
      }
    }
  };
  auto death_rate = [&](int i) {
    double r = static_cast<double>(Q[i]) * death_coeff[i];
    if (!is_top[i] && Q[i] > 0) r += dep[i];
    return r;
  };

  RngStream rng(params.seed);
  double t = 0.0;
  std::uint64_t events = 0;
  for (;;) {
    const double R = sumL + dtot;
    if (!(R > 0) || R > 1e15)
      throw std::runtime_error("simulate_weak_chains: total event rate overflow");
    double tn = t + rng.exponential(R);
    if (tn >= horizon) break;
    t = tn;
    ++events;
    double u = rng.uniform01() * R;
    if (u < sumL) {  // birth
      int i = static_cast<int>(std::upper_bound(lambda_prefix.begin() + 1, lambda_prefix.end(),
                                                u) -
                               (lambda_prefix.begin() + 1));
      if (i >= I) i = I - 1;
      credit_q(i, t);
      dtot += death_coeff[i];
      if (Q[i] == 0 && !is_top[i]) dtot += dep[i];
      ++Q[i];
      if (Q[i] == 1) on_become_nonempty(i, t);
    } else {  // death / abandonment / depletion
      double acc = u - sumL;
      int i = -1;
      for (int k = 0; k < I; ++k) {
        double w = death_rate(k);
        if (acc < w) {
          i = k;
          break;
        }
        acc -= w;
      }
      if (i < 0)
        for (int k = I - 1; k >= 0; --k)
          if (Q[k] > 0) {
            i = k;
            break;
          }
      if (i >= 0) {
        credit_q(i, t);
        dtot -= death_coeff[i];
        --Q[i];
        if (Q[i] == 0) {
          if (!is_top[i]) dtot -= dep[i];
          on_become_empty(i, t);
        }
      }
    }
    if ((events & 0xFFFFull) == 0) {  // periodic exact recompute of dtot
      dtot = 0.0;
      for (int k = 0; k < I; ++k) dtot += death_rate(k);
    }
  }
  for (int i = 0; i < I; ++i) credit_q(i, horizon);
  for (int j = 0; j < J; ++j) {
    if (top_nz[j] == 0) credit_te(j, horizon);
    if (all_nz[j] == 0) credit_empty(j, horizon);
  }

  WeakChainEstimate est;
  est.horizon = horizon;
  est.burn_in = t0;
  est.seed = params.seed;
  est.batches = B;
  est.events = events;
  std::vector<double> tmp(B);
  est.te_prob.resize(J);
  est.te_ci.resize(J);
  est.all_empty_prob.resize(J);
  est.all_empty_ci.resize(J);
  for (int j = 0; j < J; ++j) {
    for (int b = 0; b < B; ++b) tmp[b] = te_int[static_cast<size_t>(j) * B + b] / bl;
    auto m = detail::batch_mean_ci(tmp);
    est.te_prob[j] = m.mean;
    est.te_ci[j] = m.ci;
    for (int b = 0; b < B; ++b) tmp[b] = empty_int[static_cast<size_t>(j) * B + b] / bl;
    auto e = detail::batch_mean_ci(tmp);
    est.all_empty_prob[j] = e.mean;
    est.all_empty_ci[j] = e.ci;
  }
  est.mean_queue.resize(I);
  est.mean_queue_ci.resize(I);
  for (int i = 0; i < I; ++i) {
    for (int b = 0; b < B; ++b) tmp[b] = qint[static_cast<size_t>(i) * B + b] / bl;
    auto m = detail::batch_mean_ci(tmp);
    est.mean_queue[i] = m.mean;
    est.mean_queue_ci[i] = m.ci;
  }
  return est;
}

// ---------------------------------------------------------------------------
// Replications, threading, ratio estimates.

// Worker count: explicit argument, else SML_THREADS, else hardware.
inline int resolve_threads(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SML_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

template <class F>
inline void parallel_for(int n, int threads, F&& f) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&]() {
      for (int i; (i = next.fetch_add(1)) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct RatioEstimate {
  double ratio = 0.0, ci = 0.0;  // mean reward rate / objective, CI likewise scaled
  double mean_reward_rate = 0.0, reward_rate_ci = 0.0;
  std::vector<SimEstimate> reps;
};

// Runs `reps` independent replications (seeds derived from params.seed) and
// reports the reward-rate-to-LP-objective ratio with a replication-level
// Student-t CI. Errors on a zero objective.
inline RatioEstimate estimate_ratio(const ProblemInstance& inst, const Policy& policy,
                                    const LpSolution& sol, int reps, const SimParams& params,
                                    int threads = 0) {
  if (!(std::abs(sol.objective) > 0))
    throw std::domain_error("estimate_ratio: LP objective is zero");
  if (reps < 1) throw std::invalid_argument("estimate_ratio: need at least one replication");
  RatioEstimate out;
  out.reps.resize(reps);
  parallel_for(reps, resolve_threads(threads), [&](int r) {
    SimParams p = params;
    p.seed = derive_seed(params.seed, static_cast<std::uint64_t>(r));
    out.reps[r] = simulate(inst, policy, p);
  });
  double mean = 0.0;
  for (const auto& e : out.reps) mean += e.reward_rate;
  mean /= reps;
  double ci = 0.0;
  if (reps >= 2) {
    double var = 0.0;
    for (const auto& e : out.reps) var += (e.reward_rate - mean) * (e.reward_rate - mean);
    var /= (reps - 1);
    ci = t_critical_975(reps - 1) * std::sqrt(var / reps);
  }
  out.mean_reward_rate = mean;
  out.reward_rate_ci = ci;
  out.ratio = mean / sol.objective;
  out.ci = ci / sol.objective;
  return out;
}

// Time-averaged queue lengths under a policy (convenience wrapper).
inline std::vector<double> mean_queue_lengths(const ProblemInstance& inst, const Policy& policy,
                                              const SimParams& params) {
  return simulate(inst, policy, params).mean_queue;
}

// ---------------------------------------------------------------------------
// CSV output (column order and 9-significant-digit formatting are frozen).

inline std::string sim_csv_header() {
  return "policy,seed,horizon,reward_rate,ci,replication,burn_in,batches,"
         "total_match_rate,total_abandon_rate,overall_match_prob";
}

inline std::string sim_csv_row(PolicyKind kind, const SimEstimate& est, int replication) {
  std::string row;
  row += to_string(kind);
  row += ',' + std::to_string(est.seed);
  row += ',' + fmt9(est.horizon);
  row += ',' + fmt9(est.reward_rate);
  row += ',' + fmt9(est.reward_rate_ci);
  row += ',' + std::to_string(replication);
  row += ',' + fmt9(est.burn_in);
  row += ',' + std::to_string(est.batches);
  row += ',' + fmt9(est.total_match_rate);
  row += ',' + fmt9(est.total_abandon_rate);
  row += ',' + fmt9(est.overall_match_prob);
  return row;
}

}  // namespace sml
