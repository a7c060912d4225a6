#pragma once
// lp.hpp -- tightened LP relaxations of stationary matching and their
// cutting-plane solver.
//
// Variables are per-edge match rates x_{i,j} and per-offline abandonment
// rates x_{i,a}. Constraints:
//   (flow)     x_{i,a} + sum_j x_{i,j} = lambda_i                for all i
//   (subset)   sum_{i in H} x_{i,j} <= gamma_j (1 - exp(-sum_{i in H}
//              lambda_i/mu_i))                  for all j, H subset of I
//   (ratio)    x_{i,j}/gamma_j <= x_{i,a}/mu_i  (ONLINE benchmark only)
//   x >= 0.
// The exponential subset family is separated exactly by a prefix oracle:
// sorting j's neighbors by decreasing x_{i,j} mu_i / (gamma_j lambda_i), the
// most violated subset is always one of the n prefixes (the violation,
// maximized over the box [0, lambda_i/mu_i]^n of per-type exponents, is
// convex in each coordinate, so it peaks at a vertex, and greedy exchange
// orders that vertex into a prefix).

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sml/instance.hpp"
#include "sml/pivotal.hpp"
#include "sml/rng.hpp"
#include "sml/simplex.hpp"

namespace sml {

enum class Benchmark { ONLINE, OFFLINE };

inline const char* to_string(Benchmark b) {
  return b == Benchmark::ONLINE ? "ONLINE" : "OFFLINE";
}

inline Benchmark parse_benchmark(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "online") return Benchmark::ONLINE;
  if (s == "offline") return Benchmark::OFFLINE;
  throw std::invalid_argument("unknown benchmark \"" + s + "\" (expected online|offline)");
}

struct LpSolution {
  Benchmark benchmark = Benchmark::ONLINE;
  std::vector<double> x_match;    // parallel to instance.edges
  std::vector<double> x_abandon;  // per offline type
  double objective = 0.0;
};

// Proposal probabilities, defined exactly on edges with x_{i,j} > 0 and 0
// elsewhere; parallel to instance.edges.
struct ProposalMatrix {
  Benchmark benchmark = Benchmark::ONLINE;
  std::vector<double> p;
};

class NonconvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// RHS of the subset constraint for online type j and offline subset H. The
// exponent is capped at 700; beyond that the RHS is exactly gamma_j.
inline double subset_cap(const ProblemInstance& inst, int j, const std::vector<int>& H) {
  double s = 0.0;
  for (int i : H) s += inst.offline[i].lambda / inst.offline[i].mu;
  return inst.online[j].gamma * -std::expm1(-std::min(s, 700.0));
}

struct SeparationResult {
  std::vector<int> subset;  // offline ids, ascending
  double violation = 0.0;   // sum x - cap over the subset
};

// Most violated subset constraint for online type j, or nullopt when no
// subset is violated by more than `tolerance`. x_match is parallel to
// instance.edges. Runs in O(deg log deg).
inline std::optional<SeparationResult> separation_oracle(const ProblemInstance& inst,
                                                         const std::vector<double>& x_match,
                                                         int j, double tolerance = 1e-7) {
  if (j < 0 || j >= inst.n_online())
    throw std::invalid_argument("separation_oracle: unknown online id " + std::to_string(j));
  const double gamma = inst.online[j].gamma;
  struct Item {
    int i;
    double x, ratio, key;
  };
  std::vector<Item> items;
  items.reserve(inst.online_adj(j).size());
  for (int k : inst.online_adj(j)) {
    const Edge& e = inst.edges[k];
    const auto& o = inst.offline[e.i];
    double x = x_match[k];
    items.push_back({e.i, x, o.lambda / o.mu, x * o.mu / (gamma * o.lambda)});
  }
  if (items.empty()) return std::nullopt;
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.key != b.key ? a.key > b.key : a.i < b.i;
  });
  // The best subset of size >= 2 is a prefix of the key-descending order:
  // at such an optimum, dropping any member or adding any non-member cannot
  // help, which forces member keys strictly above exp(-sum ratio) and
  // non-member keys strictly below. That exchange argument needs a nonempty
  // remainder, so a lone singleton can beat every prefix when all subsets
  // are slack; sweep singletons separately to keep the maximum exact.
  pivotal::detail::CompensatedSum sx;
  double sratio = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  size_t best_len = 0, best_single = 0;
  bool single = false;
  for (size_t k = 0; k < items.size(); ++k) {
    sx.add(items[k].x);
    sratio += items[k].ratio;
    double cap = gamma * -std::expm1(-std::min(sratio, 700.0));
    double v = sx.value() - cap;
    if (v > best) {
      best = v;
      best_len = k + 1;
      single = false;
    }
    double v1 = items[k].x - gamma * -std::expm1(-std::min(items[k].ratio, 700.0));
    if (v1 > best) {
      best = v1;
      best_single = k;
      single = true;
    }
  }
  if (!(best > tolerance)) return std::nullopt;
  SeparationResult res;
  res.violation = best;
  if (single)
    res.subset.push_back(items[best_single].i);
  else
    for (size_t k = 0; k < best_len; ++k) res.subset.push_back(items[k].i);
  std::sort(res.subset.begin(), res.subset.end());
  return res;
}

namespace detail {

// All violated prefixes for one online type (same scan as the oracle, kept
// separate so the oracle's "single maximizer" contract stays testable).
// Subsets come out sorted by ascending offline id, most violated first.
inline std::vector<SeparationResult> violated_prefixes(const ProblemInstance& inst,
                                                       const std::vector<double>& x_match,
                                                       int j, double tolerance) {
  const double gamma = inst.online[j].gamma;
  struct Item {
    int i;
    double x, ratio, key;
  };
  std::vector<Item> items;
  items.reserve(inst.online_adj(j).size());
  for (int k : inst.online_adj(j)) {
    const Edge& e = inst.edges[k];
    const auto& o = inst.offline[e.i];
    double x = x_match[k];
    items.push_back({e.i, x, o.lambda / o.mu, x * o.mu / (gamma * o.lambda)});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.key != b.key ? a.key > b.key : a.i < b.i;
  });
  std::vector<SeparationResult> out;
  pivotal::detail::CompensatedSum sx;
  double sratio = 0.0;
  std::vector<int> prefix;
  for (size_t k = 0; k < items.size(); ++k) {
    sx.add(items[k].x);
    sratio += items[k].ratio;
    prefix.push_back(items[k].i);
    double v = sx.value() - gamma * -std::expm1(-std::min(sratio, 700.0));
    if (v > tolerance) {
      SeparationResult res;
      res.violation = v;
      res.subset = prefix;
      std::sort(res.subset.begin(), res.subset.end());
      out.push_back(std::move(res));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SeparationResult& a, const SeparationResult& b) {
              return a.violation > b.violation;
            });
  return out;
}

}  // namespace detail

struct SolveOptions {
  double cut_tol = 1e-7;  // subset violations above this are cut
  int max_rounds = 400;   // cutting-plane rounds before giving up
};

struct CutRef {
  int j;
  std::vector<int> subset;
};

struct SolveInfo {
  int rounds = 0;
  std::vector<CutRef> cuts;  // subset constraints generated beyond singletons
  double seconds = 0.0;
};

namespace detail {

struct LpRows {
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  void add(std::vector<double> row, double rhs) {
    A.push_back(std::move(row));
    b.push_back(rhs);
  }
};

// Shared LP assembly; `ablated` replaces the cutting-plane family with
// singletons plus the full neighborhood-sum cap sum_i x_{i,j} <= gamma_j.
inline LpSolution solve_tlp_impl(const ProblemInstance& inst, Benchmark benchmark,
                                 const SolveOptions& opts, SolveInfo* info, bool ablated) {
  const auto t_start = std::chrono::steady_clock::now();
  const int E = inst.n_edges(), I = inst.n_offline(), J = inst.n_online();
  const int n_vars = E + I;
  auto evar = [](int k) { return k; };
  auto avar = [E](int i) { return E + i; };

  LpRows rows;
  std::vector<double> row(n_vars, 0.0);
  auto fresh = [&]() { std::fill(row.begin(), row.end(), 0.0); };

  for (int i = 0; i < I; ++i) {  // flow conservation as paired inequalities
    fresh();
    row[avar(i)] = 1.0;
    for (int k : inst.offline_adj(i)) row[evar(k)] = 1.0;
    rows.add(row, inst.offline[i].lambda);
    for (double& v : row) v = -v;
    rows.add(row, -inst.offline[i].lambda);
  }
  if (benchmark == Benchmark::ONLINE) {  // per-edge ratio constraint
    for (int k = 0; k < E; ++k) {
      const Edge& e = inst.edges[k];
      double mu = inst.offline[e.i].mu, gamma = inst.online[e.j].gamma;
      double scale = 1.0 / std::max(mu, gamma);
      fresh();
      row[evar(k)] = mu * scale;
      row[avar(e.i)] = -gamma * scale;
      rows.add(row, 0.0);
    }
  }
  std::set<std::pair<int, std::vector<int>>> cut_set;
  auto add_cut = [&](int j, const std::vector<int>& H) {
    fresh();
    for (int i : H) {
      int k = inst.edge_index(i, j);
      if (k < 0) throw std::logic_error("cut references a non-edge");
      row[evar(k)] = 1.0;
    }
    rows.add(row, subset_cap(inst, j, H));
    cut_set.emplace(j, H);
  };
  if (ablated) {
    for (int k = 0; k < E; ++k) add_cut(inst.edges[k].j, {inst.edges[k].i});  // singletons
    for (int j = 0; j < J; ++j) {
      if (inst.online_adj(j).empty()) continue;
      fresh();
      for (int k : inst.online_adj(j)) row[evar(k)] = 1.0;
      rows.add(row, inst.online[j].gamma);
    }
  } else {
    // Seed the nested prefix family in the lambda/mu-descending order (ties
    // by ascending id). It contains every singleton, and for instances with
    // uniform ratios it is exactly the family binding at the optimum, which
    // spares the cutting-plane loop most of its rounds.
    for (int j = 0; j < J; ++j) {
      std::vector<int> order;
      for (int k : inst.online_adj(j)) order.push_back(inst.edges[k].i);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ra = inst.offline[a].lambda / inst.offline[a].mu;
        double rb = inst.offline[b].lambda / inst.offline[b].mu;
        return ra != rb ? ra > rb : a < b;
      });
      std::vector<int> prefix;
      for (int i : order) {
        prefix.push_back(i);
        std::vector<int> H = prefix;
        std::sort(H.begin(), H.end());
        add_cut(j, H);
      }
    }
  }

  std::vector<double> c(n_vars, 0.0);
  double rscale = 1.0;
  for (int k = 0; k < E; ++k) rscale = std::max(rscale, std::abs(inst.edges[k].r));
  // Tiny index-graded penalty: selects one optimal vertex deterministically
  // (degenerate instances otherwise cycle the cut loop through equivalent
  // vertices). Must exceed the simplex pivot epsilon to be seen; objective
  // error is <= 1e-7 * rscale * sum(x), and the reported objective is
  // recomputed from the unperturbed rewards below.
  const double nudge = 1e-7 * rscale / std::max(1, E);
  for (int k = 0; k < E; ++k) c[evar(k)] = inst.edges[k].r - nudge * (k + 1);

  std::vector<double> x;
  SolveInfo local;
  int round = 0;
  for (;; ++round) {
    if (round >= opts.max_rounds)
      throw NonconvergenceError("cutting-plane loop did not converge within " +
                                std::to_string(opts.max_rounds) + " rounds");
    SimplexSolver solver(rows.A, rows.b, c);
    double obj = solver.maximize(x);
    if (std::isinf(obj))
      throw std::runtime_error(obj > 0 ? "internal: LP reported unbounded"
                                       : "internal: LP reported infeasible");
    if (ablated) break;
    std::vector<double> x_match(x.begin(), x.begin() + E);
    bool added = false;
    for (int j = 0; j < J; ++j) {
      for (const auto& cut : violated_prefixes(inst, x_match, j, opts.cut_tol)) {
        if (cut_set.count({j, cut.subset})) {
          // Already present: the simplex basis satisfies it to ~1e-12, so a
          // repeat can only be rounding noise; a large repeat means trouble.
          if (cut.violation > 100 * opts.cut_tol)
            throw NonconvergenceError("generated cut stayed violated (online " +
                                      std::to_string(j) + ", violation " +
                                      std::to_string(cut.violation) + ")");
          continue;
        }
        add_cut(j, cut.subset);
        local.cuts.push_back({j, cut.subset});
        added = true;
      }
    }
    if (!added) break;
  }

  LpSolution sol;
  sol.benchmark = benchmark;
  sol.x_match.assign(x.begin(), x.begin() + E);
  sol.x_abandon.assign(x.begin() + E, x.begin() + E + I);
  auto clamp_nonneg = [](std::vector<double>& v) {
    for (double& t : v) {
      if (t < -1e-9) throw std::runtime_error("internal: LP returned a negative rate");
      if (t < 0) t = 0;
    }
  };
  clamp_nonneg(sol.x_match);
  clamp_nonneg(sol.x_abandon);
  pivotal::detail::CompensatedSum obj_sum;
  for (int k = 0; k < E; ++k) obj_sum.add(inst.edges[k].r * sol.x_match[k]);
  sol.objective = obj_sum.value();

  // Post-solve invariant checks: flow to 1e-7, ratio rows to 1e-9 in the
  // scaled units they were added with (dividing by gamma instead would blow
  // simplex round-off up by 1/gamma on near-degenerate rates), and (via the
  // oracle loop exit) every subset constraint to the cut tolerance.
  for (int i = 0; i < I; ++i) {
    double s = sol.x_abandon[i];
    for (int k : inst.offline_adj(i)) s += sol.x_match[k];
    if (std::abs(s - inst.offline[i].lambda) > 1e-7)
      throw std::runtime_error("internal: flow conservation violated after solve");
  }
  if (benchmark == Benchmark::ONLINE)
    for (int k = 0; k < E; ++k) {
      const Edge& e = inst.edges[k];
      double mu = inst.offline[e.i].mu, gamma = inst.online[e.j].gamma;
      double res = (mu * sol.x_match[k] - gamma * sol.x_abandon[e.i]) / std::max(mu, gamma);
      if (res > 1e-9 * std::max(1.0, inst.offline[e.i].lambda))
        throw std::runtime_error("internal: ratio constraint violated after solve");
    }

  local.rounds = round + 1;
  local.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  if (info) *info = local;
  return sol;
}

}  // namespace detail

// Solves the tightened LP for the given benchmark by cutting planes, starting
// from flow, ratio (ONLINE) and singleton-subset rows. The returned solution
// satisfies flow to 1e-7, the scaled ratio rows to 1e-9, and every subset
// constraint to the cut tolerance. Throws NonconvergenceError if the round
// cap is hit.
inline LpSolution solve_tlp(const ProblemInstance& inst, Benchmark benchmark,
                            const SolveOptions& opts = {}, SolveInfo* info = nullptr) {
  return detail::solve_tlp_impl(inst, benchmark, opts, info, false);
}

// Ablation of solve_tlp(ONLINE): the exponential subset family is replaced by
// singletons plus the plain neighborhood cap sum_i x_{i,j} <= gamma_j.
inline LpSolution solve_tlp_ablated(const ProblemInstance& inst, const SolveOptions& opts = {},
                                    SolveInfo* info = nullptr) {
  return detail::solve_tlp_impl(inst, Benchmark::ONLINE, opts, info, true);
}

// Proposal probabilities for the given solution:
//   ONLINE:  p_{i,j} = (x_{i,j}/gamma_j) / (x_{i,a}/mu_i)
//   OFFLINE: p_{i,j} = (x_{i,j}/gamma_j) / (1 - exp(-lambda_i/mu_i))
// p must land in [0,1] up to 1e-9 slack (then clamped); ONLINE solutions with
// x_{i,a} = 0 but positive match rate are rejected as infeasible.
inline ProposalMatrix proposal_probabilities(const ProblemInstance& inst, const LpSolution& sol) {
  if (static_cast<int>(sol.x_match.size()) != inst.n_edges() ||
      static_cast<int>(sol.x_abandon.size()) != inst.n_offline())
    throw std::invalid_argument("proposal_probabilities: solution does not match instance");
  ProposalMatrix out;
  out.benchmark = sol.benchmark;
  out.p.assign(inst.n_edges(), 0.0);
  for (int k = 0; k < inst.n_edges(); ++k) {
    const Edge& e = inst.edges[k];
    double x = sol.x_match[k];
    if (!(x > 0)) continue;
    const auto& o = inst.offline[e.i];
    double denom;
    if (sol.benchmark == Benchmark::ONLINE) {
      denom = sol.x_abandon[e.i] / o.mu;
      if (!(denom > 0))
        throw std::domain_error("proposal probability undefined on edge (" +
                                std::to_string(e.i) + "," + std::to_string(e.j) +
                                "): zero abandonment with positive match rate");
    } else {
      denom = -std::expm1(-o.lambda / o.mu);
    }
    double cap = inst.online[e.j].gamma * denom;
    // Compare x against its cap in absolute terms with a relative allowance;
    // thresholding p itself would amplify solver round-off by 1/cap on
    // near-degenerate rates. Genuinely infeasible inputs still throw.
    if (x > cap + 1e-7 * std::max(1.0, o.lambda) + 1e-6 * cap)
      throw std::domain_error("proposal probability " + std::to_string(x / cap) + " on edge (" +
                              std::to_string(e.i) + "," + std::to_string(e.j) +
                              ") exceeds 1 beyond tolerance");
    out.p[k] = std::min(1.0, x / cap);
  }
  return out;
}

// LP gain restricted to a set of online types: sum_{j in S} sum_i r x_{i,j}.
inline double lp_gain(const ProblemInstance& inst, const LpSolution& sol,
                      const std::vector<int>& S) {
  pivotal::detail::CompensatedSum s;
  for (int j : S) {
    if (j < 0 || j >= inst.n_online())
      throw std::invalid_argument("lp_gain: unknown online id " + std::to_string(j));
    for (int k : inst.online_adj(j)) s.add(inst.edges[k].r * sol.x_match[k]);
  }
  return s.value();
}

inline double lp_gain(const ProblemInstance& inst, const LpSolution& sol) {
  std::vector<int> all(inst.n_online());
  for (int j = 0; j < inst.n_online(); ++j) all[j] = j;
  return lp_gain(inst, sol, all);
}

// Post-hoc feasibility check. Verifies flow (tol_eq), ratio (tol_ratio,
// ONLINE), the worst subset per online type via the oracle (tol_cut), and
// n_random uniformly drawn subsets per online type (tol_random). Returns
// human-readable violations; empty means feasible.
inline std::vector<std::string> check_solution(const ProblemInstance& inst, const LpSolution& sol,
                                               int n_random = 0, std::uint64_t seed = 7,
                                               double tol_eq = 1e-7, double tol_ratio = 1e-9,
                                               double tol_cut = 1e-7, double tol_random = 1e-6) {
  std::vector<std::string> out;
  if (static_cast<int>(sol.x_match.size()) != inst.n_edges() ||
      static_cast<int>(sol.x_abandon.size()) != inst.n_offline()) {
    out.push_back("solution shape does not match instance");
    return out;
  }
  for (int k = 0; k < inst.n_edges(); ++k)
    if (sol.x_match[k] < -1e-9)
      out.push_back("negative match rate on edge index " + std::to_string(k));
  for (int i = 0; i < inst.n_offline(); ++i) {
    if (sol.x_abandon[i] < -1e-9)
      out.push_back("negative abandonment rate for offline " + std::to_string(i));
    double s = sol.x_abandon[i];
    for (int k : inst.offline_adj(i)) s += sol.x_match[k];
    if (std::abs(s - inst.offline[i].lambda) > tol_eq)
      out.push_back("flow conservation violated for offline " + std::to_string(i) +
                    " (residual " + std::to_string(s - inst.offline[i].lambda) + ")");
  }
  if (sol.benchmark == Benchmark::ONLINE)
    for (int k = 0; k < inst.n_edges(); ++k) {
      const Edge& e = inst.edges[k];
      double lhs = sol.x_match[k] / inst.online[e.j].gamma;
      double rhs = sol.x_abandon[e.i] / inst.offline[e.i].mu;
      if (lhs > rhs + tol_ratio)
        out.push_back("ratio constraint violated on edge (" + std::to_string(e.i) + "," +
                      std::to_string(e.j) + ") by " + std::to_string(lhs - rhs));
    }
  for (int j = 0; j < inst.n_online(); ++j) {
    auto cut = separation_oracle(inst, sol.x_match, j, tol_cut);
    if (cut)
      out.push_back("subset constraint violated for online " + std::to_string(j) + " by " +
                    std::to_string(cut->violation));
  }
  if (n_random > 0) {
    RngStream rng(seed);
    for (int j = 0; j < inst.n_online(); ++j) {
      const auto& adj = inst.online_adj(j);
      if (adj.empty()) continue;
      double worst = 0.0;
      for (int t = 0; t < n_random; ++t) {
        double sx = 0.0, sratio = 0.0;
        for (int k : adj)
          if (rng.uniform01() < 0.5) {
            sx += sol.x_match[k];
            sratio += inst.offline[inst.edges[k].i].lambda / inst.offline[inst.edges[k].i].mu;
          }
        double cap = inst.online[j].gamma * -std::expm1(-std::min(sratio, 700.0));
        worst = std::max(worst, sx - cap);
      }
      if (worst > tol_random)
        out.push_back("random subset constraint violated for online " + std::to_string(j) +
                      " by " + std::to_string(worst));
    }
  }
  return out;
}

inline nlohmann::json solution_to_json(const ProblemInstance& inst, const LpSolution& sol) {
  nlohmann::json js;
  js["benchmark"] = to_string(sol.benchmark);
  js["objective"] = sol.objective;
  js["x_match"] = nlohmann::json::array();
  for (int k = 0; k < inst.n_edges(); ++k)
    js["x_match"].push_back(
        {{"i", inst.edges[k].i}, {"j", inst.edges[k].j}, {"x", sol.x_match[k]}});
  js["x_abandon"] = nlohmann::json::array();
  for (int i = 0; i < inst.n_offline(); ++i)
    js["x_abandon"].push_back({{"i", i}, {"x", sol.x_abandon[i]}});
  return js;
}

inline LpSolution solution_from_json(const ProblemInstance& inst, const nlohmann::json& js) {
  LpSolution sol;
  sol.benchmark = parse_benchmark(js.at("benchmark").get<std::string>());
  sol.x_match.assign(inst.n_edges(), 0.0);
  sol.x_abandon.assign(inst.n_offline(), 0.0);
  for (const auto& v : js.at("x_match")) {
    int i = v.at("i").get<int>(), j = v.at("j").get<int>();
    int k = inst.edge_index(i, j);
    if (k < 0)
      throw std::invalid_argument("solution references non-edge (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
    sol.x_match[k] = detail::json_number(v.at("x"), "solution x");
  }
  for (const auto& v : js.at("x_abandon")) {
    int i = v.at("i").get<int>();
    if (i < 0 || i >= inst.n_offline())
      throw std::invalid_argument("solution references unknown offline id " + std::to_string(i));
    sol.x_abandon[i] = detail::json_number(v.at("x"), "solution x");
  }
  if (js.contains("objective"))
    sol.objective = detail::json_number(js.at("objective"), "solution objective");
  else {
    pivotal::detail::CompensatedSum s;
    for (int k = 0; k < inst.n_edges(); ++k) s.add(inst.edges[k].r * sol.x_match[k]);
    sol.objective = s.value();
  }
  return sol;
}

inline LpSolution load_solution(const ProblemInstance& inst, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file: " + path);
  nlohmann::json js;
  in >> js;
  return solution_from_json(inst, js);
}

inline void save_solution(const ProblemInstance& inst, const LpSolution& sol,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write solution file: " + path);
  out << solution_to_json(inst, sol).dump(2) << "\n";
}

}  // namespace sml
