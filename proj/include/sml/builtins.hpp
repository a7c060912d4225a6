#pragma once
// builtins.hpp -- built-in example families b1/b2/b3 with their hand
// closed-form solutions.
//
// b1(n): n offline types (lambda = 1/n, mu = 1), one online type with
//        gamma = 1/n^2, unit rewards. Separates the exponential subset family
//        from the plain neighborhood cap (the ablated LP overshoots by a
//        factor approaching 1/(1 - 1/e)).
// b2(n): n offline types (lambda = 1/sqrt(n), mu = 1), one online type with
//        gamma = sqrt(n) - 1, unit rewards. Saturated regime; the canonical
//        solution pins every ratio constraint tight.
// b3(n): n offline types (lambda = mu = 1); online types 0..n-1 have
//        gamma = n and a single zero-reward edge (j,j); online type n has
//        gamma = 1 and unit-reward edges to every offline type. The canonical
//        solution routes x_{i,n} = x_{i,a} = 1/n and x_{i,i} = (n-2)/n.
//
// Canonical solutions are the exact hand forms. They sit on the boundary of
// the subset-constraint family: b2/b3 overshoot the full-neighborhood cap by
// gamma*exp(-Theta(sqrt(n))) and exp(-n) respectively, which is far inside
// every working tolerance (1e-7/1e-6) at the sizes used here, but strict
// feasibility work should use solver output instead.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "sml/instance.hpp"
#include "sml/lp.hpp"

namespace sml {

struct BuiltinExample {
  ProblemInstance instance;
  std::optional<LpSolution> canonical;
};

inline bool is_builtin_name(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return name == "b1" || name == "b2" || name == "b3";
}

inline BuiltinExample example_instance(std::string name, int n) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (!is_builtin_name(name))
    throw std::invalid_argument("unknown example instance \"" + name + "\" (expected b1|b2|b3)");
  if (n < 2) throw std::invalid_argument("example instance size n must be >= 2");
  BuiltinExample out;
  ProblemInstance& inst = out.instance;
  if (name == "b1") {
    for (int i = 0; i < n; ++i) inst.offline.push_back({i, 1.0 / n, 1.0, Section::NONE});
    inst.online.push_back({0, 1.0 / (static_cast<double>(n) * n)});
    for (int i = 0; i < n; ++i) inst.edges.push_back({i, 0, 1.0});
    inst.finalize();
  } else if (name == "b2") {
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) inst.offline.push_back({i, 1.0 / sqrt_n, 1.0, Section::NONE});
    inst.online.push_back({0, sqrt_n - 1.0});
    for (int i = 0; i < n; ++i) inst.edges.push_back({i, 0, 1.0});
    inst.finalize();
    LpSolution sol;
    sol.benchmark = Benchmark::ONLINE;
    sol.x_match.assign(n, (sqrt_n - 1.0) / n);  // ratio constraint tight
    sol.x_abandon.assign(n, 1.0 / n);
    sol.objective = lp_gain(inst, sol);
    out.canonical = sol;
  } else {  // b3
    for (int i = 0; i < n; ++i) inst.offline.push_back({i, 1.0, 1.0, Section::NONE});
    for (int j = 0; j < n; ++j) {
      inst.online.push_back({j, static_cast<double>(n)});
      inst.edges.push_back({j, j, 0.0});
    }
    inst.online.push_back({n, 1.0});
    for (int i = 0; i < n; ++i) inst.edges.push_back({i, n, 1.0});
    inst.finalize();
    LpSolution sol;
    sol.benchmark = Benchmark::ONLINE;
    sol.x_match.assign(inst.n_edges(), 0.0);
    sol.x_abandon.assign(n, 1.0 / n);
    for (int i = 0; i < n; ++i) {
      sol.x_match[inst.edge_index(i, i)] = (n - 2.0) / n;
      sol.x_match[inst.edge_index(i, n)] = 1.0 / n;
    }
    sol.objective = lp_gain(inst, sol);
    out.canonical = sol;
  }
  return out;
}

}  // namespace sml
