#pragma once
// pivotal.hpp -- dependent rounding of a marginal vector via systematic
// sampling.
//
// Given marginals m_1..m_n in [0,1], one uniform U on [0,1) is drawn and
// entry k is selected iff some point of U + Z lies in [S_{k-1}, S_k), where
// S_k is the k-th prefix sum. This preserves every marginal exactly
// (Pr[k in S] = m_k), hits each prefix with probability exactly
// min(1, S_k), and selects at most ceil(sum m) entries on every draw.
// Prefix sums use Neumaier-compensated summation so selection boundaries are
// stable to ~1e-15 even for long vectors.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sml/rng.hpp"

namespace sml::pivotal {

namespace detail {

inline void check_marginals(const std::vector<double>& m) {
  for (size_t k = 0; k < m.size(); ++k)
    if (!(m[k] >= -1e-12 && m[k] <= 1 + 1e-12))
      throw std::invalid_argument("pivotal: marginal " + std::to_string(k) +
                                  " = " + std::to_string(m[k]) + " is outside [0,1]");
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Walks the prefix sums with uniform u and reports each selected index.
// Entry k is selected iff ceil(S_k - u) - ceil(S_{k-1} - u) = 1; since every
// clamped marginal is <= 1 the jump can never exceed 1.
template <class F>
inline void select_with_uniform(const std::vector<double>& m, double u, F&& visit) {
  CompensatedSum s;
  double prev_units = 0.0;  // ceil(S_0 - u) = ceil(-u) = 0 for u in [0,1)
  for (size_t k = 0; k < m.size(); ++k) {
    s.add(std::min(1.0, std::max(0.0, m[k])));
    double units = std::ceil(s.value() - u);
    if (units > prev_units) visit(static_cast<int>(k));
    prev_units = units;
  }
}

}  // namespace detail

// Draws one dependently rounded subset; indices come back ascending.
inline std::vector<int> sample(const std::vector<double>& m, RngStream& rng) {
  detail::check_marginals(m);
  std::vector<int> out;
  detail::select_with_uniform(m, rng.uniform01(), [&](int k) { out.push_back(k); });
  return out;
}

// Probability that the sampled subset intersects the first k entries
// (k is 1-based); equals min(1, S_k) exactly.
inline double prefix_hit_probability(const std::vector<double>& m, int k) {
  detail::check_marginals(m);
  if (k < 1 || k > static_cast<int>(m.size()))
    throw std::invalid_argument("pivotal: prefix length " + std::to_string(k) +
                                " out of range [1," + std::to_string(m.size()) + "]");
  detail::CompensatedSum s;
  for (int t = 0; t < k; ++t) s.add(std::min(1.0, std::max(0.0, m[t])));
  return std::min(1.0, std::max(0.0, s.value()));
}

// Smallest selected index of one draw, if any. Uses the same prefix-sum
// geometry as sample(): the first selected index is the first k with
// S_k > U, so only one uniform is consumed and no subset is materialized.
inline std::optional<int> first_selected(const std::vector<double>& m, RngStream& rng) {
  detail::check_marginals(m);
  const double u = rng.uniform01();
  detail::CompensatedSum s;
  for (size_t k = 0; k < m.size(); ++k) {
    s.add(std::min(1.0, std::max(0.0, m[k])));
    if (s.value() > u) return static_cast<int>(k);
  }
  return std::nullopt;
}

}  // namespace sml::pivotal
