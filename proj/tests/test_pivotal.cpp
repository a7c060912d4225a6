#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "sml/pivotal.hpp"
#include "sml/rng.hpp"

using namespace sml;

namespace {

// Selected set for one explicit uniform draw.
std::vector<int> select_at(const std::vector<double>& m, double u) {
  std::vector<int> out;
  pivotal::detail::select_with_uniform(m, u, [&](int k) { out.push_back(k); });
  return out;
}

// Exact marginal of index i: the selection is a deterministic step function
// of the single uniform, so Pr[i in S] is the Lebesgue measure of the u set
// that picks i. Integrated on a fine grid with interval endpoints at the
// fractional parts of the prefix sums, where the indicator is constant.
double exact_marginal(const std::vector<double>& m, int i) {
  std::vector<double> cuts{0.0, 1.0};
  double s = 0.0;
  for (double v : m) {
    s += v;
    cuts.push_back(s - std::floor(s));
  }
  std::sort(cuts.begin(), cuts.end());
  double mass = 0.0;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] <= cuts[k]) continue;
    double mid = (cuts[k] + cuts[k + 1]) / 2;
    auto sel = select_at(m, mid);
    if (std::find(sel.begin(), sel.end(), i) != sel.end()) mass += cuts[k + 1] - cuts[k];
  }
  return mass;
}

}  // namespace

TEST_CASE("degenerate marginals select deterministically", "[pivotal]") {
  for (double u : {0.0, 0.25, 0.5, 0.99}) {
    CHECK(select_at({1.0}, u) == std::vector<int>{0});
    CHECK(select_at({0.0, 0.0}, u).empty());
    CHECK(select_at({1.0, 1.0}, u) == std::vector<int>{0, 1});
  }
  // [0.3]: selected exactly when u < 0.3.
  CHECK(select_at({0.3}, 0.1) == std::vector<int>{0});
  CHECK(select_at({0.3}, 0.3).empty());
  CHECK(select_at({0.3}, 0.9).empty());
}

TEST_CASE("[0.5, 0.5] always selects exactly one index", "[pivotal]") {
  for (int g = 0; g < 1000; ++g) {
    auto sel = select_at({0.5, 0.5}, (g + 0.5) / 1000);
    REQUIRE(sel.size() == 1);
  }
  CHECK(exact_marginal({0.5, 0.5}, 0) == Catch::Approx(0.5).margin(1e-12));
  CHECK(exact_marginal({0.5, 0.5}, 1) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("marginals are exact as measures of the uniform draw", "[pivotal]") {
  std::vector<std::vector<double>> vectors = {
      {0.6, 0.9}, {0.2, 0.3, 0.4}, {0.8, 0.8, 0.8}, {0.1, 1.0, 0.35, 0.55}, {0.25, 0.25, 0.25}};
  for (const auto& m : vectors)
    for (size_t i = 0; i < m.size(); ++i)
      CHECK(exact_marginal(m, static_cast<int>(i)) == Catch::Approx(m[i]).margin(1e-12));
}

TEST_CASE("prefix_hit_probability clamps the prefix sums", "[pivotal]") {
  CHECK(pivotal::prefix_hit_probability({0.2, 0.3}, 2) == Catch::Approx(0.5).margin(1e-15));
  CHECK(pivotal::prefix_hit_probability({0.8, 0.8}, 2) == 1.0);
  CHECK(pivotal::prefix_hit_probability({0.25, 0.25, 0.25, 0.25}, 3) == Catch::Approx(0.75).margin(1e-15));
  CHECK_THROWS_AS(pivotal::prefix_hit_probability({0.5}, 0), std::invalid_argument);
  CHECK_THROWS_AS(pivotal::prefix_hit_probability({0.5}, 2), std::invalid_argument);
}

TEST_CASE("marginals outside [0,1] are rejected, tiny slack tolerated", "[pivotal]") {
  RngStream rng(1);
  CHECK_THROWS_AS(pivotal::sample({1.1}, rng), std::invalid_argument);
  CHECK_THROWS_AS(pivotal::sample({-0.2}, rng), std::invalid_argument);
  CHECK_NOTHROW(pivotal::sample({1.0 + 5e-13}, rng));
  CHECK_NOTHROW(pivotal::sample({-5e-13}, rng));
}

TEST_CASE("sampling is deterministic and respects the cardinality cap", "[pivotal]") {
  std::vector<double> m{0.3, 0.7, 0.5, 0.2, 0.9};
  double sum = 0.0;
  for (double v : m) sum += v;
  const int cap = static_cast<int>(std::ceil(sum - 1e-12));
  RngStream a(42), b(42);
  for (int t = 0; t < 2000; ++t) {
    auto s1 = pivotal::sample(m, a);
    auto s2 = pivotal::sample(m, b);
    CHECK(s1 == s2);
    CHECK(static_cast<int>(s1.size()) <= cap);
    CHECK(std::is_sorted(s1.begin(), s1.end()));
  }
}

TEST_CASE("empirical marginals and prefix hits stay in the statistical band", "[pivotal]") {
  const int draws = 30000;
  RngStream vec_rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    int len = 2 + vec_rng.uniform_int(5);
    std::vector<double> m(len);
    for (auto& v : m) v = vec_rng.uniform01();
    std::vector<int> hits(len, 0), prefix_hits(len, 0);
    RngStream rng(derive_seed(7, rep));
    for (int t = 0; t < draws; ++t) {
      auto s = pivotal::sample(m, rng);
      for (int i : s) hits[i]++;
      if (!s.empty())
        for (int k = s.front(); k < len; ++k) prefix_hits[k]++;
    }
    for (int i = 0; i < len; ++i) {
      double se = std::sqrt(std::max(m[i] * (1 - m[i]), 1e-12) / draws);
      CHECK(std::abs(static_cast<double>(hits[i]) / draws - m[i]) <= 4 * se + 1e-9);
      double p = pivotal::prefix_hit_probability(m, i + 1);
      double pse = std::sqrt(std::max(p * (1 - p), 1e-12) / draws);
      CHECK(std::abs(static_cast<double>(prefix_hits[i]) / draws - p) <= 4 * pse + 1e-9);
    }
  }
}

TEST_CASE("first_selected matches the minimum of sample", "[pivotal]") {
  std::vector<double> m{0.6, 0.9, 0.1};
  RngStream a(99), b(99);
  for (int t = 0; t < 5000; ++t) {
    auto first = pivotal::first_selected(m, a);
    auto full = pivotal::sample(m, b);
    if (full.empty())
      CHECK_FALSE(first.has_value());
    else
      CHECK(first.value() == full.front());
  }
  // [1.0, 0.7]: index 0 always; zero vector: never.
  RngStream c(5);
  for (int t = 0; t < 100; ++t) {
    CHECK(pivotal::first_selected({1.0, 0.7}, c).value() == 0);
    CHECK_FALSE(pivotal::first_selected({0.0, 0.0}, c).has_value());
  }
  // [0.6, 0.9]: Pr[0] = 0.6, Pr[1] = min(1, 1.5) - 0.6 = 0.4, never empty.
  int n0 = 0, n1 = 0;
  const int draws = 50000;
  RngStream d(11);
  for (int t = 0; t < draws; ++t) {
    auto f = pivotal::first_selected({0.6, 0.9}, d);
    REQUIRE(f.has_value());
    (f.value() == 0 ? n0 : n1)++;
  }
  CHECK(std::abs(n0 / static_cast<double>(draws) - 0.6) < 0.01);
  CHECK(std::abs(n1 / static_cast<double>(draws) - 0.4) < 0.01);
}
