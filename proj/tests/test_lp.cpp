#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <vector>

#include "sml/builtins.hpp"
#include "sml/instance.hpp"
#include "sml/lp.hpp"
#include "sml/rng.hpp"

using namespace sml;

namespace {

ProblemInstance one_by_one(double lambda = 1, double mu = 1, double gamma = 1, double r = 1) {
  ProblemInstance inst;
  inst.offline.push_back({0, lambda, mu, Section::NONE});
  inst.online.push_back({0, gamma});
  inst.edges.push_back({0, 0, r});
  inst.finalize();
  return inst;
}

ProblemInstance random_instance(RngStream& rng, int max_i, int max_j) {
  ProblemInstance inst;
  int nI = 1 + rng.uniform_int(max_i), nJ = 1 + rng.uniform_int(max_j);
  for (int i = 0; i < nI; ++i)
    inst.offline.push_back({i, rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0), Section::NONE});
  for (int j = 0; j < nJ; ++j) inst.online.push_back({j, rng.uniform(0.2, 3.0)});
  for (int i = 0; i < nI; ++i)
    for (int j = 0; j < nJ; ++j)
      if (rng.uniform01() < 0.7) inst.edges.push_back({i, j, rng.uniform(0.0, 10.0)});
  if (inst.edges.empty()) inst.edges.push_back({0, 0, 1.0});
  inst.finalize();
  return inst;
}

}  // namespace

TEST_CASE("separation oracle on hand inputs", "[lp]") {
  auto inst = one_by_one();
  CHECK_FALSE(separation_oracle(inst, {0.0}, 0).has_value());  // x = 0 violates nothing

  auto res = separation_oracle(inst, {0.9}, 0);
  REQUIRE(res.has_value());
  CHECK(res->subset == std::vector<int>{0});
  CHECK(res->violation == Catch::Approx(0.9 + std::expm1(-1.0)).margin(1e-12));

  CHECK_THROWS_AS(separation_oracle(inst, {0.9}, 3), std::invalid_argument);
}

TEST_CASE("separation oracle equals the exhaustive subset maximum", "[lp]") {
  RngStream rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    ProblemInstance inst;
    const int n = 10;
    for (int i = 0; i < n; ++i)
      inst.offline.push_back({i, rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0), Section::NONE});
    inst.online.push_back({0, rng.uniform(0.2, 3.0)});
    for (int i = 0; i < n; ++i) inst.edges.push_back({i, 0, 1.0});
    inst.finalize();
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform01() * inst.offline[i].lambda;

    auto res = separation_oracle(inst, x, 0, -1e300);
    REQUIRE(res.has_value());
    double brute = -1e300;
    std::vector<int> H;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      H.clear();
      double sx = 0.0;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) {
          H.push_back(i);
          sx += x[i];
        }
      brute = std::max(brute, sx - subset_cap(inst, 0, H));
    }
    CHECK(std::abs(res->violation - brute) <= 1e-10);
  }
}

TEST_CASE("1x1 hand solves", "[lp]") {
  auto inst = one_by_one();

  auto on = solve_tlp(inst, Benchmark::ONLINE);
  CHECK(on.objective == Catch::Approx(0.5).margin(1e-6));
  CHECK(on.x_match[0] == Catch::Approx(0.5).margin(1e-6));
  CHECK(on.x_abandon[0] == Catch::Approx(0.5).margin(1e-6));

  auto off = solve_tlp(inst, Benchmark::OFFLINE);
  CHECK(off.objective == Catch::Approx(-std::expm1(-1.0)).margin(1e-6));

  auto abl = solve_tlp_ablated(inst);
  CHECK(abl.objective == Catch::Approx(0.5).margin(1e-6));  // ratio cap still binds
}

TEST_CASE("builtin objectives and the b1 ablation gap", "[lp]") {
  auto b1 = example_instance("b1", 50).instance;
  double gamma = b1.online[0].gamma;
  auto full = solve_tlp(b1, Benchmark::ONLINE);
  // Subset constraint with H = I: objective <= gamma (1 - e^{-sum lambda/mu}).
  CHECK(full.objective == Catch::Approx(-std::expm1(-1.0) * gamma).margin(1e-10));

  auto abl = solve_tlp_ablated(b1);
  CHECK(abl.objective >= full.objective - 1e-12);       // relaxation
  CHECK(abl.objective >= 1.0 / (50.0 * 51.0) - 1e-12);  // known feasible point
  CHECK(abl.objective <= gamma + 1e-12);

  auto b2 = example_instance("b2", 100).instance;
  auto sol2 = solve_tlp(b2, Benchmark::ONLINE);
  CHECK(sol2.objective == Catch::Approx(9.0 * -std::expm1(-10.0)).epsilon(1e-9));

  auto b3 = example_instance("b3", 50);
  auto sol3 = solve_tlp(b3.instance, Benchmark::ONLINE);
  CHECK(sol3.objective == Catch::Approx(1.0).margin(1e-7));
  CHECK(b3.canonical->objective == Catch::Approx(1.0).margin(1e-12));
  CHECK(check_solution(b3.instance, *b3.canonical, 200).empty());
}

TEST_CASE("empty edge set solves to zero", "[lp]") {
  ProblemInstance inst;
  inst.offline.push_back({0, 1.0, 1.0, Section::NONE});
  inst.online.push_back({0, 1.0});
  inst.finalize();
  CHECK(solve_tlp(inst, Benchmark::ONLINE).objective == 0.0);
  CHECK(solve_tlp_ablated(inst).objective == 0.0);
}

TEST_CASE("online is dominated by offline; both pass feasibility checks", "[lp]") {
  RngStream rng(501);
  for (int trial = 0; trial < 8; ++trial) {
    auto inst = random_instance(rng, 5, 4);
    SolveInfo info_on, info_off;
    auto on = solve_tlp(inst, Benchmark::ONLINE, {}, &info_on);
    auto off = solve_tlp(inst, Benchmark::OFFLINE, {}, &info_off);
    auto abl = solve_tlp_ablated(inst);
    CHECK(on.objective <= off.objective + 1e-7);
    CHECK(on.objective <= abl.objective + 1e-7);
    CHECK(check_solution(inst, on, 10000).empty());
    CHECK(check_solution(inst, off, 10000).empty());
    CHECK(info_on.rounds >= 1);

    // Proposal probabilities land in [0,1] for every solve.
    for (const auto* sol : {&on, &off}) {
      auto prop = proposal_probabilities(inst, *sol);
      for (double p : prop.p) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
      }
    }
  }
}

TEST_CASE("solver output is deterministic", "[lp]") {
  RngStream rng(77);
  auto inst = random_instance(rng, 6, 3);
  auto a = solve_tlp(inst, Benchmark::ONLINE);
  auto b = solve_tlp(inst, Benchmark::ONLINE);
  CHECK(a.objective == b.objective);
  CHECK(a.x_match == b.x_match);
  CHECK(a.x_abandon == b.x_abandon);
}

TEST_CASE("proposal probabilities on hand solutions", "[lp]") {
  auto inst = one_by_one();
  auto on = solve_tlp(inst, Benchmark::ONLINE);
  CHECK(proposal_probabilities(inst, on).p[0] == Catch::Approx(1.0).margin(1e-6));
  auto off = solve_tlp(inst, Benchmark::OFFLINE);
  CHECK(proposal_probabilities(inst, off).p[0] == Catch::Approx(1.0).margin(1e-6));

  LpSolution zero;
  zero.benchmark = Benchmark::ONLINE;
  zero.x_match = {0.0};
  zero.x_abandon = {1.0};
  CHECK(proposal_probabilities(inst, zero).p[0] == 0.0);

  LpSolution bad;  // positive match rate with zero abandonment is infeasible
  bad.benchmark = Benchmark::ONLINE;
  bad.x_match = {0.5};
  bad.x_abandon = {0.0};
  CHECK_THROWS(proposal_probabilities(inst, bad));
}

TEST_CASE("lp_gain sums rewards over online subsets", "[lp]") {
  auto b3 = example_instance("b3", 4);
  const auto& inst = b3.instance;
  const auto& sol = *b3.canonical;
  CHECK(lp_gain(inst, sol) == Catch::Approx(sol.objective).margin(1e-12));
  CHECK(lp_gain(inst, sol, {}) == 0.0);
  CHECK(lp_gain(inst, sol, {4}) == Catch::Approx(1.0).margin(1e-12));  // the rewarded type
  CHECK(lp_gain(inst, sol, {0}) == 0.0);
  CHECK_THROWS_AS(lp_gain(inst, sol, {9}), std::invalid_argument);
}

TEST_CASE("k3 reduction solves to hand values", "[lp]") {
  GeneralInstance k3;
  for (int v = 0; v < 3; ++v) k3.vertices.push_back({v, 1.0, 1.0});
  k3.rewards.push_back({0, 1, 1.0});
  k3.rewards.push_back({1, 2, 1.0});
  k3.rewards.push_back({0, 2, 1.0});
  auto inst = bipartite_reduction(k3);
  // Symmetric optimum: ratio constraint x <= gamma x_a binds ONLINE at
  // x = 1/8 per edge; the pair subset cap binds OFFLINE at 2x = gamma (1-1/e).
  auto on = solve_tlp(inst, Benchmark::ONLINE);
  CHECK(on.objective == Catch::Approx(0.75).margin(1e-6));
  auto off = solve_tlp(inst, Benchmark::OFFLINE);
  CHECK(off.objective == Catch::Approx(1.5 * -std::expm1(-1.0)).margin(1e-6));
}

TEST_CASE("solution json round-trips", "[lp]") {
  auto inst = example_instance("b3", 4).instance;
  auto sol = solve_tlp(inst, Benchmark::ONLINE);
  auto path = std::filesystem::temp_directory_path() / "sml_test_solution.json";
  save_solution(inst, sol, path.string());
  auto back = load_solution(inst, path.string());
  CHECK(back.benchmark == sol.benchmark);
  CHECK(back.objective == Catch::Approx(sol.objective).margin(1e-12));
  REQUIRE(back.x_match.size() == sol.x_match.size());
  for (size_t k = 0; k < sol.x_match.size(); ++k)
    CHECK(back.x_match[k] == Catch::Approx(sol.x_match[k]).margin(1e-12));
  for (size_t i = 0; i < sol.x_abandon.size(); ++i)
    CHECK(back.x_abandon[i] == Catch::Approx(sol.x_abandon[i]).margin(1e-12));
  std::filesystem::remove(path);
}
