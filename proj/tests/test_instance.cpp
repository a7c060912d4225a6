#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "sml/builtins.hpp"
#include "sml/instance.hpp"

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

bool has_violation(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("validate accepts a well-formed 1x1 instance", "[instance]") {
  CHECK(validate(one_by_one()).empty());
}

TEST_CASE("validate reports each invariant violation", "[instance]") {
  ProblemInstance inst;
  inst.offline.push_back({0, 1.0, 1.0, Section::NONE});
  inst.offline.push_back({1, 0.0, 1.0, Section::NONE});  // bad lambda
  inst.online.push_back({0, 1.0});
  inst.edges.push_back({0, 5, 1.0});   // dangling online id
  inst.edges.push_back({1, 0, -2.0});  // negative reward
  inst.edges.push_back({1, 0, 1.0});   // duplicate key
  auto v = validate(inst);
  CHECK(has_violation(v, "offline 1: lambda must be > 0"));
  CHECK(has_violation(v, "unknown online id 5"));
  CHECK(has_violation(v, "reward must be >= 0"));
  CHECK(has_violation(v, "duplicate reward entry (1,0)"));

  ProblemInstance empty;
  CHECK(has_violation(validate(empty), "at least one offline type"));
  CHECK(has_violation(validate(empty), "at least one online type"));
}

TEST_CASE("split_offline_type halves rates and duplicates rewards", "[instance]") {
  auto base = one_by_one(1.0, 2.0, 1.0, 3.0);
  auto split = split_offline_type(base, 0, 2);
  REQUIRE(split.n_offline() == 2);
  CHECK(split.offline[0].lambda == 0.5);
  CHECK(split.offline[1].lambda == 0.5);
  CHECK(split.offline[0].mu == 2.0);
  CHECK(split.offline[1].mu == 2.0);
  REQUIRE(split.n_edges() == 2);
  CHECK(split.edges[0].r == 3.0);
  CHECK(split.edges[1].r == 3.0);
  CHECK(validate(split).empty());

  auto same = split_offline_type(base, 0, 1);  // K = 1 is the identity
  CHECK(same.n_offline() == 1);
  CHECK(same.offline[0].lambda == 1.0);
  CHECK(same.n_edges() == 1);
}

TEST_CASE("split_offline_type conserves total arrival rate", "[instance]") {
  auto base = one_by_one(1.0);
  for (int K : {3, 4, 7}) {
    auto split = split_offline_type(base, 0, K);
    double total = 0.0;
    for (const auto& o : split.offline) total += o.lambda;
    CHECK(total == Catch::Approx(1.0).margin(1e-12));
    CHECK(split.n_offline() == K);
  }
  CHECK_THROWS_AS(split_offline_type(base, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(split_offline_type(base, 0, 0), std::invalid_argument);
}

TEST_CASE("splitting drives the per-copy offered load below eps^2", "[instance]") {
  // K sized like ceil((lambda/mu)/eps^2) caps every copy at lambda'/mu <= eps^2.
  auto base = one_by_one(5.0, 2.0);
  double eps = 0.5;
  int K = static_cast<int>(std::ceil(base.offline[0].lambda / base.offline[0].mu / (eps * eps)));
  auto split = split_offline_type(base, 0, K);
  for (const auto& o : split.offline) CHECK(o.lambda / o.mu <= eps * eps + 1e-15);
}

TEST_CASE("top_bot_split halves rates and balances both sections", "[instance]") {
  ProblemInstance inst;
  inst.offline.push_back({0, 2.0, 1.0, Section::NONE});
  inst.offline.push_back({1, 0.7, 0.3, Section::NONE});
  inst.offline.push_back({2, 1.3, 2.1, Section::NONE});
  inst.online.push_back({0, 1.0});
  inst.online.push_back({1, 0.5});
  inst.edges.push_back({0, 0, 1.0});
  inst.edges.push_back({1, 0, 2.0});
  inst.edges.push_back({1, 1, 0.5});
  inst.edges.push_back({2, 1, 1.5});
  inst.finalize();

  auto split = top_bot_split(inst);
  REQUIRE(split.n_offline() == 6);
  CHECK(split.n_edges() == 2 * inst.n_edges());
  for (int i = 0; i < 3; ++i) {
    CHECK(split.offline[i].section == Section::TOP);
    CHECK(split.offline[i + 3].section == Section::BOT);
    CHECK(split.offline[i].lambda == inst.offline[i].lambda / 2);
    CHECK(split.offline[i + 3].lambda == inst.offline[i].lambda / 2);
    CHECK(split.offline[i].mu == inst.offline[i].mu);
  }
  for (int j = 0; j < split.n_online(); ++j) {
    double top = 0.0, bot = 0.0;
    for (int k : split.online_adj(j)) {
      const auto& o = split.offline[split.edges[k].i];
      (o.section == Section::TOP ? top : bot) += o.lambda / o.mu;
    }
    CHECK(std::abs(top - bot) <= 1e-12);
  }
  CHECK(validate(split).empty());
  CHECK_THROWS_AS(top_bot_split(split), std::invalid_argument);  // already labeled
}

TEST_CASE("builtin b1 matches its definition", "[instance]") {
  auto ex = example_instance("b1", 50);
  const auto& inst = ex.instance;
  REQUIRE(inst.n_offline() == 50);
  REQUIRE(inst.n_online() == 1);
  for (const auto& o : inst.offline) {
    CHECK(o.lambda == 1.0 / 50);
    CHECK(o.mu == 1.0);
  }
  CHECK(inst.online[0].gamma == Catch::Approx(4e-4).epsilon(1e-12));
  for (const auto& e : inst.edges) CHECK(e.r == 1.0);
  CHECK(validate(inst).empty());
  CHECK_FALSE(ex.canonical.has_value());
}

TEST_CASE("builtin b2 matches its definition", "[instance]") {
  auto ex = example_instance("b2", 100);
  const auto& inst = ex.instance;
  REQUIRE(inst.n_offline() == 100);
  for (const auto& o : inst.offline) CHECK(o.lambda == Catch::Approx(0.1).epsilon(1e-12));
  CHECK(inst.online[0].gamma == Catch::Approx(9.0).epsilon(1e-12));
  CHECK(validate(inst).empty());
}

TEST_CASE("builtin b3 ships zero-reward self edges and a canonical solution", "[instance]") {
  auto ex = example_instance("b3", 4);
  const auto& inst = ex.instance;
  REQUIRE(inst.n_offline() == 4);
  REQUIRE(inst.n_online() == 5);
  for (int j = 0; j < 4; ++j) CHECK(inst.online[j].gamma == 4.0);
  CHECK(inst.online[4].gamma == 1.0);
  for (int i = 0; i < 4; ++i) {
    int self = inst.edge_index(i, i);
    REQUIRE(self >= 0);  // explicit r = 0 entries are real edges
    CHECK(inst.edges[self].r == 0.0);
    int last = inst.edge_index(i, 4);
    REQUIRE(last >= 0);
    CHECK(inst.edges[last].r == 1.0);
  }
  REQUIRE(ex.canonical.has_value());
  const auto& sol = *ex.canonical;
  for (int i = 0; i < 4; ++i) {
    CHECK(sol.x_match[inst.edge_index(i, 4)] == Catch::Approx(0.25).epsilon(1e-12));
    CHECK(sol.x_match[inst.edge_index(i, i)] == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(sol.x_abandon[i] == Catch::Approx(0.25).epsilon(1e-12));
  }
  CHECK(sol.objective == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(validate(inst).empty());
}

TEST_CASE("builtins validate across sizes", "[instance]") {
  for (int n : {2, 17, 1000}) {
    CHECK(validate(example_instance("b1", n).instance).empty());
    CHECK(validate(example_instance("b2", n).instance).empty());
    CHECK(validate(example_instance("b3", n).instance).empty());
  }
  CHECK(validate(example_instance("b2", 10000).instance).empty());
  CHECK(is_builtin_name("B1"));
  CHECK_FALSE(is_builtin_name("b4"));
  CHECK_THROWS_AS(example_instance("b4", 10), std::invalid_argument);
  CHECK_THROWS_AS(example_instance("b1", 1), std::invalid_argument);
}

TEST_CASE("bipartite reduction halves rates and keeps sides apart", "[instance]") {
  GeneralInstance g;
  g.vertices.push_back({0, 2.0, 3.0});
  g.rewards.push_back({0, 0, 1.0});
  auto inst = bipartite_reduction(g);
  REQUIRE(inst.n_offline() == 1);
  REQUIRE(inst.n_online() == 1);
  CHECK(inst.offline[0].lambda == 1.0);
  CHECK(inst.offline[0].mu == 3.0);
  CHECK(inst.online[0].gamma == 1.0);
  REQUIRE(inst.n_edges() == 1);
  CHECK(inst.edges[0].r == 1.0);

  GeneralInstance k3;
  for (int v = 0; v < 3; ++v) k3.vertices.push_back({v, 1.0, 1.0});
  k3.rewards.push_back({0, 1, 1.0});
  k3.rewards.push_back({1, 2, 1.0});
  k3.rewards.push_back({0, 2, 1.0});
  auto tri = bipartite_reduction(k3);
  REQUIRE(tri.n_edges() == 6);  // each unordered pair becomes two cross edges
  for (const auto& e : tri.edges) CHECK(e.i != e.j);
  for (const auto& o : tri.offline) CHECK(o.lambda == 0.5);
  for (const auto& o : tri.online) CHECK(o.gamma == 0.5);

  GeneralInstance zero;
  zero.vertices.push_back({0, 1.0, 1.0});
  zero.vertices.push_back({1, 1.0, 1.0});
  CHECK(bipartite_reduction(zero).n_edges() == 0);

  GeneralInstance bad = k3;
  bad.rewards.push_back({1, 0, 2.0});  // disagrees with (0,1) = 1
  CHECK_THROWS_AS(bipartite_reduction(bad), std::invalid_argument);
}

TEST_CASE("instance json round-trips and accepts decimal strings", "[instance]") {
  auto ex = example_instance("b3", 5);
  auto path = std::filesystem::temp_directory_path() / "sml_test_instance.json";
  save_instance(ex.instance, path.string());
  auto back = load_instance(path.string());
  REQUIRE(back.n_offline() == ex.instance.n_offline());
  REQUIRE(back.n_online() == ex.instance.n_online());
  REQUIRE(back.n_edges() == ex.instance.n_edges());
  for (int k = 0; k < back.n_edges(); ++k) {
    CHECK(back.edges[k].i == ex.instance.edges[k].i);
    CHECK(back.edges[k].j == ex.instance.edges[k].j);
    CHECK(back.edges[k].r == ex.instance.edges[k].r);
  }
  for (int i = 0; i < back.n_offline(); ++i) {
    CHECK(back.offline[i].lambda == ex.instance.offline[i].lambda);
    CHECK(back.offline[i].mu == ex.instance.offline[i].mu);
  }
  std::filesystem::remove(path);

  auto js = nlohmann::json::parse(R"({
    "offline": [{"id": 0, "lambda": "0.25", "mu": 1.0}],
    "online": [{"id": 0, "gamma": "2"}],
    "rewards": [{"i": 0, "j": 0, "r": "1.5"}]
  })");
  auto inst = instance_from_json(js);
  CHECK(inst.offline[0].lambda == 0.25);
  CHECK(inst.online[0].gamma == 2.0);
  CHECK(inst.edges[0].r == 1.5);

  auto dup = nlohmann::json::parse(R"({
    "offline": [{"id": 0, "lambda": 1, "mu": 1}],
    "online": [{"id": 0, "gamma": 1}],
    "rewards": [{"i": 0, "j": 0, "r": 1}, {"i": 0, "j": 0, "r": 2}]
  })");
  CHECK_THROWS_AS(instance_from_json(dup), std::invalid_argument);
}

TEST_CASE("gamma_around totals the online neighborhood", "[instance]") {
  ProblemInstance inst;
  inst.offline.push_back({0, 1.0, 1.0, Section::NONE});
  inst.online.push_back({0, 0.75});
  inst.online.push_back({1, 1.5});
  inst.online.push_back({2, 4.0});  // not a neighbor
  inst.edges.push_back({0, 0, 1.0});
  inst.edges.push_back({0, 1, 1.0});
  inst.finalize();
  CHECK(inst.gamma_around(0) == Catch::Approx(2.25).epsilon(1e-15));
  CHECK(inst.min_rate() == 0.75);
  CHECK(inst.edge_index(0, 2) == -1);
}
