#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sml/builtins.hpp"
#include "sml/instance.hpp"

#ifndef SML_CLI_PATH
#error "SML_CLI_PATH must point at the cli binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path work_dir() {
  auto dir = fs::temp_directory_path() / "sml_cli_tests";
  fs::create_directories(dir);
  return dir;
}

RunResult run(const std::string& args) {
  auto dir = work_dir();
  auto out = dir / "stdout.txt", err = dir / "stderr.txt";
  std::string cmd =
      std::string(SML_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string one_by_one_path() {
  auto p = work_dir() / "one.json";
  sml::ProblemInstance inst;
  inst.offline.push_back({0, 1.0, 1.0, sml::Section::NONE});
  inst.online.push_back({0, 1.0});
  inst.edges.push_back({0, 0, 1.0});
  inst.finalize();
  sml::save_instance(inst, p.string());
  return p.string();
}

std::string labeled_path() {
  auto p = work_dir() / "labeled.json";
  sml::ProblemInstance inst;
  inst.offline.push_back({0, 1.0, 1.0, sml::Section::TOP});
  inst.offline.push_back({1, 1.0, 1.0, sml::Section::BOT});
  inst.online.push_back({0, 1.0});
  inst.edges.push_back({0, 0, 1.0});
  inst.edges.push_back({1, 0, 1.0});
  inst.finalize();
  sml::save_instance(inst, p.string());
  return p.string();
}

}  // namespace

TEST_CASE("solve prints the b1 objective", "[cli]") {
  auto r = run("solve --instance b1 --n 50");
  CHECK(r.code == 0);
  CHECK(r.out.find("benchmark=ONLINE") != std::string::npos);
  CHECK(r.out.find("objective=0.000252848") != std::string::npos);
  CHECK(r.err.find("solve time") != std::string::npos);  // timings go to stderr only
}

TEST_CASE("solve handles files, benchmarks and output dirs", "[cli]") {
  auto inst = one_by_one_path();
  auto r = run("solve --instance " + inst + " --benchmark offline");
  CHECK(r.code == 0);
  CHECK(r.out.find("objective=0.632120559") != std::string::npos);

  auto outdir = (work_dir() / "solve_out").string();
  auto r2 = run("solve --instance " + inst + " --out " + outdir);
  CHECK(r2.code == 0);
  CHECK(fs::exists(fs::path(outdir) / "solution.json"));

  CHECK(run("solve --instance /nonexistent/file.json").code == 2);
  CHECK(run("solve --instance " + inst + " --benchmark sideways").code == 2);
}

TEST_CASE("simulate is byte-deterministic under a fixed seed", "[cli]") {
  auto inst = one_by_one_path();
  std::string args = "simulate --instance " + inst +
                     " --policy correlated --reps 3 --seed 7 --horizon 3000";
  auto a = run(args);
  auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("policy,seed,horizon,reward_rate,ci,replication,burn_in,batches,", 0) == 0);
  // three replications + header
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 4);
}

TEST_CASE("simulate no-match produces zero rewards", "[cli]") {
  auto inst = one_by_one_path();
  auto r = run("simulate --instance " + inst + " --policy no-match --horizon 2000");
  REQUIRE(r.code == 0);
  std::istringstream ss(r.out);
  std::string line;
  std::getline(ss, line);  // header
  while (std::getline(ss, line)) {
    CHECK(line.rfind("no-match,", 0) == 0);
    // reward_rate is the 4th column
    size_t pos = 0;
    for (int c = 0; c < 3; ++c) pos = line.find(',', pos) + 1;
    CHECK(line.substr(pos, line.find(',', pos) - pos) == "0");
  }
}

TEST_CASE("simulate enforces policy prerequisites", "[cli]") {
  auto inst = one_by_one_path();
  auto r = run("simulate --instance " + inst + " --policy balanced-greedy --horizon 100");
  CHECK(r.code == 2);
  CHECK(r.err.find("label") != std::string::npos);

  auto labeled = labeled_path();
  auto ok = run("simulate --instance " + labeled + " --policy balanced-greedy --horizon 500");
  CHECK(ok.code == 0);

  CHECK(run("simulate --instance " + inst + " --policy warp --horizon 100").code == 2);
  CHECK(run("simulate --instance " + inst + " --reps 0").code == 2);
}

TEST_CASE("classify reports the vwhc verdict", "[cli]") {
  auto r = run("classify --instance b3 --n 50 --canonical");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("type_id,verdict,r_threshold,gain_share", 0) == 0);
  CHECK(r.out.find("50,HARD,") != std::string::npos);
  CHECK(r.out.find("vwhc=true\n") != std::string::npos);

  auto inst = one_by_one_path();
  auto r2 = run("classify --instance " + inst);
  REQUIRE(r2.code == 0);
  CHECK(r2.out.find("vwhc=false\n") != std::string::npos);

  CHECK(run("classify --instance " + inst + " --epsilon 0.5").code == 2);
}

TEST_CASE("experiment suites report and exit by pass state", "[cli]") {
  auto outdir = (work_dir() / "exp_out").string();
  auto r = run("experiment ablation-b1 --out " + outdir);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("[PASS] criterion 5") != std::string::npos);
  CHECK(r.out.find("ratio=") != std::string::npos);
  CHECK(slurp(fs::path(outdir) / "experiment.txt") == r.out);

  auto b2 = run("experiment example-b2");
  CHECK(b2.code == 0);
  CHECK(b2.out.find("[PASS] criterion 8") != std::string::npos);

  CHECK(run("experiment no-such-suite").code == 2);
}

TEST_CASE("usage errors exit with code 2, help with 0", "[cli]") {
  CHECK(run("").code == 2);             // a subcommand is required
  CHECK(run("frobnicate").code == 2);   // unknown subcommand
  CHECK(run("--help").code == 0);
  CHECK(run("solve --no-such-flag").code == 2);
}
