#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

using namespace dhtsp;
using namespace dhtsp::testing;

namespace {

struct Output {
  int status = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dhtsp_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Output run(const std::string& args) {
  const auto err = scratch("stderr.txt");
  const std::string cmd = std::string(DHTSP_CLI) + " " + args + " 2>" + err.string();
  Output o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  o.err = slurp(err);
  return o;
}

std::string write_instance(const Instance& inst, const std::string& name) {
  const auto p = scratch(name);
  write_json(inst, p);
  return p.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("solve: single target") {
    const auto path = write_instance(single_target(3, 1), "n1.json");
    const auto o = run("solve " + path);
    CHECK(o.status == 0);
    CHECK(o.out ==
          R"({"total":2,"cost1":0,"cost2":2,"tour1":[0],"tour2":[0,1,0],"hsf_cost":1,"dual_objective":2,)"
          R"("ratio_vs_dual":1,"iterations":2,"feasible":true,"arithmetic":"float"})"
          "\n");
    CHECK(o.err.find("iterations") != std::string::npos);
  }

  TEST_CASE("solve: empty instance") {
    const auto o = run("solve " + write_instance(generate(0, 1, 1), "n0.json"));
    CHECK(o.status == 0);
    const auto j = nlohmann::json::parse(o.out);
    CHECK(j["total"] == 0);
    CHECK(j["iterations"] == 0);
  }

  TEST_CASE("solve: trace file matches the golden trace") {
    const auto trace = scratch("trace.jsonl");
    const auto o = run("solve " + std::string(DHTSP_GOLDEN_DIR) + "/n1_vehicle2.json --trace " + trace.string());
    CHECK(o.status == 0);
    CHECK(slurp(trace) == slurp(std::string(DHTSP_GOLDEN_DIR) + "/n1_vehicle2.trace.jsonl"));
  }

  TEST_CASE("solve: exact arithmetic and no-certificate") {
    const auto path = write_instance(single_target(3, 1), "n1x.json");
    auto o = run("solve " + path + " --exact-arith");
    CHECK(o.status == 0);
    auto j = nlohmann::json::parse(o.out);
    CHECK(j["arithmetic"] == "rational");
    CHECK(j["exact"]["total"] == "2");
    o = run("solve " + path + " --no-certificate");
    CHECK(o.status == 0);
    j = nlohmann::json::parse(o.out);
    CHECK_FALSE(j.contains("feasible"));
  }

  TEST_CASE("solve: dominance violation exits 1 naming the rule") {
    const auto inst = make_instance({{0, 3, 3}, {3, 0, 5}, {3, 5, 0}}, {{0, 3, 3}, {3, 0, 4}, {3, 4, 0}});
    const auto o = run("solve " + write_instance(inst, "dom.json"));
    CHECK(o.status == 1);
    CHECK(o.out.empty());
    CHECK(o.err.find("dominance") != std::string::npos);
  }

  TEST_CASE("solve: unreadable input exits 1") {
    CHECK(run("solve " + scratch("missing.json").string()).status == 1);
    std::ofstream(scratch("bad.json")) << R"({"n_targets":1,"cost1":[[0,1],[1,0]]})";
    const auto o = run("solve " + scratch("bad.json").string());
    CHECK(o.status == 1);
    CHECK(o.err.find("cost2") != std::string::npos);
  }

  TEST_CASE("solve: byte-identical output") {
    const auto path = write_instance(generate(40, 1.3, 5), "n40.json");
    const auto a = run("solve " + path);
    const auto b = run("solve " + path);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("gen then solve") {
    const auto path = scratch("gen5.json");
    CHECK(run("gen --n 5 --alpha 1.5 --seed 42 -o " + path.string()).status == 0);
    const auto inst = read_json(path);
    CHECK(inst == generate(5, 1.5, 42));
    CHECK(run("solve " + path.string()).status == 0);
    const auto empty = run("gen --n 0");
    CHECK(empty.status == 0);
    CHECK(validate(instance_from_json(nlohmann::json::parse(empty.out))).ok());
  }

  TEST_CASE("gen rejects alpha below 1") {
    const auto o = run("gen --n 3 --alpha 0.5");
    CHECK(o.status == 1);
    CHECK(o.err.find("alpha must be >= 1") != std::string::npos);
  }

  TEST_CASE("oracle") {
    auto o = run("oracle " + write_instance(single_target(3, 1), "o1.json"));
    CHECK(o.status == 0);
    auto j = nlohmann::json::parse(o.out);
    CHECK(j["optimal"] == 2);
    CHECK(j["assigned_to_v2"] == nlohmann::json::array({0}));
    o = run("oracle " + write_instance(generate(0, 1, 1), "o0.json"));
    CHECK(nlohmann::json::parse(o.out)["optimal"] == 0);
    o = run("oracle " + write_instance(generate(13, 1.2, 1), "o13.json"));
    CHECK(o.status == 1);
    CHECK(o.err.find("at most 12") != std::string::npos);
  }

  TEST_CASE("bench: deterministic rows within the iteration bound") {
    const auto a = run("bench --sizes 10,100 --trials 3 --seed 1");
    CHECK(a.status == 0);
    std::istringstream lines(a.out);
    std::string line;
    std::size_t rows = 0;
    std::vector<std::string> stable;
    while (std::getline(lines, line)) {
      auto j = nlohmann::json::parse(line);
      ++rows;
      CHECK(j["max_iterations"].get<std::size_t>() <= 3 * j["n"].get<std::size_t>() + 2);
      CHECK(j["all_feasible"] == true);
      for (const char* key : {"mean_time_s", "max_time_s", "mean_certify_s"}) j.erase(key);
      stable.push_back(j.dump());
    }
    CHECK(rows == 2);
    const auto b = run("bench --sizes 10,100 --trials 3 --seed 1");
    std::istringstream again(b.out);
    for (const auto& s : stable) {
      REQUIRE(std::getline(again, line));
      auto j = nlohmann::json::parse(line);
      for (const char* key : {"mean_time_s", "max_time_s", "mean_certify_s"}) j.erase(key);
      CHECK(j.dump() == s);
    }
  }

  TEST_CASE("usage errors") {
    CHECK(run("").status == 1);
    CHECK(run("frobnicate").status == 1);
    CHECK(run("solve").status == 1);
    CHECK(run("--help").status == 0);
  }
}
