#include "doctest.h"
#include "support.hpp"

using namespace dhtsp;
using namespace dhtsp::testing;

TEST_SUITE("exact_oracle") {
  TEST_CASE("single target goes to the cheap vehicle") {
    const auto s = solve_exact<double>(single_target(3, 1));
    CHECK(s.cost == 2.0);
    CHECK(s.assigned_to_v2 == std::vector<int>{1});
    CHECK(s.tour1 == std::vector<int>{0});
    CHECK(s.tour2 == std::vector<int>{0, 1, 0});
    CHECK(solve_exact<double>(single_target(1, 5)).cost == 2.0);
  }

  TEST_CASE("empty instance") {
    const auto s = solve_exact<Rational>(generate(0, 1, 1));
    CHECK(s.cost == 0);
    CHECK(s.assigned_to_v2.empty());
  }

  TEST_CASE("identical vehicles at a shared depot keep the targets together") {
    const Matrix c{{0, 5, 5}, {5, 0, 1}, {5, 1, 0}};
    const auto s = solve_exact<double>(make_instance(c, c));
    CHECK(s.cost == 11.0);
    CHECK((s.assigned_to_v2.empty() || s.assigned_to_v2.size() == 2));
  }

  TEST_CASE("size guards") {
    CHECK_THROWS_AS(solve_exact<double>(generate(13, 1.5, 1)), SizeGuardError);
    const auto inst = generate(11, 1.5, 1);
    const auto run = run_growth<double>(inst);
    CHECK_THROWS_AS(check_dual_exhaustive(run.state.history(), inst), SizeGuardError);
  }

  TEST_CASE("agrees with permutation enumeration") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
      const std::size_t n = seed % 7;
      const auto inst = seed % 2 ? graph_metric(n, seed) : generate(n, 1.0 + 0.5 * double(seed % 3), seed);
      const auto s = solve_exact<double>(inst);
      INFO("seed=" << seed);
      CHECK(s.cost == doctest::Approx(brute_force_optimum(inst)).epsilon(1e-12));
      // The reported tours realise the reported cost.
      const std::vector<int> inner1(s.tour1.begin() + (s.tour1.size() > 1), s.tour1.end() - (s.tour1.size() > 1));
      const std::vector<int> inner2(s.tour2.begin() + (s.tour2.size() > 1), s.tour2.end() - (s.tour2.size() > 1));
      std::vector<int> v1;
      std::vector<int> v2;
      for (int v : inner1) if (v != 0) v1.push_back(v);
      for (int v : inner2) if (v != 0) v2.push_back(v);
      CHECK(tour_cost(inst.cost1, v1) + tour_cost(inst.cost2, v2) == doctest::Approx(s.cost));
      CHECK(v2.size() == s.assigned_to_v2.size());
    }
  }

  TEST_CASE("exact arithmetic agrees on integer costs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto inst = integer_euclidean(1 + seed % 8, 2, seed);
      CHECK(solve_exact<Rational>(inst).cost.convert_to<double>() == solve_exact<double>(inst).cost);
    }
  }

  TEST_CASE("adding a target never lowers the optimum") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      // Prefixes of one point set are nested metric instances.
      const auto full = generate(8, 1.4, seed);
      double previous = 0;
      for (std::size_t n = 0; n <= 8; ++n) {
        Instance sub;
        sub.n_targets = n;
        sub.cost1 = CostMatrix(n + 1);
        sub.cost2 = CostMatrix(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
          for (std::size_t j = 0; j <= n; ++j) {
            sub.cost1(i, j) = full.cost1(i, j);
            sub.cost2(i, j) = full.cost2(i, j);
          }
        }
        const double opt = solve_exact<double>(sub).cost;
        CHECK(opt >= previous - 1e-9);
        previous = opt;
      }
    }
  }

  TEST_CASE("exhaustive dual check on a hand-traced history") {
    const auto inst = single_target(3, 1);
    const auto run = run_growth<Rational>(inst);
    CHECK(check_dual_exhaustive(run.state.history(), inst).empty());
    const auto empty = generate(0, 1, 1);
    CHECK(check_dual_exhaustive(run_growth<Rational>(empty).state.history(), empty).empty());
  }
}
