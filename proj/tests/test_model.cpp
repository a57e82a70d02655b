#include <stdexcept>
#include <set>
#include <vector>

#include "crowdsense/fixtures.hpp"
#include "crowdsense/generator.hpp"
#include "crowdsense/model.hpp"
#include "doctest.h"

using namespace crowdsense;

namespace {

// Independent oracle: plain set union plus direct value lookups, no bitmask
// kernels involved.
Value brute_coverage(const Instance& instance, const std::vector<UserId>& S) {
  std::set<TaskId> covered;
  for (UserId id : S) {
    for (TaskId t : instance.user(id).tasks) covered.insert(t);
  }
  Value total = 0;
  for (TaskId t : covered) total += instance.catalog().value_of(t);
  return total;
}

}  // namespace

TEST_CASE("example instance reproduces the worked quantities") {
  Instance fix = fixtures::example_instance();

  SUBCASE("coverage values") {
    CHECK(fix.coverage_value({1}) == 33);
    CHECK(fix.coverage_value({2}) == 24);
    CHECK(fix.coverage_value({3}) == 23);
    CHECK(fix.coverage_value({4}) == 9);
    CHECK(fix.coverage_value({5}) == 9);
    CHECK(fix.coverage_value({}) == 0);
    CHECK(fix.coverage_value({2, 3, 5}) == 50);
  }

  SUBCASE("marginal values") {
    CHECK(fix.marginal_value(2, {1}) == 8);
    CHECK(fix.marginal_value(3, {1}) == 9);
    CHECK(fix.marginal_value(4, {1}) == 9);
    CHECK(fix.marginal_value(5, {1}) == 0);
    CHECK(fix.marginal_value(2, {1, 3}) == 8);
    CHECK(fix.marginal_value(4, {1, 3}) == 0);
    CHECK(fix.marginal_value(5, {1, 3}) == 0);
    CHECK(fix.marginal_value(4, {1, 3, 2}) == 0);
    CHECK(fix.marginal_value(5, {1, 3, 2}) == 0);
    CHECK(fix.marginal_value(1, {3, 2}) == 9);
    CHECK(fix.marginal_value(5, {3, 2}) == 9);
    CHECK(fix.marginal_value(4, {3, 2}) == 0);
    CHECK(fix.marginal_value(3, {2}) == 17);
    CHECK(fix.marginal_value(1, {2}) == 17);
    CHECK(fix.marginal_value(5, {2, 3}) == 9);
    CHECK(fix.marginal_value(1, {2, 3}) == 9);
    CHECK(fix.marginal_value(4, {2, 3, 5}) < 7);
    CHECK(fix.marginal_value(3, {5, 2}) == 17);
    CHECK(fix.marginal_value(4, {5, 2}) == 9);
    CHECK(fix.marginal_value(2, {5, 3}) == 18);
    CHECK(fix.marginal_value(1, {5, 3}) == 10);
  }

  SUBCASE("member of the set contributes nothing") {
    CHECK(fix.marginal_value(1, {1, 2}) == 0);
  }

  SUBCASE("platform utility") {
    std::vector<Value> p(6, 0);
    p[2] = 8;
    p[3] = 7;
    p[5] = 8;
    std::vector<UserId> winners{2, 3, 5};
    CHECK(fix.platform_utility(winners, p) == 27);
    std::vector<Value> q(6, 0);
    q[1] = 15;
    q[2] = 8;
    q[3] = 7;
    std::vector<UserId> screened{1, 3, 2};
    CHECK(fix.platform_utility(screened, q) == 20);
    CHECK(fix.platform_utility(std::vector<UserId>{}, q) == 0);
  }

  SUBCASE("marginal utility") {
    CHECK(fix.marginal_utility(5, std::vector<UserId>{2, 3}, 8) == 1);
    CHECK(fix.marginal_utility(2, std::vector<UserId>{3, 5}, 8) == 10);
    Value mv = fix.marginal_value(4, {1});
    CHECK(fix.marginal_utility(4, std::vector<UserId>{1}, mv) == 0);
  }

  SUBCASE("sigma") {
    CHECK(fix.sigma(3, {5, 3, 2}) == 11);
    CHECK(fix.sigma(2, {5, 3, 2}) == 12);
    CHECK(fix.sigma(1, {1, 3, 2}) == 1);
  }
}

TEST_CASE("value algebra invariants on random small instances") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GeneratorConfig config;
    Rng rng(seed);
    config.users = static_cast<int>(rng.uniform_int(1, 8));
    config.tasks = static_cast<int>(rng.uniform_int(1, 6));
    config.value_lo = 0;
    config.value_hi = 9;
    config.bid_lo = 1;
    config.bid_hi = 9;
    config.task_fraction = 0.2 + 0.7 * rng.uniform_real01();
    config.seed = rng.next();
    Instance instance = generate_instance(config);

    std::vector<UserId> all(static_cast<std::size_t>(instance.user_count()));
    for (int u = 0; u < instance.user_count(); ++u) all[static_cast<std::size_t>(u)] = u + 1;

    // Exhaustive agreement with the set-based oracle, plus monotonicity,
    // submodularity and the coverage identity.
    int n = instance.user_count();
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<UserId> S;
      for (int u = 0; u < n; ++u) {
        if (bits & (1u << u)) S.push_back(u + 1);
      }
      Value v = instance.coverage_value(S);
      CHECK(v == brute_coverage(instance, S));
      for (UserId i = 1; i <= n; ++i) {
        Value marginal = instance.marginal_value(i, S);
        std::vector<UserId> with = S;
        with.push_back(i);
        CHECK(instance.coverage_value(with) == v + marginal);
        // Supersets can only shrink the marginal.
        for (UserId extra = 1; extra <= n; ++extra) {
          if (extra == i) continue;
          std::vector<UserId> larger = S;
          larger.push_back(extra);
          CHECK(instance.marginal_value(i, larger) <= marginal);
        }
      }
    }
  }
}

TEST_CASE("id validation") {
  Instance fix = fixtures::example_instance();
  CHECK_THROWS_AS(fix.coverage_value({9}), std::out_of_range);
  CHECK_THROWS_AS(fix.marginal_value(0, {1}), std::out_of_range);
  CHECK_THROWS_AS(fix.sigma(6, {1}), std::out_of_range);
}

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(TaskCatalog({{0, 5}, {2, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(TaskCatalog({{0, -1}}), std::invalid_argument);
  TaskCatalog ok({{0, 5}, {1, 3}});
  CHECK_THROWS_AS(Instance(ok, {{2, {0}, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(ok, {{1, {}, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(ok, {{1, {0}, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(ok, {{1, {7}, 1}}), std::invalid_argument);
}

TEST_CASE("with_bid replaces exactly one bid") {
  Instance fix = fixtures::example_instance();
  Instance probed = fix.with_bid(3, 11);
  CHECK(probed.bid(3) == 11);
  CHECK(probed.bid(2) == fix.bid(2));
  CHECK(probed.coverage_value({2, 3, 5}) == 50);
}
