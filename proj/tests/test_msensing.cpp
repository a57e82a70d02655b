#include "crowdsense/fixtures.hpp"
#include "crowdsense/generator.hpp"
#include "crowdsense/msensing.hpp"
#include "crowdsense/smart.hpp"
#include "doctest.h"

using namespace crowdsense;

TEST_CASE("baseline pays the screening set its entry caps") {
  Instance fix = fixtures::example_instance();
  AuctionOutcome outcome = run_msensing(fix);
  CHECK(outcome.winners == std::vector<UserId>{1, 2, 3});
  CHECK(outcome.payments[1] == 15);
  CHECK(outcome.payments[2] == 8);
  CHECK(outcome.payments[3] == 7);
  CHECK(outcome.utility == 20);
}

TEST_CASE("baseline edge cases") {
  Instance none(TaskCatalog({{0, 3}}), {});
  AuctionOutcome empty = run_msensing(none);
  CHECK(empty.winners.empty());
  CHECK(empty.utility == 0);

  Instance one(TaskCatalog({{0, 10}}), {{1, {0}, 4}});
  AuctionOutcome single = run_msensing(one);
  CHECK(single.winners == std::vector<UserId>{1});
  CHECK(single.payments[1] == 10);
  CHECK(single.utility == 0);
}

TEST_CASE("baseline winners always equal the screening set") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed);
    GeneratorConfig config;
    config.users = static_cast<int>(rng.uniform_int(1, 10));
    config.tasks = static_cast<int>(rng.uniform_int(1, 8));
    config.value_lo = 0;
    config.value_hi = 12;
    config.bid_lo = 1;
    config.bid_hi = 10;
    config.task_fraction = 0.15 + 0.8 * rng.uniform_real01();
    config.seed = rng.next();
    Instance instance = generate_instance(config);

    std::vector<UserId> screened = screen_users(instance).order;
    std::sort(screened.begin(), screened.end());
    AuctionOutcome outcome = run_msensing(instance);
    CHECK(outcome.winners == screened);
    for (UserId id : outcome.winners) {
      CHECK(outcome.payments[static_cast<std::size_t>(id)] >=
            instance.bid(id));
    }
  }
}
