#include <stdexcept>
#include <algorithm>

#include "crowdsense/fixtures.hpp"
#include "crowdsense/online.hpp"
#include "crowdsense/smart.hpp"
#include "doctest.h"

using namespace crowdsense;

namespace {

OnlineState blank_state(const Instance& instance) {
  OnlineState state;
  state.payments.assign(static_cast<std::size_t>(instance.user_count()) + 1,
                        0);
  return state;
}

}  // namespace

TEST_CASE("observation phase") {
  Instance fix = fixtures::example_instance();
  std::vector<UserId> order{1, 2, 3, 4, 5};

  SUBCASE("k = 2 seeds the reference from the offline run on users 1 and 2") {
    // Hand trace of the offline mechanism on {1, 2}: both screen in, user 1
    // is paid its full marginal (17) and dropped in phase 3, user 2 survives.
    OnlineState state = observe(fix, order, OnlineConfig{0.4});
    CHECK(state.cursor == 2);
    CHECK(state.reference == std::vector<UserId>{2});
    CHECK(state.winners.empty());
  }
  SUBCASE("k = 0 leaves the reference empty") {
    OnlineState state = observe(fix, order, OnlineConfig{0.15});
    CHECK(state.cursor == 0);
    CHECK(state.reference.empty());
  }
  SUBCASE("observed users all priced out leave the reference empty") {
    // Users 1 and 2 cover single tasks below their bids.
    Instance weak(TaskCatalog({{0, 2}, {1, 3}, {2, 9}}),
                  {{1, {0}, 5}, {2, {1}, 6}, {3, {2}, 1}});
    OnlineState state =
        observe(weak, std::vector<UserId>{1, 2, 3}, OnlineConfig{0.7});
    CHECK(state.cursor == 2);
    CHECK(state.reference.empty());
  }
  SUBCASE("order must be a permutation") {
    CHECK_THROWS_AS(observe(fix, std::vector<UserId>{1, 2, 2, 4, 5},
                            OnlineConfig{0.4}),
                    std::invalid_argument);
    CHECK_THROWS_AS(observe(fix, std::vector<UserId>{1, 2}, OnlineConfig{0.4}),
                    std::invalid_argument);
  }
  SUBCASE("fraction must sit inside (0,1)") {
    CHECK_THROWS_AS(observe(fix, order, OnlineConfig{0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(observe(fix, order, OnlineConfig{1.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("add user") {
  Instance pair(TaskCatalog({{0, 3}, {1, 7}}), {{1, {0}, 1}, {2, {1}, 5}});
  OnlineState state = blank_state(pair);

  SUBCASE("first arrival pays its full value") {
    Instance solo(TaskCatalog({{0, 10}}), {{1, {0}, 3}});
    OnlineState s = blank_state(solo);
    add_user(s, solo, 1);
    CHECK(s.payments[1] == 10);
    CHECK(s.reference == std::vector<UserId>{1});
    CHECK(s.winners == std::vector<UserId>{1});
  }
  SUBCASE("disjoint reference pays the marginal") {
    add_user(state, pair, 1);
    add_user(state, pair, 2);  // v_2(R) = 7 > 5
    CHECK(state.payments[2] == 7);
  }
  SUBCASE("covered arrivals are not addable") {
    Instance overlap(TaskCatalog({{0, 9}}), {{1, {0}, 2}, {2, {0}, 3}});
    OnlineState s = blank_state(overlap);
    add_user(s, overlap, 1);
    CHECK_THROWS_AS(add_user(s, overlap, 2), std::invalid_argument);
  }
}

TEST_CASE("try to replace") {
  SUBCASE("no replaceable reference users leaves the state unchanged") {
    Instance pair(TaskCatalog({{0, 3}, {1, 7}}), {{1, {0}, 1}, {2, {1}, 5}});
    OnlineState state = blank_state(pair);
    add_user(state, pair, 1);  // user 1 is in T, hence not replaceable
    CHECK_FALSE(try_to_replace(state, pair, 2));
    CHECK(state.reference == std::vector<UserId>{1});
    CHECK(state.payments[2] == 0);
  }
  SUBCASE("profitable swap pays bid plus gain") {
    // Reference user 1 covers t0 (10) with bid 8; arrival 2 covers both
    // tasks with bid 10. Swap gain = 16 - 10 + 8 - 10 = 4 > 0, payment 14.
    Instance swap(TaskCatalog({{0, 10}, {1, 6}}),
                  {{1, {0}, 8}, {2, {0, 1}, 10}});
    OnlineState state = blank_state(swap);
    state.reference = {1};
    CHECK(try_to_replace(state, swap, 2));
    CHECK(state.reference == std::vector<UserId>{2});
    CHECK(state.winners == std::vector<UserId>{2});
    CHECK(state.payments[2] == 14);
  }
  SUBCASE("unprofitable swap is rejected") {
    Instance swap(TaskCatalog({{0, 10}, {1, 6}}),
                  {{1, {0}, 8}, {2, {0, 1}, 15}});
    OnlineState state = blank_state(swap);
    state.reference = {1};
    CHECK_FALSE(try_to_replace(state, swap, 2));
    CHECK(state.reference == std::vector<UserId>{1});
  }
}

TEST_CASE("reference cleanup") {
  SUBCASE("healthy reference users stay") {
    Instance pair(TaskCatalog({{0, 3}, {1, 7}}), {{1, {0}, 1}, {2, {1}, 5}});
    OnlineState state = blank_state(pair);
    state.reference = {1, 2};
    remove_bad_reference_users(state, pair);
    CHECK(state.reference == std::vector<UserId>{1, 2});
  }
  SUBCASE("fully covered reference user goes") {
    Instance overlap(TaskCatalog({{0, 9}, {1, 2}}),
                     {{1, {0}, 1}, {2, {0, 1}, 1}});
    OnlineState state = blank_state(overlap);
    state.reference = {1, 2};
    remove_bad_reference_users(state, overlap);
    CHECK(state.reference == std::vector<UserId>{2});
  }
  SUBCASE("removal cascade retains the second user") {
    // Both cover the same task; dropping user 1 restores user 2's marginal.
    Instance twin(TaskCatalog({{0, 5}}), {{1, {0}, 6}, {2, {0}, 4}});
    OnlineState state = blank_state(twin);
    state.reference = {1, 2};
    remove_bad_reference_users(state, twin);
    CHECK(state.reference == std::vector<UserId>{2});
  }
  SUBCASE("winners are never removed") {
    Instance overlap(TaskCatalog({{0, 9}}), {{1, {0}, 1}, {2, {0}, 1}});
    OnlineState state = blank_state(overlap);
    state.reference = {1, 2};
    state.winners = {1};
    remove_bad_reference_users(state, overlap);
    CHECK(state.reference == std::vector<UserId>{1});
  }
}

TEST_CASE("full online run on the example instance") {
  Instance fix = fixtures::example_instance();
  std::vector<UserId> order{4, 5, 1, 3, 2};
  std::vector<ArrivalEvent> events;
  AuctionOutcome outcome =
      run_online(fix, order, OnlineConfig{0.2}, &events);

  // Hand trace: k = 1; the offline run on {4} pays 9 and drops user 4, so
  // R starts empty. Arrivals 5, 1, 3, 2 are all added at their marginals
  // (9, 24, 9, 8) and the utility telescopes to zero.
  CHECK(outcome.winners == std::vector<UserId>{1, 2, 3, 5});
  CHECK(outcome.payments[5] == 9);
  CHECK(outcome.payments[1] == 24);
  CHECK(outcome.payments[3] == 9);
  CHECK(outcome.payments[2] == 8);
  CHECK(outcome.utility == 0);

  REQUIRE(events.size() == 5);
  CHECK(events[0].decision == ArrivalDecision::kObserved);
  for (std::size_t k = 1; k < events.size(); ++k) {
    CHECK(events[k].decision == ArrivalDecision::kAdded);
  }
}

TEST_CASE("online run edge cases") {
  SUBCASE("single user with k = 0 wins iff value exceeds bid") {
    Instance solo(TaskCatalog({{0, 10}}), {{1, {0}, 3}});
    AuctionOutcome outcome =
        run_online(solo, std::vector<UserId>{1}, OnlineConfig{0.5});
    CHECK(outcome.winners == std::vector<UserId>{1});
    CHECK(outcome.payments[1] == 10);

    Instance dud(TaskCatalog({{0, 2}}), {{1, {0}, 3}});
    AuctionOutcome nothing =
        run_online(dud, std::vector<UserId>{1}, OnlineConfig{0.5});
    CHECK(nothing.winners.empty());
  }
  SUBCASE("high-value users burned in observation can leave nothing") {
    // Observing users 1 and 2 keeps user 1 in the reference set (paid 11,
    // marginal 15). Arrival 3 is fully covered and cannot replace 1 either,
    // so no winner remains.
    Instance nested(TaskCatalog({{0, 10}, {1, 5}}),
                    {{1, {0, 1}, 2}, {2, {1}, 1}, {3, {0, 1}, 6}});
    AuctionOutcome outcome =
        run_online(nested, std::vector<UserId>{1, 2, 3}, OnlineConfig{0.7});
    CHECK(outcome.winners.empty());
    CHECK(outcome.utility == 0);
  }
  SUBCASE("below-value bidders are rejected before they count") {
    Instance mix(TaskCatalog({{0, 4}, {1, 9}}),
                 {{1, {0}, 7}, {2, {1}, 2}});
    std::vector<ArrivalEvent> events;
    AuctionOutcome outcome = run_online(mix, std::vector<UserId>{1, 2},
                                        OnlineConfig{0.4}, &events);
    REQUIRE(events.size() == 2);
    CHECK(events[0].decision == ArrivalDecision::kInvalid);
    CHECK(events[1].decision == ArrivalDecision::kAdded);
    CHECK(outcome.winners == std::vector<UserId>{2});
  }
}

TEST_CASE("stepping a prefix matches the batch run") {
  Instance fix = fixtures::example_instance();
  std::vector<UserId> order{3, 1, 4, 2, 5};
  std::vector<ArrivalEvent> events;
  run_online(fix, order, OnlineConfig{0.25}, &events);

  OnlineState state = observe(fix, order, OnlineConfig{0.25});
  for (int step = 0; step < 2; ++step) {
    ArrivalEvent ev = process_arrival(
        state, fix, order[static_cast<std::size_t>(state.cursor)]);
    const ArrivalEvent& batch = events[static_cast<std::size_t>(ev.position)];
    CHECK(batch.decision == ev.decision);
    CHECK(batch.payment == ev.payment);
    CHECK(batch.reference_after == ev.reference_after);
  }
}
