#include "crowdsense/online.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "crowdsense/smart.hpp"

namespace crowdsense {

namespace {

void insert_sorted(std::vector<UserId>& ids, UserId id) {
  ids.insert(std::upper_bound(ids.begin(), ids.end(), id), id);
}

void erase_sorted(std::vector<UserId>& ids, UserId id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  assert(it != ids.end() && *it == id);
  ids.erase(it);
}

bool contains_sorted(const std::vector<UserId>& ids, UserId id) {
  return std::binary_search(ids.begin(), ids.end(), id);
}

void validate_order(const Instance& instance,
                    std::span<const UserId> arrival_order) {
  if (static_cast<int>(arrival_order.size()) != instance.user_count()) {
    throw std::invalid_argument(
        "arrival_order: must be a permutation of all user ids");
  }
  std::vector<char> seen(arrival_order.size() + 1, 0);
  for (UserId id : arrival_order) {
    if (id < 1 || id > instance.user_count() ||
        seen[static_cast<std::size_t>(id)]) {
      throw std::invalid_argument(
          "arrival_order: must be a permutation of all user ids");
    }
    seen[static_cast<std::size_t>(id)] = 1;
  }
}

Value current_utility(const OnlineState& state, const Instance& instance) {
  return instance.platform_utility(state.winners, state.payments);
}

}  // namespace

int OnlineConfig::observe_count(int n) const {
  if (!(observe_fraction > 0.0) || !(observe_fraction < 1.0)) {
    throw std::invalid_argument("observe_fraction: must be in (0, 1)");
  }
  return static_cast<int>(std::floor(observe_fraction * n));
}

OnlineState observe(const Instance& instance,
                    std::span<const UserId> arrival_order,
                    const OnlineConfig& config) {
  validate_order(instance, arrival_order);
  int k = config.observe_count(instance.user_count());
  OnlineState state;
  state.payments.assign(static_cast<std::size_t>(instance.user_count()) + 1,
                        0);
  state.cursor = k;
  AuctionOutcome seed = detail::run_smart(
      instance,
      detail::user_subset(instance, arrival_order.subspan(
                                        0, static_cast<std::size_t>(k))));
  state.reference = seed.winners;  // observed users never keep payments
  return state;
}

void add_user(OnlineState& state, const Instance& instance, UserId i) {
  if (static_cast<int>(state.reference.size()) >= instance.task_count()) {
    throw std::invalid_argument("add_user: reference set is full");
  }
  Value marginal = instance.marginal_value(i, state.reference);
  if (marginal - instance.bid(i) <= 0) {
    throw std::invalid_argument("add_user: marginal value must exceed bid");
  }
  state.payments[static_cast<std::size_t>(i)] = marginal;
  insert_sorted(state.reference, i);
  insert_sorted(state.winners, i);
}

bool try_to_replace(OnlineState& state, const Instance& instance, UserId i) {
  // Candidates are reference users that never won (winners are permanent).
  UserId best = 0;
  Value best_gain = 0;
  Value best_payment = 0;
  Value base = instance.coverage_value(state.reference);
  TaskMask others(instance.words(), 0);
  for (UserId j : state.reference) {
    if (contains_sorted(state.winners, j)) continue;
    std::fill(others.begin(), others.end(), 0);
    for (UserId r : state.reference) {
      if (r == j) continue;
      const TaskMask& m = instance.user_mask(r);
      for (std::size_t w = 0; w < others.size(); ++w) others[w] |= m[w];
    }
    const TaskMask& mine = instance.user_mask(i);
    for (std::size_t w = 0; w < others.size(); ++w) others[w] |= mine[w];
    Value swapped = instance.mask_value(others);
    Value payment = swapped - base + instance.bid(j);
    Value gain = payment - instance.bid(i);
    if (best == 0 || gain > best_gain) {
      best = j;
      best_gain = gain;
      best_payment = payment;
    }
  }
  if (best == 0 || best_gain <= 0) return false;
  state.payments[static_cast<std::size_t>(i)] = best_payment;
  erase_sorted(state.reference, best);
  insert_sorted(state.reference, i);
  insert_sorted(state.winners, i);
  return true;
}

void remove_bad_reference_users(OnlineState& state, const Instance& instance) {
  // Snapshot of R\T in ascending order, each tested against the current R.
  std::vector<UserId> candidates;
  for (UserId j : state.reference) {
    if (!contains_sorted(state.winners, j)) candidates.push_back(j);
  }
  for (UserId j : candidates) {
    TaskMask covered(instance.words(), 0);
    for (UserId r : state.reference) {
      if (r == j) continue;
      const TaskMask& m = instance.user_mask(r);
      for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= m[w];
    }
    if (instance.marginal_value_vs_mask(j, covered) < instance.bid(j)) {
      erase_sorted(state.reference, j);
    }
  }
}

ArrivalEvent process_arrival(OnlineState& state, const Instance& instance,
                             UserId i) {
  ArrivalEvent event;
  event.position = state.cursor;
  event.user = i;
  ++state.cursor;

  if (instance.user_value(i) <= instance.bid(i)) {
    // Below-value bidders are rejected before they count as users.
    event.decision = ArrivalDecision::kInvalid;
  } else {
    if (static_cast<int>(state.reference.size()) < instance.task_count() &&
        instance.marginal_value(i, state.reference) - instance.bid(i) > 0) {
      add_user(state, instance, i);
      event.decision = ArrivalDecision::kAdded;
      event.payment = state.payments[static_cast<std::size_t>(i)];
    } else {
      std::vector<UserId> before = state.reference;
      if (try_to_replace(state, instance, i)) {
        event.decision = ArrivalDecision::kReplaced;
        event.payment = state.payments[static_cast<std::size_t>(i)];
        for (UserId j : before) {
          if (!contains_sorted(state.reference, j)) {
            event.displaced = j;
            break;
          }
        }
      } else {
        event.decision = ArrivalDecision::kRejected;
      }
    }
    remove_bad_reference_users(state, instance);
  }

  event.reference_after = state.reference;
  event.winners_after = state.winners;
  event.utility_after = current_utility(state, instance);
  return event;
}

AuctionOutcome run_online(const Instance& instance,
                          std::span<const UserId> arrival_order,
                          const OnlineConfig& config,
                          std::vector<ArrivalEvent>* events) {
  OnlineState state = observe(instance, arrival_order, config);
  if (events) {
    for (int p = 0; p < state.cursor; ++p) {
      ArrivalEvent ev;
      ev.position = p;
      ev.user = arrival_order[static_cast<std::size_t>(p)];
      ev.decision = ArrivalDecision::kObserved;
      ev.reference_after = state.reference;
      ev.winners_after = state.winners;
      events->push_back(std::move(ev));
    }
  }
  int n = instance.user_count();
  while (state.cursor < n &&
         static_cast<int>(state.winners.size()) < instance.task_count()) {
    ArrivalEvent ev = process_arrival(
        state, instance, arrival_order[static_cast<std::size_t>(state.cursor)]);
    if (events) events->push_back(std::move(ev));
  }
  return make_outcome(instance, state.winners, state.payments);
}

}  // namespace crowdsense
