#pragma once

#include <optional>
#include <span>
#include <vector>

#include "crowdsense/model.hpp"

// Streaming variant ("online" in the CLI): an observation phase runs the
// offline mechanism on the first k = floor(n * observe_fraction) arrivals to
// seed a reference set R, then every further arrival is accepted or rejected
// irrevocably against R. Observed users can never win; they only shape R.

namespace crowdsense {

struct OnlineConfig {
  double observe_fraction = 1.0 / 3.0;  // in (0,1)

  int observe_count(int n) const;  // k
};

struct OnlineState {
  std::vector<UserId> reference;  // R, ascending
  std::vector<UserId> winners;    // T, ascending; always a subset of R
  std::vector<Value> payments;    // size n + 1
  int cursor = 0;                 // next arrival index (0-based)
};

enum class ArrivalDecision {
  kObserved,  // consumed by the observation phase
  kInvalid,   // total value <= bid; rejected before counting
  kAdded,
  kReplaced,  // accepted by displacing a reference user
  kRejected,
};

struct ArrivalEvent {
  int position = 0;  // 0-based index in the arrival order
  UserId user = 0;
  ArrivalDecision decision = ArrivalDecision::kRejected;
  Value payment = 0;
  std::optional<UserId> displaced;
  // Snapshots after the arrival (post-cleanup), for structural checks.
  std::vector<UserId> reference_after;
  std::vector<UserId> winners_after;
  Value utility_after = 0;
};

// Phase 1: run the offline auction on the first k arrivals; its winners
// become the reference set. k = 0 yields an empty reference set.
OnlineState observe(const Instance& instance,
                    std::span<const UserId> arrival_order,
                    const OnlineConfig& config);

// Accept user i outright: pay its marginal value against R (computed before
// insertion), then add it to both R and T. Requires |R| < m and a strictly
// positive margin.
void add_user(OnlineState& state, const Instance& instance, UserId i);

// Swap i for the reference user whose displacement is most profitable; no
// strictly profitable swap leaves the state unchanged. Returns acceptance.
bool try_to_replace(OnlineState& state, const Instance& instance, UserId i);

// One cleanup pass: drop reference non-winners whose marginal value against
// the current R fails to cover their bid, ascending id, sequentially.
void remove_bad_reference_users(OnlineState& state, const Instance& instance);

// Routes one arrival through the add / replace / reject branches followed by
// the cleanup pass. Arrivals with total value <= bid are rejected before
// they count.
ArrivalEvent process_arrival(OnlineState& state, const Instance& instance,
                             UserId i);

// Full run over the arrival order; stops once |T| = m or arrivals end.
// When `events` is given, one entry per arrival (including observed ones) is
// appended with post-arrival snapshots.
AuctionOutcome run_online(const Instance& instance,
                          std::span<const UserId> arrival_order,
                          const OnlineConfig& config,
                          std::vector<ArrivalEvent>* events = nullptr);

}  // namespace crowdsense
