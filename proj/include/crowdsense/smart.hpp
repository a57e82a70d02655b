#pragma once

#include <optional>
#include <span>
#include <vector>

#include "crowdsense/model.hpp"

// Offline three-phase auction mechanism ("smart" in the CLI): greedy user
// screening, winner selection with replacement-based critical payments, and
// a final bad-user removal pass. Deterministic: every argmax tie breaks
// toward the lowest user id.

namespace crowdsense {

struct ScreeningResult {
  std::vector<UserId> order;  // users in entry order

  bool contains(UserId id) const;
  // 1-based entry round; nullopt for users never screened in.
  std::optional<int> entry_round(UserId id) const;
};

// Critical bid value; nullopt means "no candidate" and compares as +infinity.
// A finite gamma can be negative.
using Gamma = std::optional<Value>;

struct NextBest {
  std::optional<UserId> candidate;
  Gamma gamma;
};

struct Replacement {
  std::vector<UserId> winners;  // T with i swapped for j
  UserId user = 0;              // j
  Value payment = 0;            // p_j
  Gamma gamma;                  // gamma_j computed for the payment rule
};

// How the selection phase settled a screened user.
enum class SelectionRule {
  kPayCritical,  // pay gamma (next best user's displacement value)
  kReplace,      // swap in the next best user, who is paid instead
  kPayCapped,    // pay min(marginal value, entry cap beta)
  kDrop,         // no replacement possible, user removed unpaid
};

struct SelectionStep {
  UserId user = 0;
  Value sigma = 0;
  NextBest next_best;
  Value beta = 0;
  SelectionRule rule = SelectionRule::kDrop;
  Value payment = 0;  // to `user`; zero for kReplace/kDrop
  // Filled for kReplace:
  UserId replacement = 0;
  Gamma replacement_gamma;
  Value replacement_payment = 0;
};

struct SelectionTrace {
  std::vector<SelectionStep> steps;
  // Entry-cap bookkeeping table: index = user id, nullopt = infinite (user
  // never screened, or re-marked when picked as a replacement candidate).
  std::vector<std::optional<Value>> beta_table;
};

struct Selection {
  std::vector<UserId> winners;
  std::vector<Value> payments;  // size n + 1
};

// Phase 1: repeatedly admit the user with the largest marginal value minus
// bid while that margin is strictly positive.
ScreeningResult screen_users(const Instance& instance);

// Best candidate j in U\T to replace i (state T\{i}), and the critical bid
// gamma_i = v_i(T\{i}) - v_j(T\{i}) + b_j. No candidate with a strictly
// positive margin yields {nullopt, infinite}. Requires i in T.
NextBest next_best_user(const Instance& instance, UserId i,
                        std::span<const UserId> T);

// Max bid at which user i would still enter the screening set, found by
// simulating the screening greedy without i. Always finite and >= 0.
Value user_entry_payment(const Instance& instance, UserId i);

// Swap i (in T) for j (not in T) and price j off its own next best user:
// p_j = gamma_j when finite and below j's marginal value, else the marginal.
Replacement replace_user(const Instance& instance, std::span<const UserId> T,
                         UserId i, UserId j);

// Phase 2 over the frozen screening order; replacement users are paid inside
// replace_user and never revisited.
Selection winner_selection(const Instance& instance,
                           const ScreeningResult& screening,
                           SelectionTrace* trace = nullptr);

// Phase 3: sequentially drop users whose marginal value no longer covers
// their payment, ascending user id against the mutating set.
Selection remove_bad_users(const Instance& instance,
                           std::span<const UserId> T,
                           std::vector<Value> payments);

AuctionOutcome run_smart(const Instance& instance);
AuctionOutcome run_smart(const Instance& instance, ScreeningResult* screening,
                         SelectionTrace* trace);

namespace detail {

// Restriction of the mechanism to a subset of users (the streaming variant
// runs the offline auction on the observed prefix). Index = user id.
using Eligibility = std::vector<char>;

Eligibility all_users(const Instance& instance);
Eligibility user_subset(const Instance& instance, std::span<const UserId> ids);

ScreeningResult screen_users(const Instance& instance, const Eligibility& in);
NextBest next_best_user(const Instance& instance, const Eligibility& in,
                        UserId i, std::span<const UserId> T);
Value user_entry_payment(const Instance& instance, const Eligibility& in,
                         UserId i);
Replacement replace_user(const Instance& instance, const Eligibility& in,
                         std::span<const UserId> T, UserId i, UserId j);
Selection winner_selection(const Instance& instance, const Eligibility& in,
                           const ScreeningResult& screening,
                           SelectionTrace* trace);
AuctionOutcome run_smart(const Instance& instance, const Eligibility& in);

}  // namespace detail

}  // namespace crowdsense
