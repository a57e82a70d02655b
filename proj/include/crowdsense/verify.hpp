#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "crowdsense/model.hpp"
#include "crowdsense/online.hpp"

// Executable probes for the auction properties: individual rationality,
// profitability, utility dominance over the greedy baseline, monotone
// selection / critical payments, and the exhaustive first-best bound.
// Violations are recorded, never patched; each record carries enough to
// replay the failing case from its seed.

namespace crowdsense {

// max over all subsets W of v(W) - sum of bids in W, by enumeration.
// Refuses instances with more than 20 users.
Value first_best_bound(const Instance& instance);

struct MechanismSpec {
  enum class Kind { kSmart, kMSensing, kOnline };
  Kind kind = Kind::kSmart;
  // kOnline only:
  std::vector<UserId> arrival_order;
  OnlineConfig online;

  static MechanismSpec smart() { return {}; }
  static MechanismSpec msensing() { return {Kind::kMSensing, {}, {}}; }
  static MechanismSpec online_run(std::vector<UserId> order,
                                  OnlineConfig config) {
    return {Kind::kOnline, std::move(order), config};
  }
  const char* label() const;
};

AuctionOutcome run_mechanism(const Instance& instance,
                             const MechanismSpec& spec);

struct Violation {
  std::string property;
  std::uint64_t seed = 0;
  std::string detail;
};

struct PropertyReport {
  int instances = 0;
  std::vector<Violation> violations;

  int count(std::string_view property) const;
  bool clean() const { return violations.empty(); }
  void add(std::string property, std::uint64_t seed, std::string detail);
};

// One violation per line: {"property":...,"seed":...,"detail":...}
void write_report_jsonl(const PropertyReport& report, std::ostream& out);

struct TruthfulnessProbe {
  UserId target = 0;
  Value true_cost = 0;        // synthesized cost, <= reference bid
  std::vector<Value> bids;    // probe bids; entries equal to the reference
                              // payment are skipped (boundary excluded)
};

// p_i >= b_i for every winner; utility >= 0.
void check_rationality_profitability(const Instance& instance,
                                     const MechanismSpec& spec,
                                     std::uint64_t seed,
                                     PropertyReport& report);

// smart utility >= msensing utility.
void check_dominance(const Instance& instance, std::uint64_t seed,
                     PropertyReport& report);

// (a) lowering the target's bid keeps it winning, (b) raising it strictly
// above the reference payment makes it lose, (c) bidding the true cost
// dominates every probe bid in personal utility.
void check_truthfulness(const Instance& instance, const MechanismSpec& spec,
                        const TruthfulnessProbe& probe, std::uint64_t seed,
                        PropertyReport& report);

// smart utility <= exhaustive first-best.
void check_first_best(const Instance& instance, std::uint64_t seed,
                      PropertyReport& report);

// Structural invariants of the streaming run: T subset of R, |R| <= m,
// post-cleanup reference slack, monotone utility, irrevocable prefix.
void check_online_structure(const Instance& instance,
                            std::span<const UserId> arrival_order,
                            const OnlineConfig& config, std::uint64_t seed,
                            PropertyReport& report);

struct BatteryOptions {
  std::uint64_t seed = 1;
  int count = 100;
  int max_users = 12;
  int max_tasks = 10;
};

// Seeded random-instance battery running every check above (first-best only
// for n <= 12). Deterministic in its options.
PropertyReport run_battery(const BatteryOptions& options);

}  // namespace crowdsense
