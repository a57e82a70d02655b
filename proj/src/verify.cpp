#include "crowdsense/verify.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "crowdsense/generator.hpp"
#include "crowdsense/msensing.hpp"
#include "crowdsense/smart.hpp"

namespace crowdsense {

Value first_best_bound(const Instance& instance) {
  int n = instance.user_count();
  if (n > 20) {
    throw std::invalid_argument(
        "first_best_bound: exhaustive enumeration refused for n > 20");
  }
  Value best = 0;  // empty set
  TaskMask covered(instance.words(), 0);
  for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
    std::fill(covered.begin(), covered.end(), 0);
    Value bids = 0;
    for (int u = 0; u < n; ++u) {
      if (!(subset & (1u << u))) continue;
      const TaskMask& m = instance.user_mask(u + 1);
      for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= m[w];
      bids += instance.bid(u + 1);
    }
    best = std::max(best, instance.mask_value(covered) - bids);
  }
  return best;
}

const char* MechanismSpec::label() const {
  switch (kind) {
    case Kind::kSmart:
      return "smart";
    case Kind::kMSensing:
      return "msensing";
    case Kind::kOnline:
      return "online";
  }
  return "?";
}

AuctionOutcome run_mechanism(const Instance& instance,
                             const MechanismSpec& spec) {
  switch (spec.kind) {
    case MechanismSpec::Kind::kSmart:
      return run_smart(instance);
    case MechanismSpec::Kind::kMSensing:
      return run_msensing(instance);
    case MechanismSpec::Kind::kOnline:
      return run_online(instance, spec.arrival_order, spec.online);
  }
  throw std::logic_error("unreachable");
}

int PropertyReport::count(std::string_view property) const {
  int c = 0;
  for (const Violation& v : violations) {
    if (v.property == property) ++c;
  }
  return c;
}

void PropertyReport::add(std::string property, std::uint64_t seed,
                         std::string detail) {
  violations.push_back({std::move(property), seed, std::move(detail)});
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

bool is_winner(const AuctionOutcome& outcome, UserId id) {
  return std::binary_search(outcome.winners.begin(), outcome.winners.end(),
                            id);
}

}  // namespace

void write_report_jsonl(const PropertyReport& report, std::ostream& out) {
  for (const Violation& v : report.violations) {
    out << "{\"property\":\"" << json_escape(v.property)
        << "\",\"seed\":" << v.seed << ",\"detail\":\""
        << json_escape(v.detail) << "\"}\n";
  }
}

void check_rationality_profitability(const Instance& instance,
                                     const MechanismSpec& spec,
                                     std::uint64_t seed,
                                     PropertyReport& report) {
  AuctionOutcome outcome = run_mechanism(instance, spec);
  std::string label = spec.label();
  for (UserId id : outcome.winners) {
    Value p = outcome.payments[static_cast<std::size_t>(id)];
    if (p < instance.bid(id)) {
      std::ostringstream detail;
      detail << "winner " << id << " paid " << p << " below bid "
             << instance.bid(id);
      report.add("rationality/" + label, seed, detail.str());
    }
  }
  if (outcome.utility < 0) {
    std::ostringstream detail;
    detail << "utility " << outcome.utility << " negative";
    report.add("profitability/" + label, seed, detail.str());
  }
}

void check_dominance(const Instance& instance, std::uint64_t seed,
                     PropertyReport& report) {
  Value smart = run_smart(instance).utility;
  Value baseline = run_msensing(instance).utility;
  if (smart < baseline) {
    std::ostringstream detail;
    detail << "smart " << smart << " below msensing " << baseline;
    report.add("dominance", seed, detail.str());
  }
}

void check_truthfulness(const Instance& instance, const MechanismSpec& spec,
                        const TruthfulnessProbe& probe, std::uint64_t seed,
                        PropertyReport& report) {
  const std::string label = spec.label();
  AuctionOutcome reference = run_mechanism(instance, spec);
  if (!is_winner(reference, probe.target)) {
    throw std::invalid_argument(
        "check_truthfulness: probe target must win under its reference bid");
  }
  const Value ref_bid = instance.bid(probe.target);
  const Value ref_payment =
      reference.payments[static_cast<std::size_t>(probe.target)];

  AuctionOutcome truthful =
      run_mechanism(instance.with_bid(probe.target, probe.true_cost), spec);
  Value truthful_gain =
      is_winner(truthful, probe.target)
          ? truthful.payments[static_cast<std::size_t>(probe.target)] -
                probe.true_cost
          : 0;

  for (Value bid : probe.bids) {
    if (bid <= 0 || bid == ref_payment) continue;  // boundary excluded
    AuctionOutcome probed =
        run_mechanism(instance.with_bid(probe.target, bid), spec);
    bool wins = is_winner(probed, probe.target);
    if (bid < ref_bid && !wins) {
      std::ostringstream detail;
      detail << "winner " << probe.target << " (bid " << ref_bid
             << ") loses after lowering bid to " << bid;
      report.add("monotonicity/" + label, seed, detail.str());
    }
    if (bid > ref_payment && wins) {
      std::ostringstream detail;
      detail << "winner " << probe.target << " (payment " << ref_payment
             << ") still wins bidding " << bid << ", paid "
             << probed.payments[static_cast<std::size_t>(probe.target)];
      report.add("criticality/" + label, seed, detail.str());
    }
    Value gain =
        wins ? probed.payments[static_cast<std::size_t>(probe.target)] -
                   probe.true_cost
             : 0;
    if (gain > truthful_gain) {
      std::ostringstream detail;
      detail << "user " << probe.target << " with cost " << probe.true_cost
             << " gains " << gain << " bidding " << bid << " vs "
             << truthful_gain << " truthful";
      report.add("dominant-truth/" + label, seed, detail.str());
    }
  }
}

void check_first_best(const Instance& instance, std::uint64_t seed,
                      PropertyReport& report) {
  Value bound = first_best_bound(instance);
  Value smart = run_smart(instance).utility;
  if (smart > bound) {
    std::ostringstream detail;
    detail << "smart utility " << smart << " exceeds first-best " << bound;
    report.add("first-best", seed, detail.str());
  }
}

void check_online_structure(const Instance& instance,
                            std::span<const UserId> arrival_order,
                            const OnlineConfig& config, std::uint64_t seed,
                            PropertyReport& report) {
  std::vector<ArrivalEvent> events;
  run_online(instance, arrival_order, config, &events);

  Value last_utility = 0;
  for (const ArrivalEvent& ev : events) {
    if (!std::includes(ev.reference_after.begin(), ev.reference_after.end(),
                       ev.winners_after.begin(), ev.winners_after.end())) {
      report.add("online-structure/T-subset-R", seed,
                 "winners not contained in reference after arrival " +
                     std::to_string(ev.position));
    }
    if (static_cast<int>(ev.reference_after.size()) > instance.task_count()) {
      report.add("online-structure/R-bound", seed,
                 "reference larger than task count after arrival " +
                     std::to_string(ev.position));
    }
    for (UserId j : ev.reference_after) {
      if (std::binary_search(ev.winners_after.begin(), ev.winners_after.end(),
                             j))
        continue;
      std::vector<UserId> others;
      for (UserId r : ev.reference_after) {
        if (r != j) others.push_back(r);
      }
      if (instance.marginal_value(j, others) < instance.bid(j)) {
        report.add("online-structure/reference-slack", seed,
                   "reference user " + std::to_string(j) +
                       " below bid after arrival " +
                       std::to_string(ev.position));
      }
    }
    if (ev.decision == ArrivalDecision::kAdded ||
        ev.decision == ArrivalDecision::kReplaced) {
      if (ev.utility_after < last_utility) {
        std::ostringstream detail;
        detail << "utility fell from " << last_utility << " to "
               << ev.utility_after << " at arrival " << ev.position;
        report.add("online-structure/monotone-utility", seed, detail.str());
      }
    }
    last_utility = ev.utility_after;
  }

  // Irrevocability: stepping a prefix reproduces the prefix decisions.
  OnlineState state = observe(instance, arrival_order, config);
  int k = state.cursor;
  int q = k + (instance.user_count() - k) / 2;
  std::size_t checked = static_cast<std::size_t>(k);
  while (state.cursor < q &&
         static_cast<int>(state.winners.size()) < instance.task_count()) {
    ArrivalEvent ev = process_arrival(
        state, instance,
        arrival_order[static_cast<std::size_t>(state.cursor)]);
    if (checked >= events.size() ||
        events[checked].decision != ev.decision ||
        events[checked].payment != ev.payment ||
        events[checked].user != ev.user) {
      report.add("online-structure/prefix-replay", seed,
                 "prefix decision diverged at arrival " +
                     std::to_string(ev.position));
      break;
    }
    ++checked;
  }
}

namespace {

struct BatteryCase {
  Instance instance;
  std::uint64_t seed;
  std::vector<UserId> arrival_order;
  OnlineConfig online;
};

// Everything about a battery case derives from its seed alone, so a
// violation record can be replayed without the surrounding report.
BatteryCase make_case(std::uint64_t instance_seed, int max_users,
                      int max_tasks) {
  Rng rng(instance_seed);
  GeneratorConfig config;
  config.users = static_cast<int>(rng.uniform_int(1, max_users));
  config.tasks = static_cast<int>(rng.uniform_int(1, max_tasks));
  config.value_lo = 0;
  config.value_hi = rng.uniform_int(1, 15);
  config.bid_lo = 1;
  config.bid_hi = rng.uniform_int(1, 15);
  config.task_fraction = 0.1 + 0.9 * rng.uniform_real01();
  config.seed = rng.next();
  std::uint64_t order_seed = rng.next();
  double fractions[] = {0.2, 1.0 / 3.0, 0.5};
  OnlineConfig online{fractions[rng.uniform_int(0, 2)]};
  return {generate_instance(config), instance_seed,
          random_arrival_order(config.users, order_seed), online};
}

std::vector<Value> probe_bids(Value bid, Value payment) {
  std::vector<Value> bids;
  auto push = [&bids](Value b) {
    if (b > 0 && std::find(bids.begin(), bids.end(), b) == bids.end())
      bids.push_back(b);
  };
  push(bid - 1);
  push(std::max<Value>(1, bid / 2));
  push(payment + 1);
  push(payment + 7);
  push(bid);
  return bids;
}

void probe_mechanism_winners(const Instance& instance,
                             const MechanismSpec& spec, std::uint64_t seed,
                             PropertyReport& report) {
  AuctionOutcome reference = run_mechanism(instance, spec);
  for (UserId id : reference.winners) {
    TruthfulnessProbe probe;
    probe.target = id;
    probe.true_cost = std::max<Value>(1, (instance.bid(id) + 1) / 2);
    probe.bids = probe_bids(instance.bid(id),
                            reference.payments[static_cast<std::size_t>(id)]);
    check_truthfulness(instance, spec, probe, seed, report);
  }
}

}  // namespace

PropertyReport run_battery(const BatteryOptions& options) {
  PropertyReport report;
  for (int t = 0; t < options.count; ++t) {
    std::uint64_t instance_seed =
        derive_seed(options.seed, 0xBA77u, static_cast<std::uint64_t>(t));
    BatteryCase c =
        make_case(instance_seed, options.max_users, options.max_tasks);
    MechanismSpec smart = MechanismSpec::smart();
    MechanismSpec msensing = MechanismSpec::msensing();
    MechanismSpec online =
        MechanismSpec::online_run(c.arrival_order, c.online);

    check_rationality_profitability(c.instance, smart, c.seed, report);
    check_rationality_profitability(c.instance, msensing, c.seed, report);
    check_rationality_profitability(c.instance, online, c.seed, report);
    check_dominance(c.instance, c.seed, report);
    if (c.instance.user_count() <= 12) {
      check_first_best(c.instance, c.seed, report);
    }
    probe_mechanism_winners(c.instance, smart, c.seed, report);
    probe_mechanism_winners(c.instance, msensing, c.seed, report);
    probe_mechanism_winners(c.instance, online, c.seed, report);
    check_online_structure(c.instance, c.arrival_order, c.online, c.seed,
                           report);
    ++report.instances;
  }
  return report;
}

}  // namespace crowdsense
