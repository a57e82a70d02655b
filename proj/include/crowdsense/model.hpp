#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Ground-truth data model for the reverse auction: a task catalog with
// per-task values, user profiles (task subset + bid) and the coverage-value
// algebra every mechanism is built on. All quantities are exact integer
// value-units; payment tests rely on exact equality.
//
// Conventions: user ids are 1-based and contiguous (1..n), task ids 0-based
// and contiguous (0..m-1). Instances are immutable after construction and
// safe to share across threads.

namespace crowdsense {

using TaskId = std::int32_t;
using UserId = std::int32_t;
using Value = std::int64_t;

struct Task {
  TaskId id = 0;
  Value value = 0;
};

struct UserProfile {
  UserId id = 0;
  std::vector<TaskId> tasks;
  Value bid = 0;
};

// Word-per-64-tasks bitmask over the catalog.
using TaskMask = std::vector<std::uint64_t>;

class TaskCatalog {
 public:
  TaskCatalog() = default;
  explicit TaskCatalog(std::vector<Task> tasks);

  int task_count() const { return static_cast<int>(tasks_.size()); }
  const std::vector<Task>& tasks() const { return tasks_; }
  Value value_of(TaskId id) const;

  // Values padded with zeros to a whole number of mask words.
  const std::int32_t* padded_values() const { return padded_values_.data(); }
  std::size_t words() const { return words_; }

 private:
  std::vector<Task> tasks_;
  std::vector<std::int32_t> padded_values_;
  std::size_t words_ = 0;
};

class Instance {
 public:
  Instance(TaskCatalog catalog, std::vector<UserProfile> users);

  int user_count() const { return static_cast<int>(users_.size()); }
  int task_count() const { return catalog_.task_count(); }
  const TaskCatalog& catalog() const { return catalog_; }
  const std::vector<UserProfile>& users() const { return users_; }
  const UserProfile& user(UserId id) const;
  Value bid(UserId id) const { return user(id).bid; }
  const TaskMask& user_mask(UserId id) const;
  std::size_t words() const { return catalog_.words(); }

  // Union task mask of a user set.
  TaskMask coverage_mask(std::span<const UserId> users) const;

  // v(S): summed value of the union of the users' task sets.
  Value coverage_value(std::span<const UserId> users) const;
  Value coverage_value(std::initializer_list<UserId> users) const;
  Value mask_value(const TaskMask& mask) const;

  // v_i(S) = v(S ∪ {i}) - v(S); zero when i's tasks are already covered.
  Value marginal_value(UserId i, std::span<const UserId> S) const;
  Value marginal_value(UserId i, std::initializer_list<UserId> S) const;
  Value marginal_value_vs_mask(UserId i, const TaskMask& covered) const;

  // u(S) = v(S) - sum of payments to S; may be negative.
  Value platform_utility(std::span<const UserId> winners,
                         std::span<const Value> payments_by_user) const;

  // u_i(S) = v_i(S) - p_i.
  Value marginal_utility(UserId i, std::span<const UserId> S, Value p) const;

  // sigma_i(T) = v_i(T \ {i}) - b_i; defined whether or not i is in T.
  Value sigma(UserId i, std::span<const UserId> T) const;
  Value sigma(UserId i, std::initializer_list<UserId> T) const;

  // Total value of user i's own task set (v_i in isolation).
  Value user_value(UserId i) const;

  // Copy of the instance with user i's bid replaced (for probe replays).
  Instance with_bid(UserId i, Value bid) const;

 private:
  void check_user(UserId id) const;

  TaskCatalog catalog_;
  std::vector<UserProfile> users_;
  std::vector<TaskMask> masks_;  // indexed by user id, slot 0 unused
};

// Auction result: winner set, per-user payments (index = user id, zero for
// losers) and the platform utility v(T) - sum of payments.
struct AuctionOutcome {
  std::vector<UserId> winners;   // ascending
  std::vector<Value> payments;   // size n + 1
  Value utility = 0;
};

AuctionOutcome make_outcome(const Instance& instance,
                            std::vector<UserId> winners,
                            std::vector<Value> payments);

}  // namespace crowdsense
