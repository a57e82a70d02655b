#include "crowdsense/model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "crowdsense/kernels.hpp"

namespace crowdsense {

namespace {

std::size_t words_for(int tasks) {
  return static_cast<std::size_t>((tasks + 63) / 64);
}

void set_bit(TaskMask& mask, TaskId t) {
  mask[static_cast<std::size_t>(t) / 64] |= std::uint64_t{1} << (t % 64);
}

}  // namespace

TaskCatalog::TaskCatalog(std::vector<Task> tasks) : tasks_(std::move(tasks)) {
  for (std::size_t k = 0; k < tasks_.size(); ++k) {
    const Task& t = tasks_[k];
    if (t.id != static_cast<TaskId>(k)) {
      throw std::invalid_argument("tasks[" + std::to_string(k) +
                                  "].id: task ids must be contiguous from 0");
    }
    if (t.value < 0) {
      throw std::invalid_argument("tasks[" + std::to_string(k) +
                                  "].value: must be non-negative");
    }
    if (t.value > std::numeric_limits<std::int32_t>::max()) {
      throw std::invalid_argument("tasks[" + std::to_string(k) +
                                  "].value: exceeds supported range");
    }
  }
  words_ = words_for(static_cast<int>(tasks_.size()));
  padded_values_.assign(words_ * 64, 0);
  for (const Task& t : tasks_) {
    padded_values_[static_cast<std::size_t>(t.id)] =
        static_cast<std::int32_t>(t.value);
  }
}

Value TaskCatalog::value_of(TaskId id) const {
  if (id < 0 || id >= task_count()) {
    throw std::out_of_range("unknown task id " + std::to_string(id));
  }
  return tasks_[static_cast<std::size_t>(id)].value;
}

Instance::Instance(TaskCatalog catalog, std::vector<UserProfile> users)
    : catalog_(std::move(catalog)), users_(std::move(users)) {
  masks_.assign(users_.size() + 1, TaskMask(catalog_.words(), 0));
  for (std::size_t k = 0; k < users_.size(); ++k) {
    const UserProfile& u = users_[k];
    const std::string where = "users[" + std::to_string(k) + "]";
    if (u.id != static_cast<UserId>(k) + 1) {
      throw std::invalid_argument(where +
                                  ".id: user ids must be contiguous from 1");
    }
    if (u.tasks.empty()) {
      throw std::invalid_argument(where + ".tasks: must be nonempty");
    }
    if (u.bid <= 0) {
      throw std::invalid_argument(where + ".bid: must be positive");
    }
    TaskMask& mask = masks_[static_cast<std::size_t>(u.id)];
    for (TaskId t : u.tasks) {
      if (t < 0 || t >= catalog_.task_count()) {
        throw std::invalid_argument(where + ".tasks: unknown task id " +
                                    std::to_string(t));
      }
      set_bit(mask, t);
    }
  }
}

void Instance::check_user(UserId id) const {
  if (id < 1 || id > user_count()) {
    throw std::out_of_range("unknown user id " + std::to_string(id));
  }
}

const UserProfile& Instance::user(UserId id) const {
  check_user(id);
  return users_[static_cast<std::size_t>(id) - 1];
}

const TaskMask& Instance::user_mask(UserId id) const {
  check_user(id);
  return masks_[static_cast<std::size_t>(id)];
}

TaskMask Instance::coverage_mask(std::span<const UserId> users) const {
  TaskMask covered(words(), 0);
  for (UserId id : users) {
    const TaskMask& m = user_mask(id);
    for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= m[w];
  }
  return covered;
}

Value Instance::mask_value(const TaskMask& mask) const {
  return kernels::masked_value_sum(catalog_.padded_values(), mask.data(),
                                   mask.size());
}

Value Instance::coverage_value(std::span<const UserId> users) const {
  return mask_value(coverage_mask(users));
}

Value Instance::coverage_value(std::initializer_list<UserId> users) const {
  return coverage_value(std::span<const UserId>(users.begin(), users.size()));
}

Value Instance::marginal_value_vs_mask(UserId i, const TaskMask& covered) const {
  const TaskMask& mine = user_mask(i);
  return kernels::andnot_value_sum(catalog_.padded_values(), mine.data(),
                                   covered.data(), mine.size());
}

Value Instance::marginal_value(UserId i, std::span<const UserId> S) const {
  return marginal_value_vs_mask(i, coverage_mask(S));
}

Value Instance::marginal_value(UserId i, std::initializer_list<UserId> S) const {
  return marginal_value(i, std::span<const UserId>(S.begin(), S.size()));
}

Value Instance::platform_utility(std::span<const UserId> winners,
                                 std::span<const Value> payments_by_user) const {
  Value total = coverage_value(winners);
  for (UserId id : winners) {
    check_user(id);
    total -= payments_by_user[static_cast<std::size_t>(id)];
  }
  return total;
}

Value Instance::marginal_utility(UserId i, std::span<const UserId> S,
                                 Value p) const {
  return marginal_value(i, S) - p;
}

Value Instance::sigma(UserId i, std::span<const UserId> T) const {
  check_user(i);
  TaskMask covered(words(), 0);
  for (UserId id : T) {
    if (id == i) continue;
    const TaskMask& m = user_mask(id);
    for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= m[w];
  }
  return marginal_value_vs_mask(i, covered) - bid(i);
}

Value Instance::sigma(UserId i, std::initializer_list<UserId> T) const {
  return sigma(i, std::span<const UserId>(T.begin(), T.size()));
}

Value Instance::user_value(UserId i) const {
  return mask_value(user_mask(i));
}

Instance Instance::with_bid(UserId i, Value bid) const {
  check_user(i);
  std::vector<UserProfile> users = users_;
  users[static_cast<std::size_t>(i) - 1].bid = bid;
  return Instance(catalog_, std::move(users));
}

AuctionOutcome make_outcome(const Instance& instance,
                            std::vector<UserId> winners,
                            std::vector<Value> payments) {
  AuctionOutcome out;
  std::sort(winners.begin(), winners.end());
  payments.resize(static_cast<std::size_t>(instance.user_count()) + 1, 0);
  out.utility = instance.platform_utility(winners, payments);
  out.winners = std::move(winners);
  out.payments = std::move(payments);
  return out;
}

}  // namespace crowdsense
