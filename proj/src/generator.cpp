#include "crowdsense/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace crowdsense {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

double Rng::uniform_real01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point,
                          std::uint64_t trial) {
  return base ^ mix64(point * 0x100000001b3ull + trial + 1);
}

Instance generate_instance(const GeneratorConfig& config) {
  if (config.users < 0 || config.tasks <= 0) {
    throw std::invalid_argument("generator: users/tasks out of range");
  }
  if (config.value_lo < 0 || config.value_lo > config.value_hi) {
    throw std::invalid_argument("generator: bad task value range");
  }
  if (config.bid_lo < 1 || config.bid_lo > config.bid_hi) {
    throw std::invalid_argument("generator: bad bid range");
  }
  if (!(config.task_fraction > 0.0) || config.task_fraction > 1.0) {
    throw std::invalid_argument("generator: task_fraction must be in (0, 1]");
  }
  Rng rng(config.seed);
  std::vector<Task> tasks(static_cast<std::size_t>(config.tasks));
  for (int t = 0; t < config.tasks; ++t) {
    tasks[static_cast<std::size_t>(t)] = {
        t, rng.uniform_int(config.value_lo, config.value_hi)};
  }
  int per_user = std::max(
      1, static_cast<int>(std::llround(config.task_fraction * config.tasks)));
  per_user = std::min(per_user, config.tasks);

  std::vector<UserProfile> users(static_cast<std::size_t>(config.users));
  std::vector<TaskId> pool(static_cast<std::size_t>(config.tasks));
  std::iota(pool.begin(), pool.end(), 0);
  for (int u = 0; u < config.users; ++u) {
    // Partial Fisher-Yates: the first per_user entries become the task set.
    for (int k = 0; k < per_user; ++k) {
      std::int64_t j = rng.uniform_int(k, config.tasks - 1);
      std::swap(pool[static_cast<std::size_t>(k)],
                pool[static_cast<std::size_t>(j)]);
    }
    std::vector<TaskId> chosen(pool.begin(), pool.begin() + per_user);
    std::sort(chosen.begin(), chosen.end());
    users[static_cast<std::size_t>(u)] = {
        u + 1, std::move(chosen), rng.uniform_int(config.bid_lo, config.bid_hi)};
  }
  return Instance(TaskCatalog(std::move(tasks)), std::move(users));
}

std::vector<UserId> random_arrival_order(int n, std::uint64_t seed) {
  std::vector<UserId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  Rng rng(seed);
  rng.shuffle(order);
  return order;
}

}  // namespace crowdsense
