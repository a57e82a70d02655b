#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "crowdsense/model.hpp"

// Seeded random instances. All draws go through mt19937_64 (whose output
// sequence the C++ standard pins down) with our own rejection-sampled
// bounded draw, so a given seed produces the same instance on every build of
// this project regardless of the standard library.

namespace crowdsense {

struct GeneratorConfig {
  int users = 0;
  int tasks = 0;
  Value value_lo = 0, value_hi = 0;  // task values, inclusive
  Value bid_lo = 1, bid_hi = 1;      // bids, inclusive; lo must be >= 1
  double task_fraction = 0.25;       // mean fraction of tasks per user
  std::uint64_t seed = 0;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [lo, hi] via rejection sampling (no implementation-
  // defined distributions).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double uniform_real01();  // in [0, 1)

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t k = items.size(); k > 1; --k) {
      std::size_t j = static_cast<std::size_t>(
          uniform_int(0, static_cast<std::int64_t>(k) - 1));
      std::swap(items[k - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64; used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t x);

// Per-trial stream seed: base XOR mix of (point index, trial index). Adding
// sweep points or trials never reshuffles existing trials.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point,
                          std::uint64_t trial);

Instance generate_instance(const GeneratorConfig& config);

// Uniform random permutation of 1..n.
std::vector<UserId> random_arrival_order(int n, std::uint64_t seed);

}  // namespace crowdsense
