#include <random>
#include <vector>

#include "crowdsense/kernels.hpp"
#include "doctest.h"

using namespace crowdsense;

namespace {

struct RandomCase {
  std::vector<std::int32_t> values;
  std::vector<std::uint64_t> mask;
  std::vector<std::uint64_t> exclude;
};

RandomCase random_case(std::mt19937_64& rng, std::size_t words,
                       double density) {
  RandomCase c;
  c.values.resize(words * 64);
  c.mask.resize(words);
  c.exclude.resize(words);
  std::uniform_int_distribution<std::int32_t> value(0, 1 << 20);
  std::bernoulli_distribution bit(density);
  for (auto& v : c.values) v = value(rng);
  for (std::size_t w = 0; w < words; ++w) {
    for (int b = 0; b < 64; ++b) {
      if (bit(rng)) c.mask[w] |= std::uint64_t{1} << b;
      if (bit(rng)) c.exclude[w] |= std::uint64_t{1} << b;
    }
  }
  return c;
}

std::int64_t brute_andnot(const RandomCase& c) {
  std::int64_t sum = 0;
  for (std::size_t w = 0; w < c.mask.size(); ++w) {
    for (int b = 0; b < 64; ++b) {
      std::uint64_t bit = std::uint64_t{1} << b;
      if ((c.mask[w] & bit) && !(c.exclude[w] & bit)) {
        sum += c.values[w * 64 + static_cast<std::size_t>(b)];
      }
    }
  }
  return sum;
}

}  // namespace

TEST_CASE("scalar kernels match a bit-by-bit reference") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    std::size_t words = 1 + rep % 6;
    RandomCase c = random_case(rng, words, 0.05 + 0.015 * rep);
    CHECK(kernels::andnot_value_sum_scalar(c.values.data(), c.mask.data(),
                                           c.exclude.data(),
                                           words) == brute_andnot(c));
    std::vector<std::uint64_t> none(words, 0);
    RandomCase plain = c;
    plain.exclude = none;
    CHECK(kernels::masked_value_sum_scalar(c.values.data(), c.mask.data(),
                                           words) == brute_andnot(plain));
  }
}

TEST_CASE("empty masks sum to zero") {
  std::vector<std::int32_t> values(128, 99);
  std::vector<std::uint64_t> mask(2, 0);
  CHECK(kernels::masked_value_sum_scalar(values.data(), mask.data(), 2) == 0);
  CHECK(kernels::masked_value_sum(values.data(), mask.data(), 2) == 0);
}

#if defined(CROWDSENSE_HAVE_AVX2_KERNELS)
TEST_CASE("avx2 kernels are equivalent to the scalar reference") {
  if (!kernels::avx2_supported()) {
    MESSAGE("AVX2 not available; skipping equivalence check");
    return;
  }
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t words = 1 + rep % 17;
    double density = (rep % 10) / 9.0;  // sparse through fully dense
    RandomCase c = random_case(rng, words, density);
    CHECK(kernels::andnot_value_sum_avx2(c.values.data(), c.mask.data(),
                                         c.exclude.data(), words) ==
          kernels::andnot_value_sum_scalar(c.values.data(), c.mask.data(),
                                           c.exclude.data(), words));
    CHECK(kernels::masked_value_sum_avx2(c.values.data(), c.mask.data(),
                                         words) ==
          kernels::masked_value_sum_scalar(c.values.data(), c.mask.data(),
                                           words));
  }
}

TEST_CASE("avx2 kernels handle all-ones masks exactly") {
  if (!kernels::avx2_supported()) return;
  std::vector<std::int32_t> values(3 * 64);
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = static_cast<std::int32_t>(k * k % 977);
  }
  std::vector<std::uint64_t> mask(3, ~std::uint64_t{0});
  std::vector<std::uint64_t> none(3, 0);
  CHECK(kernels::masked_value_sum_avx2(values.data(), mask.data(), 3) ==
        kernels::masked_value_sum_scalar(values.data(), mask.data(), 3));
  CHECK(kernels::andnot_value_sum_avx2(values.data(), mask.data(), none.data(),
                                       3) ==
        kernels::masked_value_sum_scalar(values.data(), mask.data(), 3));
}
#endif

TEST_CASE("dispatcher picks a working variant") {
  CHECK((std::string(kernels::active_kernel()) == "avx2" ||
         std::string(kernels::active_kernel()) == "scalar"));
  std::vector<std::int32_t> values(64, 1);
  std::vector<std::uint64_t> mask{0xff};
  CHECK(kernels::masked_value_sum(values.data(), mask.data(), 1) == 8);
}
