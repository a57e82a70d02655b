#include <bit>

#include "crowdsense/kernels.hpp"

namespace crowdsense::kernels {

std::int64_t masked_value_sum_scalar(const std::int32_t* values,
                                     const std::uint64_t* mask,
                                     std::size_t words) {
  std::int64_t sum = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = mask[w];
    const std::int32_t* base = values + w * 64;
    while (bits) {
      sum += base[std::countr_zero(bits)];
      bits &= bits - 1;
    }
  }
  return sum;
}

std::int64_t andnot_value_sum_scalar(const std::int32_t* values,
                                     const std::uint64_t* mask,
                                     const std::uint64_t* exclude,
                                     std::size_t words) {
  std::int64_t sum = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = mask[w] & ~exclude[w];
    const std::int32_t* base = values + w * 64;
    while (bits) {
      sum += base[std::countr_zero(bits)];
      bits &= bits - 1;
    }
  }
  return sum;
}

}  // namespace crowdsense::kernels
