#pragma once

#include <cstddef>
#include <cstdint>

// Bitmask reduction kernels used by the coverage-value algebra.
//
// Task sets are stored as 64-bit word masks (bit k of word w = task w*64+k)
// and task values as a flat int32 array padded with zeros to a whole number
// of words. Both kernels below reduce over that layout:
//
//   masked_value_sum : sum of values[k] over set bits of `mask`
//   andnot_value_sum : sum of values[k] over set bits of `mask & ~exclude`
//
// The andnot form is the marginal-value inner loop (value a user adds on top
// of an already covered task set) and dominates the run time of every
// mechanism and sweep in this project. A scalar reference implementation is
// always available; on x86-64 an AVX2 variant is selected at run time. The
// two are bit-for-bit equivalent (see tests/test_kernels.cpp).
//
// Contract: pointers reference `words` mask words and `words * 64` values;
// values are non-negative and their total fits in int64.

namespace crowdsense::kernels {

std::int64_t masked_value_sum_scalar(const std::int32_t* values,
                                     const std::uint64_t* mask,
                                     std::size_t words);

std::int64_t andnot_value_sum_scalar(const std::int32_t* values,
                                     const std::uint64_t* mask,
                                     const std::uint64_t* exclude,
                                     std::size_t words);

#if defined(__x86_64__) || defined(_M_X64)
#define CROWDSENSE_HAVE_AVX2_KERNELS 1
bool avx2_supported();

std::int64_t masked_value_sum_avx2(const std::int32_t* values,
                                   const std::uint64_t* mask,
                                   std::size_t words);

std::int64_t andnot_value_sum_avx2(const std::int32_t* values,
                                   const std::uint64_t* mask,
                                   const std::uint64_t* exclude,
                                   std::size_t words);
#endif

// Name of the variant the dispatcher picked ("avx2" or "scalar").
// CROWDSENSE_KERNEL=scalar|avx2 in the environment forces a variant.
const char* active_kernel();

std::int64_t masked_value_sum(const std::int32_t* values,
                              const std::uint64_t* mask, std::size_t words);

std::int64_t andnot_value_sum(const std::int32_t* values,
                              const std::uint64_t* mask,
                              const std::uint64_t* exclude, std::size_t words);

}  // namespace crowdsense::kernels
