// AVX2 variants of the mask reduction kernels. This translation unit is the
// only one compiled with -mavx2; callers must gate on avx2_supported().

#include "crowdsense/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace crowdsense::kernels {

bool avx2_supported() { return __builtin_cpu_supports("avx2") != 0; }

namespace {

// Expands one mask byte into eight int32 lanes (all-ones where the bit is
// set) and accumulates the selected values into two int64x4 accumulators.
// Widening before the add keeps the accumulation exact for any int32 input.
inline void accumulate_byte(std::uint32_t byte, const std::int32_t* vals,
                            __m256i& acc_lo, __m256i& acc_hi) {
  const __m256i bit_select = _mm256_setr_epi32(1, 2, 4, 8, 16, 32, 64, 128);
  __m256i lanes = _mm256_set1_epi32(static_cast<int>(byte));
  __m256i mask =
      _mm256_cmpeq_epi32(_mm256_and_si256(lanes, bit_select), bit_select);
  __m256i picked = _mm256_and_si256(
      _mm256_loadu_si256(reinterpret_cast<const __m256i*>(vals)), mask);
  acc_lo = _mm256_add_epi64(
      acc_lo, _mm256_cvtepi32_epi64(_mm256_castsi256_si128(picked)));
  acc_hi = _mm256_add_epi64(
      acc_hi, _mm256_cvtepi32_epi64(_mm256_extracti128_si256(picked, 1)));
}

inline std::int64_t horizontal_sum(__m256i acc) {
  alignas(32) std::int64_t parts[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(parts), acc);
  return parts[0] + parts[1] + parts[2] + parts[3];
}

inline std::int64_t reduce_word(std::uint64_t bits, const std::int32_t* base,
                                __m256i& acc_lo, __m256i& acc_hi) {
  for (int b = 0; b < 8; ++b) {
    std::uint32_t byte = static_cast<std::uint32_t>((bits >> (b * 8)) & 0xff);
    if (byte) accumulate_byte(byte, base + b * 8, acc_lo, acc_hi);
  }
  return 0;
}

}  // namespace

std::int64_t masked_value_sum_avx2(const std::int32_t* values,
                                   const std::uint64_t* mask,
                                   std::size_t words) {
  __m256i acc_lo = _mm256_setzero_si256();
  __m256i acc_hi = _mm256_setzero_si256();
  for (std::size_t w = 0; w < words; ++w) {
    if (mask[w]) reduce_word(mask[w], values + w * 64, acc_lo, acc_hi);
  }
  return horizontal_sum(_mm256_add_epi64(acc_lo, acc_hi));
}

std::int64_t andnot_value_sum_avx2(const std::int32_t* values,
                                   const std::uint64_t* mask,
                                   const std::uint64_t* exclude,
                                   std::size_t words) {
  __m256i acc_lo = _mm256_setzero_si256();
  __m256i acc_hi = _mm256_setzero_si256();
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = mask[w] & ~exclude[w];
    if (bits) reduce_word(bits, values + w * 64, acc_lo, acc_hi);
  }
  return horizontal_sum(_mm256_add_epi64(acc_lo, acc_hi));
}

}  // namespace crowdsense::kernels

#endif  // x86-64
