#include <cstdlib>
#include <cstring>

#include "crowdsense/kernels.hpp"

namespace crowdsense::kernels {

namespace {

using MaskedSumFn = std::int64_t (*)(const std::int32_t*, const std::uint64_t*,
                                     std::size_t);
using AndnotSumFn = std::int64_t (*)(const std::int32_t*, const std::uint64_t*,
                                     const std::uint64_t*, std::size_t);

struct Dispatch {
  MaskedSumFn masked;
  AndnotSumFn andnot;
  const char* name;
};

Dispatch select() {
#if defined(CROWDSENSE_HAVE_AVX2_KERNELS)
  const char* forced = std::getenv("CROWDSENSE_KERNEL");
  if (forced && std::strcmp(forced, "scalar") == 0) {
    return {masked_value_sum_scalar, andnot_value_sum_scalar, "scalar"};
  }
  bool want_avx2 = forced ? std::strcmp(forced, "avx2") == 0 : true;
  if (want_avx2 && avx2_supported()) {
    return {masked_value_sum_avx2, andnot_value_sum_avx2, "avx2"};
  }
#endif
  return {masked_value_sum_scalar, andnot_value_sum_scalar, "scalar"};
}

const Dispatch& dispatch() {
  static const Dispatch d = select();
  return d;
}

}  // namespace

const char* active_kernel() { return dispatch().name; }

std::int64_t masked_value_sum(const std::int32_t* values,
                              const std::uint64_t* mask, std::size_t words) {
  return dispatch().masked(values, mask, words);
}

std::int64_t andnot_value_sum(const std::int32_t* values,
                              const std::uint64_t* mask,
                              const std::uint64_t* exclude,
                              std::size_t words) {
  return dispatch().andnot(values, mask, exclude, words);
}

}  // namespace crowdsense::kernels
