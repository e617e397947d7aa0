#include "daggrade/kernels.hpp"

namespace daggrade::kernels {

namespace {

struct Dispatch {
  LcsBatchFn fn;
  SimdLevel level;
};

Dispatch detect() {
  if (LcsBatchFn fn = lcs_batch16_avx2()) {
    return {fn, SimdLevel::avx2};
  }
  return {&lcs_batch16_scalar, SimdLevel::scalar};
}

Dispatch& dispatch() {
  static Dispatch d = detect();
  return d;
}

}  // namespace

SimdLevel active_simd_level() { return dispatch().level; }

bool set_simd_level(SimdLevel level) {
  if (level == SimdLevel::scalar) {
    dispatch() = {&lcs_batch16_scalar, SimdLevel::scalar};
    return true;
  }
  if (LcsBatchFn fn = lcs_batch16_avx2()) {
    dispatch() = {fn, SimdLevel::avx2};
    return true;
  }
  return false;
}

void reset_simd_level() { dispatch() = detect(); }

void lcs_batch16(const std::uint16_t* query, std::size_t query_len,
                 const std::uint16_t* targets_t, std::size_t target_len,
                 std::uint16_t* out_lcs) {
  dispatch().fn(query, query_len, targets_t, target_len, out_lcs);
}

}  // namespace daggrade::kernels
