// AVX2 variant of the batched LCS kernel: all 16 targets advance through the
// dynamic program together, one 16-bit lane each. Compiled with -mavx2 when
// the toolchain supports it; dispatch.cpp only selects it after a runtime
// CPU check.

#include "daggrade/kernels.hpp"

#if defined(__AVX2__) && (defined(__x86_64__) || defined(__i386__))

#include <immintrin.h>

#include <cassert>
#include <cstring>

namespace daggrade::kernels {

namespace {

void lcs_batch16_avx2_impl(const std::uint16_t* query, std::size_t query_len,
                           const std::uint16_t* targets_t, std::size_t target_len,
                           std::uint16_t* out_lcs) {
  assert(target_len <= kLcsMaxTargetLen);
  static_assert(kLcsBatchLanes * sizeof(std::uint16_t) == sizeof(__m256i));

  alignas(32) std::uint16_t row_a[(kLcsMaxTargetLen + 1) * kLcsBatchLanes] = {};
  alignas(32) std::uint16_t row_b[(kLcsMaxTargetLen + 1) * kLcsBatchLanes] = {};
  std::uint16_t* prev = row_a;
  std::uint16_t* cur = row_b;

  const __m256i ones = _mm256_set1_epi16(1);

  for (std::size_t i = 1; i <= query_len; ++i) {
    const __m256i qv = _mm256_set1_epi16(static_cast<short>(query[i - 1]));
    // diag = prev[j-1], left = cur[j-1]; both start at the zero column.
    __m256i diag = _mm256_setzero_si256();
    __m256i left = _mm256_setzero_si256();
    for (std::size_t j = 1; j <= target_len; ++j) {
      const __m256i up = _mm256_load_si256(
          reinterpret_cast<const __m256i*>(prev + j * kLcsBatchLanes));
      const __m256i tj = _mm256_loadu_si256(
          reinterpret_cast<const __m256i*>(targets_t + (j - 1) * kLcsBatchLanes));
      const __m256i eq = _mm256_cmpeq_epi16(qv, tj);
      // On a match the diagonal + 1 always dominates, so a plain three-way
      // max is equivalent to the textbook branch.
      const __m256i cand = _mm256_add_epi16(diag, _mm256_and_si256(eq, ones));
      const __m256i best = _mm256_max_epu16(_mm256_max_epu16(up, left), cand);
      _mm256_store_si256(reinterpret_cast<__m256i*>(cur + j * kLcsBatchLanes), best);
      diag = up;
      left = best;
    }
    std::uint16_t* tmp = prev;
    prev = cur;
    cur = tmp;
  }
  std::memcpy(out_lcs, prev + target_len * kLcsBatchLanes,
              kLcsBatchLanes * sizeof(std::uint16_t));
}

}  // namespace

LcsBatchFn lcs_batch16_avx2() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  return &lcs_batch16_avx2_impl;
}

}  // namespace daggrade::kernels

#else

namespace daggrade::kernels {

LcsBatchFn lcs_batch16_avx2() { return nullptr; }

}  // namespace daggrade::kernels

#endif
