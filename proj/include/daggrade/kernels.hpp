#pragma once

#include <cstddef>
#include <cstdint>

namespace daggrade::kernels {

// Batched LCS: one query sequence against up to kLcsBatchLanes target
// sequences of a common length, all lengths computed in a single pass. This
// is the inner loop of the enumeration grader, which folds an edit-distance
// minimum over every topological ordering of the dependency graph.
//
// Targets are stored transposed: targets_t[j * kLcsBatchLanes + lane] is
// element j of target `lane`. Unused lanes must be padded with kLcsPadSymbol,
// which the caller guarantees never occurs in the query.
inline constexpr std::size_t kLcsBatchLanes = 16;
inline constexpr std::uint16_t kLcsPadSymbol = 0xffff;
inline constexpr std::size_t kLcsMaxTargetLen = 64;

using LcsBatchFn = void (*)(const std::uint16_t* query, std::size_t query_len,
                            const std::uint16_t* targets_t, std::size_t target_len,
                            std::uint16_t* out_lcs);

// Reference kernel: plain per-lane dynamic program.
void lcs_batch16_scalar(const std::uint16_t* query, std::size_t query_len,
                        const std::uint16_t* targets_t, std::size_t target_len,
                        std::uint16_t* out_lcs);

// AVX2 kernel, 16-bit lanes. Returns nullptr when this build or this host
// cannot run AVX2.
LcsBatchFn lcs_batch16_avx2();

enum class SimdLevel { scalar, avx2 };

constexpr const char* simd_level_name(SimdLevel l) {
  return l == SimdLevel::avx2 ? "avx2" : "scalar";
}

SimdLevel active_simd_level();

// Forces a kernel level; returns false (and changes nothing) if the level is
// unsupported here. Not thread-safe: call before concurrent grading starts.
bool set_simd_level(SimdLevel level);

// Back to auto-detection.
void reset_simd_level();

// Dispatched entry point. out_lcs receives kLcsBatchLanes values; entries for
// padded lanes are meaningless.
void lcs_batch16(const std::uint16_t* query, std::size_t query_len,
                 const std::uint16_t* targets_t, std::size_t target_len,
                 std::uint16_t* out_lcs);

}  // namespace daggrade::kernels
