#include <algorithm>
#include <cassert>

#include "daggrade/kernels.hpp"

namespace daggrade::kernels {

void lcs_batch16_scalar(const std::uint16_t* query, std::size_t query_len,
                        const std::uint16_t* targets_t, std::size_t target_len,
                        std::uint16_t* out_lcs) {
  assert(target_len <= kLcsMaxTargetLen);
  std::uint16_t target[kLcsMaxTargetLen];
  std::uint16_t prev[kLcsMaxTargetLen + 1];
  std::uint16_t cur[kLcsMaxTargetLen + 1];

  for (std::size_t lane = 0; lane < kLcsBatchLanes; ++lane) {
    for (std::size_t j = 0; j < target_len; ++j) {
      target[j] = targets_t[j * kLcsBatchLanes + lane];
    }
    std::fill(prev, prev + target_len + 1, std::uint16_t{0});
    for (std::size_t i = 1; i <= query_len; ++i) {
      const std::uint16_t qi = query[i - 1];
      cur[0] = 0;
      for (std::size_t j = 1; j <= target_len; ++j) {
        cur[j] = qi == target[j - 1] ? static_cast<std::uint16_t>(prev[j - 1] + 1)
                                     : std::max(prev[j], cur[j - 1]);
      }
      std::copy(cur, cur + target_len + 1, prev);
    }
    out_lcs[lane] = prev[target_len];
  }
}

}  // namespace daggrade::kernels
