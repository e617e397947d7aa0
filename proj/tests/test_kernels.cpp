#include <doctest.h>

#include <random>
#include <vector>

#include "daggrade/editdist.hpp"
#include "daggrade/kernels.hpp"

using namespace daggrade;
using namespace daggrade::kernels;

namespace {

struct Batch {
  std::vector<std::uint16_t> query;
  std::vector<std::uint16_t> targets_t;  // target_len x kLcsBatchLanes
  std::size_t target_len = 0;
  std::size_t valid_lanes = kLcsBatchLanes;
  std::vector<std::vector<std::uint16_t>> targets;  // row-major, for the oracle
};

Batch random_batch(std::mt19937_64& rng, std::size_t max_query, std::size_t max_target,
                   std::uint16_t alphabet, std::size_t valid_lanes = kLcsBatchLanes) {
  Batch b;
  b.valid_lanes = valid_lanes;
  b.query.resize(rng() % (max_query + 1));
  for (auto& q : b.query) q = static_cast<std::uint16_t>(rng() % alphabet);
  b.target_len = rng() % (max_target + 1);
  b.targets_t.assign(b.target_len * kLcsBatchLanes, kLcsPadSymbol);
  b.targets.resize(valid_lanes);
  for (std::size_t lane = 0; lane < valid_lanes; ++lane) {
    b.targets[lane].resize(b.target_len);
    for (std::size_t j = 0; j < b.target_len; ++j) {
      const auto sym = static_cast<std::uint16_t>(rng() % alphabet);
      b.targets[lane][j] = sym;
      b.targets_t[j * kLcsBatchLanes + lane] = sym;
    }
  }
  return b;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar batch kernel matches the single-pair implementation") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    const Batch b = random_batch(rng, 12, 20, 6);
    std::uint16_t out[kLcsBatchLanes];
    lcs_batch16_scalar(b.query.data(), b.query.size(), b.targets_t.data(), b.target_len,
                       out);
    for (std::size_t lane = 0; lane < kLcsBatchLanes; ++lane) {
      CHECK(out[lane] == lcs_length(b.query, b.targets[lane]));
    }
  }
}

TEST_CASE("avx2 kernel is bit-equal to the scalar kernel") {
  const LcsBatchFn avx2 = lcs_batch16_avx2();
  if (!avx2) {
    MESSAGE("avx2 unavailable on this build/host; skipping");
    return;
  }
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 300; ++iter) {
    // Duplicates, tiny alphabets, and the full 64-length boundary all matter.
    const std::size_t max_target = iter % 3 == 0 ? kLcsMaxTargetLen : 20;
    const Batch b = random_batch(rng, 24, max_target, iter % 2 ? 4 : 300);
    std::uint16_t scalar_out[kLcsBatchLanes];
    std::uint16_t avx2_out[kLcsBatchLanes];
    lcs_batch16_scalar(b.query.data(), b.query.size(), b.targets_t.data(), b.target_len,
                       scalar_out);
    avx2(b.query.data(), b.query.size(), b.targets_t.data(), b.target_len, avx2_out);
    for (std::size_t lane = 0; lane < kLcsBatchLanes; ++lane) {
      CHECK(scalar_out[lane] == avx2_out[lane]);
    }
  }
}

TEST_CASE("padded lanes never match and valid lanes are unaffected") {
  std::mt19937_64 rng(29);
  const Batch b = random_batch(rng, 10, 10, 5, 3);
  std::uint16_t out[kLcsBatchLanes];
  lcs_batch16(b.query.data(), b.query.size(), b.targets_t.data(), b.target_len, out);
  for (std::size_t lane = 0; lane < b.valid_lanes; ++lane) {
    CHECK(out[lane] == lcs_length(b.query, b.targets[lane]));
  }
}

TEST_CASE("empty query and empty targets") {
  std::vector<std::uint16_t> targets_t(8 * kLcsBatchLanes, 2);
  std::uint16_t out[kLcsBatchLanes];
  lcs_batch16(nullptr, 0, targets_t.data(), 8, out);
  for (auto v : out) CHECK(v == 0);

  const std::uint16_t query[3] = {1, 2, 3};
  lcs_batch16(query, 3, targets_t.data(), 0, out);
  for (auto v : out) CHECK(v == 0);
}

TEST_CASE("dispatch levels can be forced and reset") {
  const SimdLevel detected = active_simd_level();

  CHECK(set_simd_level(SimdLevel::scalar));
  CHECK(active_simd_level() == SimdLevel::scalar);

  const bool avx2_ok = set_simd_level(SimdLevel::avx2);
  CHECK(avx2_ok == (lcs_batch16_avx2() != nullptr));
  if (avx2_ok) CHECK(active_simd_level() == SimdLevel::avx2);

  reset_simd_level();
  CHECK(active_simd_level() == detected);
  CHECK(std::string(simd_level_name(detected)).size() > 0);
}

TEST_CASE("dispatched result is level-independent") {
  std::mt19937_64 rng(31);
  const Batch b = random_batch(rng, 16, 16, 8);
  std::uint16_t by_level[2][kLcsBatchLanes];
  int levels = 0;
  for (SimdLevel level : {SimdLevel::scalar, SimdLevel::avx2}) {
    if (!set_simd_level(level)) continue;
    lcs_batch16(b.query.data(), b.query.size(), b.targets_t.data(), b.target_len,
                by_level[levels++]);
  }
  reset_simd_level();
  for (int l = 1; l < levels; ++l) {
    for (std::size_t lane = 0; lane < kLcsBatchLanes; ++lane) {
      CHECK(by_level[0][lane] == by_level[l][lane]);
    }
  }
}

}  // TEST_SUITE
