#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "daggrade/base.hpp"

namespace daggrade {

// The only two edit operations. There is deliberately no substitution or
// transposition anywhere in this codebase.
struct EditOp {
  enum class Kind : std::uint8_t { Delete, Insert };

  Kind kind;
  BlockIndex block;
  // Index into the sequence at the moment the op applies. For Insert, the
  // block occupies this index after insertion; for Delete, this index is
  // removed (the block field is informational for deletes).
  std::uint32_t position;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct EditScript {
  std::vector<EditOp> ops;

  std::size_t size() const { return ops.size(); }
  bool empty() const { return ops.empty(); }

  // Canonical form: deletes first at strictly descending positions, then
  // inserts at strictly ascending positions (positions expressed against the
  // post-deletion sequence state).
  bool canonical() const;

  friend bool operator==(const EditScript&, const EditScript&) = default;
};

// Longest common subsequence length via the quadratic dynamic program.
std::size_t lcs_length(std::span<const BlockIndex> a, std::span<const BlockIndex> b);

// Insert/delete edit distance: |a| + |b| - 2 * lcs_length(a, b).
std::size_t edit_distance(std::span<const BlockIndex> a, std::span<const BlockIndex> b);

// Applies ops in order. Throws OutOfBounds if a position is invalid at
// application time, DuplicateBlockIntroduced if an insert would repeat a
// block already present.
std::vector<BlockIndex> apply_edit_script(std::span<const BlockIndex> s,
                                          const EditScript& script);

}  // namespace daggrade
