#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "daggrade/core.hpp"
#include "daggrade/digraph.hpp"
#include "daggrade/editdist.hpp"

namespace daggrade {

inline constexpr std::uint64_t kDefaultOrderingCap = 1'000'000;

// Subset search on the problematic graph is exponential in its node count;
// abort instead of grinding on pathological submissions. Observed sizes on
// real submissions are single digits.
inline constexpr std::size_t kMaxProblematicNodes = 25;

// Graph over the submission blocks that occur in some inverted required pair:
// edge (u, v) means u must precede v in any solution but appears after it in
// the submission. Distractors never appear (they have no paths). Empty
// whenever the submission (minus distractors) fits some solution order.
struct ProblematicGraph {
  Digraph graph;                   // over local ids 0..blocks.size()-1
  std::vector<BlockIndex> blocks;  // local -> problem block index, ascending

  std::size_t node_count() const { return blocks.size(); }
  bool empty() const { return blocks.empty(); }
};

// Pre: s validated against p.
ProblematicGraph build_problematic_graph(const Submission& s, const Problem& p);

// Reference grader: folds the edit distance over every topological ordering
// of the dependency graph. Exact but factorial in the worst case; propagates
// CapExceeded when the enumeration passes cap. Produces no edit script.
GradeReport grade_baseline(const Submission& s, const Problem& p,
                           std::uint64_t cap = kDefaultOrderingCap);

// Vertex-cover grader: deletions = distractors in s + |MVC(problematic)|,
// insertions = |V| - (|s| - deletions). Always attaches a canonical edit
// script of exactly d_star ops whose application yields a topological
// ordering. Throws SubmissionTooTangled past kMaxProblematicNodes.
GradeReport grade_mvc(const Submission& s, const Problem& p);

struct MvcGradeResult {
  GradeReport report;
  ProblematicGraph problematic;
  std::vector<BlockIndex> cover;  // problem block indices, ascending
};

// grade_mvc plus the intermediates, for diagnostics and benchmarking.
MvcGradeResult grade_mvc_detailed(const Submission& s, const Problem& p);

// The constructive half of the vertex-cover grader: delete cover_blocks and
// all distractors in s, then insert the missing blocks following the
// smallest-id-first topological ordering of the dependency graph constrained
// to keep the retained subsequence in order. Pre: cover_blocks covers the
// problematic graph of s (NotACover otherwise).
EditScript construct_edit_script(const Submission& s, const Problem& p,
                                 std::span<const BlockIndex> cover_blocks);

// Smallest index whose block is a distractor or has a direct dependency not
// satisfied by the preceding blocks; nullopt if every line is supported.
std::optional<std::size_t> first_unsupported_line(const Submission& s, const Problem& p);

}  // namespace daggrade
