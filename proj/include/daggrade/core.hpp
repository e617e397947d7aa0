#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "daggrade/base.hpp"
#include "daggrade/digraph.hpp"
#include "daggrade/editdist.hpp"

namespace daggrade {

using BlockId = std::string;

struct BlockSpec {
  BlockId id;
  std::optional<std::string> text;  // display metadata, ignored by all algorithms

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

// Raw, unvalidated problem as authored or loaded from a file: the block set,
// the subset that forms the dependency DAG, and the DAG's edges. Blocks
// outside solution_nodes are distractors.
struct ProblemDescription {
  std::vector<BlockSpec> blocks;
  std::vector<BlockId> solution_nodes;
  std::vector<std::pair<BlockId, BlockId>> edges;

  friend bool operator==(const ProblemDescription&, const ProblemDescription&) = default;
};

// Exact percentage in [0, 100]; no rounding happens in the library. The CLI
// and report writers render one decimal place, round half up.
class Percent {
public:
  Percent() = default;
  Percent(std::int64_t num, std::int64_t den);

  // 100 * max(0, solution_len - d_star) / solution_len. Pre: solution_len >= 1.
  static Percent score(std::size_t d_star, std::size_t solution_len);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // One decimal place, round half up: "33.3", "100.0".
  std::string fixed1() const;

  friend bool operator==(const Percent&, const Percent&) = default;

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Percent score(std::size_t d_star, std::size_t solution_len) {
  return Percent::score(d_star, solution_len);
}

// A validated problem. Blocks carry dense indices in byte-wise id order; the
// dependency graph and its transitive closure live over solution-local ids
// (also in id order) and are computed once here, then shared read-only by all
// grading calls.
class Problem {
public:
  std::size_t block_count() const { return ids_.size(); }
  std::size_t solution_size() const { return solution_blocks_.size(); }
  std::size_t distractor_count() const { return block_count() - solution_size(); }

  std::span<const BlockId> block_ids() const { return ids_; }
  const BlockId& id_of(BlockIndex b) const { return ids_[b]; }
  const std::optional<std::string>& text_of(BlockIndex b) const { return texts_[b]; }
  std::optional<BlockIndex> find_block(std::string_view id) const;

  bool is_solution_node(BlockIndex b) const { return local_of_[b] != kInvalidBlock; }
  bool is_distractor(BlockIndex b) const { return !is_solution_node(b); }

  // Solution nodes as block indices, ascending.
  std::span<const BlockIndex> solution_blocks() const { return solution_blocks_; }

  // Dependency DAG over solution-local ids 0..solution_size()-1.
  const Digraph& dependency_graph() const { return dependency_; }
  const Reachability& reachability() const { return reach_; }

  BlockIndex solution_local_of(BlockIndex block) const { return local_of_[block]; }
  BlockIndex block_of_solution_local(BlockIndex local) const {
    return solution_blocks_[local];
  }

  // ExistsPath over blocks; reflexively true for solution nodes, always false
  // when either side is a distractor (distractors are not graph nodes).
  bool exists_path(BlockIndex u, BlockIndex v) const {
    const BlockIndex lu = local_of_[u];
    const BlockIndex lv = local_of_[v];
    if (lu == kInvalidBlock || lv == kInvalidBlock) return false;
    return reach_.reachable(lu, lv);
  }

  // The description this problem validates back to (blocks sorted by id).
  ProblemDescription description() const;

private:
  friend Problem validate_problem(const ProblemDescription&);

  std::vector<BlockId> ids_;                     // sorted
  std::vector<std::optional<std::string>> texts_;
  std::unordered_map<std::string, BlockIndex> index_of_;
  std::vector<BlockIndex> local_of_;             // block -> solution-local or invalid
  std::vector<BlockIndex> solution_blocks_;      // local -> block
  Digraph dependency_;
  Reachability reach_;
};

// A submission is an ordered sequence of distinct blocks of one problem.
struct Submission {
  std::vector<BlockIndex> sequence;

  std::size_t size() const { return sequence.size(); }
};

// Enforces the problem invariants. Throws DuplicateBlockId,
// SolutionNodeNotABlock, EdgeEndpointNotInSolutionNodes, CycleDetected (the
// message names one offending cycle), InvalidBlockId, NoSolutionNodes.
Problem validate_problem(const ProblemDescription& desc);

// Enforces distinctness and membership. Throws DuplicateBlockInSubmission,
// UnknownBlockId.
Submission validate_submission(const Problem& p, std::span<const BlockId> sequence);

struct GradeReport {
  std::size_t d_star = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  Percent score_percent;
  std::optional<EditScript> edit_script;
};

}  // namespace daggrade
